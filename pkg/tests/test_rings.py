import random

import pytest

from cubicount.forms import act, disc, is_zmat, random_unimodular
from cubicount.rings import (
    is_maximal,
    is_maximal_at_p,
    is_zmat_ring,
    max_zmat_subring,
    ring_from_form,
    roots_in_p1,
    splitting_type,
    subrings_of_index,
    superrings_of_index_p,
)

Z3 = (0, 1, 1, 0)
T3M1 = (1, 0, 0, -1)  # Z[t]/(t^3 - 1)


def test_z3_form_gives_ring_with_eight_idempotents():
    # the discriminant-1 form corresponds to Z x Z x Z: count idempotents
    C = ring_from_form(Z3)
    idem = 0
    for x0 in range(-2, 3):
        for x1 in range(-2, 3):
            for x2 in range(-2, 3):
                if C.mul((x0, x1, x2), (x0, x1, x2)) == (x0, x1, x2):
                    idem += 1
    assert idem == 8


def test_table_for_t3_minus_1():
    # with alpha = t, beta = t^2: alpha^2 = beta, alpha*beta = 1, beta^2 = alpha
    C = ring_from_form(T3M1)
    assert C.mul((0, 1, 0), (0, 1, 0)) == (0, 0, 1)
    assert C.mul((0, 1, 0), (0, 0, 1)) == (1, 0, 0)
    assert C.mul((0, 0, 1), (0, 0, 1)) == (0, 1, 0)


def test_alpha_beta_product_is_constant():
    rng = random.Random(3)
    for _ in range(200):
        f = tuple(rng.randint(-9, 9) for _ in range(4))
        C = ring_from_form(f)
        assert C.mul((0, 1, 0), (0, 0, 1)) == (-f[0] * f[3], 0, 0)


def test_associativity_random_forms():
    rng = random.Random(4)
    for _ in range(200):
        f = tuple(rng.randint(-9, 9) for _ in range(4))
        assert ring_from_form(f).is_associative()


def test_traces():
    rng = random.Random(5)
    for _ in range(100):
        f = tuple(rng.randint(-9, 9) for _ in range(4))
        C = ring_from_form(f)
        assert C.trace((1, 0, 0)) == 3
        assert C.trace((0, 1, 0)) == -f[1]
        assert C.trace((0, 0, 1)) == f[2]


def test_disc_equals_trace_pairing():
    rng = random.Random(6)
    for _ in range(200):
        f = tuple(rng.randint(-7, 7) for _ in range(4))
        assert ring_from_form(f).trace_pairing_disc() == disc(f)


def test_zmat_ring_examples_and_agreement():
    assert is_zmat_ring(ring_from_form(T3M1))
    assert not is_zmat_ring(ring_from_form((1, 1, 0, 0)))
    rng = random.Random(7)
    for _ in range(300):
        f = tuple(rng.randint(-9, 9) for _ in range(4))
        assert is_zmat_ring(ring_from_form(f)) == is_zmat(f)


# ---------------------------------------------------------------------------
# maximal subring with traces in 3Z


def test_max_zmat_subring_of_z3():
    C = ring_from_form(Z3)
    sub, idx, basis = max_zmat_subring(C)
    assert idx == 9
    assert sub.discriminant == 81
    assert is_zmat_ring(sub)


def test_max_zmat_subring_fixes_zmat_rings():
    for f in [T3M1, (1, 3, -3, 2), (2, 3, 3, 1)]:
        C = ring_from_form(f)
        sub, idx, _ = max_zmat_subring(C)
        assert idx == 1
        assert sub.form == C.form


def test_max_zmat_contains_z_plus_3c_and_all_zmat_subrings():
    rng = random.Random(8)
    checked = 0
    while checked < 25:
        f = tuple(rng.randint(-4, 4) for _ in range(4))
        if disc(f) == 0:
            continue
        C = ring_from_form(f)
        sub, idx, basis = max_zmat_subring(C)
        from cubicount.rings import sublattice_members

        tri = [list(b) for b in basis]
        # contains Z + 3C
        for v in [(1, 0, 0), (0, 3, 0), (0, 0, 3)]:
            assert sublattice_members(tri, v)
        # every index-3 or index-9 subring that is zmat sits inside
        for n in (3, 9):
            for sb in subrings_of_index(C, n):
                from cubicount.rings import lattice_ring

                S = lattice_ring(C, sb)
                if is_zmat_ring(S):
                    for v in sb:
                        assert sublattice_members(tri, v)
        checked += 1


def test_max_zmat_index3_iff_split_type_121_at_3():
    # sampled maximal rings: index 3 exactly for splitting type 1^2 1 at 3
    rng = random.Random(9)
    seen = set()
    checked = 0
    while checked < 40:
        f = tuple(rng.randint(-5, 5) for _ in range(4))
        if disc(f) == 0 or f in seen:
            continue
        seen.add(f)
        if not is_maximal_at_p(f, 3):
            continue
        C = ring_from_form(f)
        _, idx, _ = max_zmat_subring(C)
        st = splitting_type(f, 3)
        if is_zmat(f):
            assert idx == 1
        else:
            assert idx == 3 if st == "1^2 1" else idx in (3, 9)
            if st == "1^2 1":
                assert idx == 3
            else:
                assert idx == 9
        checked += 1


# ---------------------------------------------------------------------------
# local maximality


def test_maximality_examples():
    assert is_maximal_at_p(T3M1, 2)
    assert not is_maximal_at_p(T3M1, 3)  # disc -27, field disc -3
    assert not is_maximal_at_p((0, 3, 3, 0), 3)
    assert is_maximal((1, 0, -1, 1))  # x^3 - x + 1, disc -23


def test_maximality_agrees_with_superring_oracle():
    rng = random.Random(10)
    checked = 0
    while checked < 200:
        f = tuple(rng.randint(-5, 5) for _ in range(4))
        if disc(f) == 0:
            continue
        p = rng.choice([2, 3, 5])
        C = ring_from_form(f)
        has_super = bool(superrings_of_index_p(C, p))
        assert is_maximal_at_p(f, p) == (not has_super), (f, p)
        checked += 1


def test_maximality_invariant_under_action():
    rng = random.Random(11)
    for _ in range(100):
        f = tuple(rng.randint(-4, 4) for _ in range(4))
        if disc(f) == 0:
            continue
        g = random_unimodular(rng)
        for p in (2, 3):
            assert is_maximal_at_p(f, p) == is_maximal_at_p(act(g, f), p)


# ---------------------------------------------------------------------------
# splitting types


def test_splitting_type_examples():
    assert splitting_type(Z3, 2) == "111"
    assert splitting_type(T3M1, 5) == "12"
    assert splitting_type(T3M1, 7) == "111"


def test_splitting_type_rejects_non_maximal():
    with pytest.raises(ValueError):
        splitting_type(T3M1, 3)


def test_splitting_root_count_matches_s1():
    from cubicount.counting import _S1

    rng = random.Random(12)
    checked = 0
    while checked < 60:
        f = tuple(rng.randint(-6, 6) for _ in range(4))
        if disc(f) == 0:
            continue
        p = rng.choice([2, 3, 5])
        if not is_maximal_at_p(f, p):
            continue
        st = splitting_type(f, p)
        assert len(roots_in_p1(f, p)) == _S1[st]
        checked += 1


# ---------------------------------------------------------------------------
# subring enumeration


def test_subrings_trivial_index():
    C = ring_from_form(Z3)
    assert len(subrings_of_index(C, 1)) == 1


def test_subring_counts_of_z3():
    C = ring_from_form(Z3)
    assert len(subrings_of_index(C, 2)) == 3
    assert len(subrings_of_index(C, 4)) == 4
    assert len(subrings_of_index(C, 6)) == 9


def test_subring_counts_multiplicative():
    rng = random.Random(13)
    checked = 0
    while checked < 15:
        f = tuple(rng.randint(-4, 4) for _ in range(4))
        if disc(f) == 0:
            continue
        C = ring_from_form(f)
        n6 = len(subrings_of_index(C, 6))
        n2 = len(subrings_of_index(C, 2))
        n3 = len(subrings_of_index(C, 3))
        assert n6 == n2 * n3
        checked += 1


def test_subrings_are_rings_with_scaled_disc():
    from cubicount.rings import lattice_ring

    C = ring_from_form((1, 0, -1, 1))
    for n in (2, 3, 4):
        for basis in subrings_of_index(C, n):
            S = lattice_ring(C, basis)
            assert S.is_associative()
            assert S.discriminant == n * n * C.discriminant
