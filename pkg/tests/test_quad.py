import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cubicount.quad import (
    Mu3Char,
    QuadIdeal,
    conductor_of_char,
    elements_of_norm,
    extend_ideal,
    factored_char,
    fundamental_part,
    fundamental_unit,
    ideal_form_coefficients,
    ideal_from_generators,
    ideals_of_norm,
    is_cube_class,
    is_fundamental,
    is_invertible,
    is_principal,
    kronecker,
    make_ideal,
    mu3_characters,
    order,
    order_change_map,
    pic_3_torsion,
    picard_group,
    unit_cube_classes,
    unit_ideal,
)

discs = st.integers(min_value=-120, max_value=120).filter(lambda D: D != 0 and D % 4 in (0, 1))


def test_order_examples():
    o = order(-3)
    assert o.r == 1 and o.xi_norm == 1  # xi^2 = xi - 1, Eisenstein integers
    o1 = order(1)
    assert o1.r == 1 and o1.xi_norm == 0  # xi^2 = xi: idempotent, Z x Z
    o5 = order(5)
    assert o5.norm((0, 1)) == -1  # golden ratio generator


def test_order_rejects_bad_disc():
    with pytest.raises(ValueError):
        order(2)
    with pytest.raises(ValueError):
        order(0)


def test_fundamental_part_examples():
    assert fundamental_part(-12) == (-3, 2)
    assert fundamental_part(9) == (1, 3)
    assert fundamental_part(-23) == (-23, 1)
    assert fundamental_part(100) == (1, 10)
    assert fundamental_part(32) == (8, 2)
    assert fundamental_part(48) == (12, 2)


def test_is_fundamental():
    for D in (1, 5, -3, -4, 8, -8, 12, -23, 13):
        assert is_fundamental(D), D
    for D in (9, 25, -12, 16, 32, 45, -27):
        assert not is_fundamental(D), D


def test_kronecker_symbol():
    assert kronecker(-23, 5) == -1
    assert kronecker(-23, 2) == 1
    assert kronecker(-23, 23) == 0
    assert kronecker(5, 5) == 0
    assert kronecker(8, 7) == 1
    # multiplicativity spot checks
    for a in range(-20, 20):
        for n in (3, 5, 7, 15):
            assert kronecker(a, n) == kronecker(a % (4 * n) + 4 * n, n)


# ---------------------------------------------------------------------------
# ideals


def test_ideals_of_norm_unit():
    assert ideals_of_norm(-23, 1) == [unit_ideal(-23)]


def test_ideals_of_norm_examples():
    # 2 splits in disc -23 (it is 1 mod 8)
    assert len(ideals_of_norm(-23, 2, invertible_only=True)) == 2
    # no invertible ideals of norm p in O_{D1 p^2}
    assert ideals_of_norm(-23 * 4, 2, invertible_only=True) == []
    assert ideals_of_norm(-4 * 9, 3, invertible_only=True) == []


def test_ideal_normal_form_roundtrip():
    I = make_ideal(-23, 2, 2, 0)
    assert QuadIdeal.parse(str(I)) == I


def test_invertibility_matches_form_gcd():
    rng = random.Random(1)
    checked = 0
    while checked < 300:
        D = rng.choice([-3, -4, -23, -48, 5, 40, 9, 36, -75, 148])
        n = rng.randint(1, 30)
        for I in ideals_of_norm(D, n):
            t, s, r = ideal_form_coefficients(I)
            from math import gcd

            assert is_invertible(I) == (gcd(gcd(t, s), r) == 1), I
            checked += 1


def test_norm_multiplicative_for_invertible():
    rng = random.Random(2)
    checked = 0
    while checked < 150:
        D = rng.choice([-3, -23, -40, 5, 13, 9, -4, 60])
        n1, n2 = rng.randint(1, 12), rng.randint(1, 12)
        Is = ideals_of_norm(D, n1, invertible_only=True)
        Js = ideals_of_norm(D, n2, invertible_only=True)
        if not Is or not Js:
            continue
        I, J = rng.choice(Is), rng.choice(Js)
        assert I.mul(J).norm == I.norm * J.norm
        checked += 1


def test_containment_lemma():
    # an O_D ideal contained in O_{D g^2} lies in g * O_D
    for D in (-3, -4, 5, -7, 8, 1):
        for g in (2, 3):
            Dg = D * g * g
            og = order(Dg)
            for n in range(1, 13):
                for I in ideals_of_norm(D, n):
                    gens = I.generators()
                    # interpret in O_{Dg}: is I (as a set) inside O_{Dg}?
                    # element x + y xi_D = x + y(r_D + sqrt D)/2; xi_{Dg}
                    # has sqrt-coefficient g/2, so containment means every
                    # y is divisible by g and parities match
                    inside = all(_in_suborder(D, Dg, v) for v in gens)
                    if inside:
                        for x, y in gens:
                            assert x % g == 0 and y % g == 0


def _in_suborder(D, Dg, v):
    # v = x + y*xi_D in O_Dg = Z + Z*xi_Dg?
    x, y = v
    rD, rDg = D % 2, Dg % 2
    g = int(round((Dg // D) ** 0.5))
    # x + y(rD + sqrt D)/2 = (x + y rD/2 - t rDg/2) + t (rDg + g sqrt D)/2
    # with t = y/g
    if y % g:
        return False
    t = y // g
    return (2 * x + y * rD - t * rDg) % 2 == 0


def test_ideal_from_generators_matches_products():
    I = make_ideal(-23, 1, 2, 0)
    J = make_ideal(-23, 1, 2, 1)
    P = I.mul(J)
    assert P.norm == 4
    # I and J are the two primes over 2; their product is (2)
    assert P == make_ideal(-23, 2, 1, 0)


# ---------------------------------------------------------------------------
# units


def test_fundamental_units():
    assert fundamental_unit(5) == (0, 1)  # the golden ratio generator
    assert fundamental_unit(8) == (1, 1)  # 1 + sqrt 2
    assert fundamental_unit(20) == (2, 1)  # 2 + sqrt 5
    assert fundamental_unit(13) == (1, 1)  # (3 + sqrt 13)/2
    assert fundamental_unit(61) == (17, 5)  # (39 + 5 sqrt 61)/2


def test_fundamental_unit_is_a_unit():
    for D in (5, 8, 12, 13, 17, 20, 21, 24, 28, 40, 44, 45, 61, 76, 124, 229):
        o = order(D)
        eps = fundamental_unit(D)
        assert o.norm(eps) in (1, -1), (D, eps)


def test_fundamental_unit_power_relation():
    # unit of the suborder is the least power of the maximal-order unit
    for D0, f in ((5, 2), (5, 3), (8, 2), (13, 3)):
        D = D0 * f * f
        o0 = order(D0)
        eps0 = fundamental_unit(D0)
        eps = fundamental_unit(D)
        # compute successive powers of eps0 until inside Z + f O_{D0}
        x, y = 1, 0
        k = 0
        while True:
            x, y = o0.mul((x, y), eps0)
            k += 1
            if y % f == 0:
                break
            assert k < 100
        # compare real-embedding values via coordinates in O_{D0}
        ex, ey = eps
        # eps as element of O_{D0}: x' + y'*xi_{D0} with y' = f * ey ... both
        # represent the same number iff coordinates match after rescaling
        rD, rDf = D0 % 2, D % 2
        assert ey * f == y and 2 * ex + ey * rDf == 2 * x + y * rD


def test_fundamental_unit_rejects_bad_input():
    with pytest.raises(ValueError):
        fundamental_unit(-3)
    with pytest.raises(ValueError):
        fundamental_unit(9)


def test_unit_cube_classes():
    assert unit_cube_classes(-3) == 3
    assert unit_cube_classes(5) == 3
    assert unit_cube_classes(-4) == 1
    assert unit_cube_classes(9) == 1
    assert unit_cube_classes(-12) == 1


# ---------------------------------------------------------------------------
# principality


def test_is_principal_unit_ideal():
    flag, wit = is_principal(unit_ideal(-23))
    assert flag and wit in ((1, 0), (-1, 0))


def test_norm2_ideal_in_minus23_not_principal():
    I = ideals_of_norm(-23, 2, invertible_only=True)[0]
    flag, _ = is_principal(I)
    assert not flag


def test_i_ibar_principal():
    rng = random.Random(3)
    checked = 0
    while checked < 60:
        D = rng.choice([-23, -31, 5, 40, 9, -4, 229])
        n = rng.randint(1, 10)
        ideals = ideals_of_norm(D, n, invertible_only=True)
        if not ideals:
            continue
        I = rng.choice(ideals)
        flag, wit = is_principal(I.mul(I.conj()))
        assert flag
        o = order(D)
        assert abs(o.norm(wit)) == I.norm ** 2
        checked += 1


def test_principal_in_real_order():
    # (sqrt 2) has norm -2 in disc 8
    ideals = ideals_of_norm(8, 2, invertible_only=True)
    assert len(ideals) == 1
    flag, wit = is_principal(ideals[0])
    assert flag


# ---------------------------------------------------------------------------
# Picard groups


def test_picard_examples():
    assert len(picard_group(-3)) == 1
    assert len(picard_group(1)) == 1
    assert len(picard_group(-23)) == 3
    assert len(picard_group(-4)) == 1
    assert len(picard_group(-47)) == 5
    assert len(picard_group(-108)) == 3  # Z[3 omega]


def test_picard_split_orders():
    # Pic(Z + p(Z x Z)) is cyclic of order (p-1)/gcd(...): (Z/p)^x / {+-1}
    assert len(picard_group(49)) == 3  # (Z/7)^x/{+-1}
    assert len(picard_group(25)) == 2
    assert len(picard_group(121)) == 5


def test_picard_group_axioms():
    for D in (-23, -47, 40, 49, -108, 229):
        G = picard_group(D)
        n = len(G)
        for i in range(n):
            assert G.mul(0, i) == i
            assert G.mul(G.inverse(i), i) == 0
            for j in range(n):
                assert G.mul(i, j) == G.mul(j, i)
                for k in range(n):
                    assert G.mul(G.mul(i, j), k) == G.mul(i, G.mul(j, k))


def test_picard_conjugate_is_inverse():
    for D in (-23, -47, -31):
        G = picard_group(D)
        for i, R in enumerate(G.reps):
            assert G.class_of(R.conj()) == G.inverse(i)


def test_picard_stable_under_bound_doubling():
    for D in (-23, -47, 40, 229, -84):
        G1 = picard_group(D)
        G2 = picard_group(D, 2 * max(6, 2 * (int(abs(D) ** 0.5) + 1)))
        assert len(G1) == len(G2)


def test_pic_3_torsion_examples():
    assert pic_3_torsion(-23) == 3
    assert pic_3_torsion(-4) == 1
    assert pic_3_torsion(1) == 1
    assert pic_3_torsion(-108) == 3


def test_cube_class():
    G = picard_group(-23)
    I = ideals_of_norm(-23, 2, invertible_only=True)[0]
    assert not is_cube_class(I)
    assert is_cube_class(unit_ideal(-23))
    # group of order 5: everything is a cube
    for I in ideals_of_norm(-47, 2, invertible_only=True):
        assert is_cube_class(I)


# ---------------------------------------------------------------------------
# characters


def test_character_counts():
    assert len(mu3_characters(-23)) == 3
    assert len(mu3_characters(-4)) == 1
    nontrivial = [c for c in mu3_characters(-23) if not c.is_trivial]
    assert len(nontrivial) == 2
    # the two nontrivial ones are inverses of each other
    a, b = nontrivial
    assert all((x + y) % 3 == 0 for x, y in zip(a.values, b.values))


def test_character_count_matches_three_torsion():
    for D in range(-200, 201):
        if D == 0 or D % 4 not in (0, 1):
            continue
        assert len(mu3_characters(D)) == pic_3_torsion(D)


def test_characters_are_homomorphisms():
    for D in (-23, -31, -108, 49, 229):
        G = picard_group(D)
        for chi in mu3_characters(D):
            for i in range(len(G)):
                for j in range(len(G)):
                    assert (chi.values[i] + chi.values[j]) % 3 == chi.values[G.mul(i, j)]


def test_characters_vanish_on_integer_classes():
    # ideals generated by rational integers land in the identity class,
    # where every character vanishes
    for D in (-23, -108, 40):
        G = picard_group(D)
        for n in (2, 3, 5, 7):
            I = QuadIdeal(D, n, 1, 0)  # the ideal (n)
            assert is_principal(I)[0]
            cls = G.class_of(I)
            assert cls == 0
            for chi in mu3_characters(D):
                assert chi(I) == 0


# ---------------------------------------------------------------------------
# order changes and conductors


def test_order_change_identity():
    m = order_change_map(-3, 3, 3)
    assert m == list(range(len(picard_group(-27))))


def test_order_change_to_trivial_group():
    m = order_change_map(-3, 3, 1)
    assert all(x == 0 for x in m)


def test_order_change_surjective():
    for D0, ff, tf in ((-23, 2, 1), (-4, 3, 1), (5, 6, 2), (-3, 6, 3)):
        m = order_change_map(D0, ff, tf)
        target = picard_group(D0 * tf * tf)
        assert set(m) == set(range(len(target)))


def test_conductor_of_char_trivial():
    for chi in mu3_characters(-23):
        assert conductor_of_char(chi) == 1  # m = 1 here
    trivial = mu3_characters(-4 * 49)[0]
    assert trivial.is_trivial and conductor_of_char(trivial) == 1


def test_conductor_nontrivial_on_kernel():
    # disc -4 * 7^2: Pic has order 3 (class number of Z[7i] is 3 ... the
    # three-torsion characters all have conductor 7)
    D = -4 * 49
    chars = mu3_characters(D)
    for chi in chars:
        if not chi.is_trivial:
            assert conductor_of_char(chi) == 7
            chi7 = factored_char(chi, 7)
            assert chi7.values == chi.values or set(chi7.values) == set(chi.values)


def test_extend_ideal_norm_preserved_when_coprime():
    G = picard_group(-108)  # conductor 6 over -3
    for I in ideals_of_norm(-108, 5, invertible_only=True):
        J = extend_ideal(I, -27)
        assert J.norm == 5
        J0 = extend_ideal(I, -3)
        assert J0.norm == 5
