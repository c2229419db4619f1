"""Integral binary cubic forms and the twisted GL2(Z) action.

A form (a, b, c, d) stands for a*x^3 + b*x^2*y + c*x*y^2 + d*y^3.  The
group element g = [[p, q], [r, s]] with det g = ps - qr = +-1 acts by

    (g . f)(x, y) = f(p*x + r*y, q*x + s*y) / det g,

which preserves the discriminant and makes f and -f equivalent.  Orbits
of nondegenerate forms correspond to isomorphism classes of cubic rings;
the ring structure itself lives in `rings`.

Reduction theory: every orbit meets a finite, explicitly testable set of
"reduced" forms.  For disc > 0 the Hessian is positive definite and we use
its Gauss-reduced domain |Q| <= P <= R.  For disc < 0 the form has one real
root and a conjugate pair w, wbar; we call the form reduced when w lies in
the classical fundamental domain |Re w| <= 1/2, |w| >= 1.  Both conditions
are decided in exact integer arithmetic (the position of the real root
against a rational is the sign of a single form evaluation).  The set of
reduced forms in one orbit is closed under matrices with entries in
{-1, 0, 1}, so a breadth-first closure yields canonical representatives
and stabilizers with no floating point anywhere.
"""

from __future__ import annotations

import itertools
from math import gcd
from typing import NamedTuple


class BinaryCubicForm(NamedTuple):
    a: int
    b: int
    c: int
    d: int

    def __str__(self) -> str:
        return "%d,%d,%d,%d" % self

    @classmethod
    def parse(cls, text: str) -> "BinaryCubicForm":
        parts = [int(t.strip()) for t in text.split(",")]
        if len(parts) != 4:
            raise ValueError("expected 'a,b,c,d', got %r" % text)
        return cls(*parts)


class UnimodularMatrix(NamedTuple):
    p: int
    q: int
    r: int
    s: int

    @property
    def det(self) -> int:
        return self.p * self.s - self.q * self.r


class Hessian(NamedTuple):
    t: int
    s: int
    r: int
    content: int


MAT_ID = UnimodularMatrix(1, 0, 0, 1)
MAT_NEG = UnimodularMatrix(-1, 0, 0, -1)
MAT_SWAP = UnimodularMatrix(0, 1, 1, 0)

# All unimodular matrices with entries in {-1, 0, 1}.  They include every
# boundary identification of the fundamental domain, so the reduced forms
# of one orbit are connected under these moves.
SMALL_MATRICES = tuple(
    UnimodularMatrix(*m)
    for m in itertools.product((-1, 0, 1), repeat=4)
    if abs(m[0] * m[3] - m[1] * m[2]) == 1
)


def evaluate(form, x: int, y: int) -> int:
    a, b, c, d = form
    return a * x ** 3 + b * x * x * y + c * x * y * y + d * y ** 3


def disc(form) -> int:
    """b^2 c^2 - 4 a c^3 - 4 b^3 d - 27 a^2 d^2 + 18 a b c d."""
    a, b, c, d = form
    return (
        b * b * c * c
        - 4 * a * c ** 3
        - 4 * b ** 3 * d
        - 27 * a * a * d * d
        + 18 * a * b * c * d
    )


def mat_mul(g2, g1) -> UnimodularMatrix:
    p2, q2, r2, s2 = g2
    p1, q1, r1, s1 = g1
    return UnimodularMatrix(
        p2 * p1 + q2 * r1, p2 * q1 + q2 * s1, r2 * p1 + s2 * r1, r2 * q1 + s2 * s1
    )


def act(g, form) -> BinaryCubicForm:
    """Apply the twisted action; rejects non-unimodular matrices."""
    p, q, r, s = g
    det = p * s - q * r
    if det not in (1, -1):
        raise ValueError("matrix %r is not unimodular" % (tuple(g),))
    a, b, c, d = form
    a2 = evaluate(form, p, q)
    b2 = 3 * a * p * p * r + b * (p * p * s + 2 * p * q * r) + c * (2 * p * q * s + q * q * r) + 3 * d * q * q * s
    c2 = 3 * a * p * r * r + b * (2 * p * r * s + q * r * r) + c * (p * s * s + 2 * q * r * s) + 3 * d * q * s * s
    d2 = evaluate(form, r, s)
    return BinaryCubicForm(a2 // det, b2 // det, c2 // det, d2 // det)


def neg(form) -> BinaryCubicForm:
    a, b, c, d = form
    return BinaryCubicForm(-a, -b, -c, -d)


def is_zmat(form) -> bool:
    """True iff 3 | b and 3 | c (the triply symmetric cube has integer entries)."""
    return form[1] % 3 == 0 and form[2] % 3 == 0


def hessian(form) -> Hessian:
    """Quadratic covariant (b^2-3ac, bc-9ad, c^2-3bd) with its content."""
    a, b, c, d = form
    t = b * b - 3 * a * c
    s = b * c - 9 * a * d
    r = c * c - 3 * b * d
    return Hessian(t, s, r, gcd(gcd(t, s), r))


def content(form) -> int:
    a, b, c, d = form
    return gcd(gcd(a, b), gcd(c, d))


# ---------------------------------------------------------------------------
# Reduction

def _norm_sign(form):
    """Replace f by -f so that a > 0, or a = 0 and b > 0 (same orbit)."""
    a, b, c, d = form
    if a < 0 or (a == 0 and b < 0):
        return -a, -b, -c, -d
    return a, b, c, d


def is_reduced_pos(form) -> bool:
    a, b, c, d = form
    t = b * b - 3 * a * c
    if t < 1:
        return False
    s = b * c - 9 * a * d
    r = c * c - 3 * b * d
    return abs(s) <= t <= r


def is_reduced_neg(form) -> bool:
    a, b, c, d = _norm_sign(form)
    f = (a, b, c, d)
    if a == 0:
        if b == 0:
            return False
        return abs(c) <= b and d >= b
    # |Re w| <= 1/2: the real root lies in [-1 - b/a, 1 - b/a]
    if evaluate(f, a - b, a) < 0:
        return False
    if evaluate(f, -a - b, a) > 0:
        return False
    # |w| >= 1, via sign of (a t^2 + b t + c - a) at the real root
    if d == 0:
        return c >= a
    val = evaluate(f, -d, a)
    return (val >= 0) if d < 0 else (val <= 0)


def is_reduced(form) -> bool:
    D = disc(form)
    if D == 0:
        raise ValueError("degenerate form")
    return is_reduced_pos(form) if D > 0 else is_reduced_neg(form)


def _is_boundary_pos(form) -> bool:
    t, s, r, _ = hessian(form)
    return s == 0 or abs(s) == t or t == r


def _is_boundary_neg(form) -> bool:
    a, b, c, d = _norm_sign(form)
    f = (a, b, c, d)
    if a == 0:
        return abs(c) == b or d == b or c == 0
    if evaluate(f, a - b, a) == 0 or evaluate(f, -a - b, a) == 0:
        return True
    if evaluate(f, -b, a) == 0:  # Re w = 0 (rational real root at -b/a)
        return True
    if d == 0:
        return c == a
    return evaluate(f, -d, a) == 0


def is_ambiguous_reduced(form) -> bool:
    """True when the complex-pair point sits on the fundamental domain
    boundary, i.e. the orbit may hold reduced forms beyond the four sign
    variants.  Only these forms need the breadth-first closure."""
    D = disc(form)
    return _is_boundary_pos(form) if D > 0 else _is_boundary_neg(form)


def _reduce_pos(form):
    g = MAT_ID
    f = tuple(form)
    for _ in range(100000):
        a, b, c, d = f
        t = b * b - 3 * a * c
        s = b * c - 9 * a * d
        r = c * c - 3 * b * d
        if abs(s) > t:
            # translate: x -> x + k y with k the nearest integer to -s/(2t)
            k = (-s + t) // (2 * t)
            step = UnimodularMatrix(1, 0, k, 1)
        elif r < t:
            step = MAT_SWAP
        else:
            assert is_reduced_pos(f)
            return f, g
        f = tuple(act(step, f))
        g = mat_mul(step, g)
    raise RuntimeError("reduction did not terminate for %r" % (form,))


def _reduce_neg(form):
    g = MAT_ID
    f = tuple(form)
    for _ in range(100000):
        a, b, c, d = f
        if a < 0 or (a == 0 and b < 0):
            f = tuple(neg(f))
            g = mat_mul(MAT_NEG, g)
            continue
        if a == 0:
            if abs(c) > b:
                k = (-c + b) // (2 * b)  # nearest integer to -c/(2b) = Re w
                step = UnimodularMatrix(1, 0, k, 1)
            elif d < b:
                step = MAT_SWAP
            else:
                assert is_reduced_neg(f)
                return f, g
            f = tuple(act(step, f))
            g = mat_mul(step, g)
            continue
        # translate Re w into [-1/2, 1/2]
        if evaluate(f, -a - b, a) > 0 or evaluate(f, a - b, a) < 0:
            k = _round_re_w(f)
            assert k != 0
            step = UnimodularMatrix(1, 0, k, 1)
        elif not _v_at_least_one(f):
            step = MAT_SWAP
        else:
            assert is_reduced_neg(f)
            return f, g
        f = tuple(act(step, f))
        g = mat_mul(step, g)
    raise RuntimeError("reduction did not terminate for %r" % (form,))


def _v_at_least_one(f) -> bool:
    a, b, c, d = f
    if d == 0:
        return c >= a
    val = evaluate(f, -d, a)
    return (val >= 0) if d < 0 else (val <= 0)


def _round_re_w(f) -> int:
    """An integer j with Re w in [j - 1/2, j + 1/2], where 2 Re w equals
    -(theta + b/a) and theta is the unique real root (a > 0).  Decided by
    exact sign tests of f at rationals, then the shift w -> w - j lands in
    the strip |Re| <= 1/2."""
    a, b = f[0], f[1]

    def lt(j):  # Re w < j + 1/2  <=>  theta > (-b - (2j+1) a)/a
        return evaluate(f, -b - (2 * j + 1) * a, a) < 0

    if lt(0):
        lo, hi, step = -1, 0, 1
        while lt(lo):
            hi = lo
            lo -= step
            step *= 2
    else:
        lo, hi, step = 0, 1, 1
        while not lt(hi):
            lo = hi
            hi += step
            step *= 2
    # smallest hi with (Re w < hi + 1/2); then Re w >= hi - 1/2 as well
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if lt(mid):
            hi = mid
        else:
            lo = mid
    return hi


def reduce_form(form):
    """Return (reduced_form, g) with act(g, form) == reduced_form."""
    D = disc(form)
    if D == 0:
        raise ValueError("degenerate form")
    f, g = _reduce_pos(form) if D > 0 else _reduce_neg(form)
    return BinaryCubicForm(*f), g


class OrbitClosure(NamedTuple):
    forms: frozenset
    matrices: dict  # UnimodularMatrix -> image form
    stabilizer_order: int
    proper_stabilizer_order: int


def orbit_closure(form) -> OrbitClosure:
    """All reduced forms in the orbit of a reduced form, found by closing
    under unimodular matrices with entries in {-1, 0, 1}, together with
    every matrix carrying the input to a reduced form."""
    f0 = tuple(form)
    pred = is_reduced_pos if disc(f0) > 0 else is_reduced_neg
    if not pred(f0):
        raise ValueError("orbit_closure wants a reduced form")
    seen = {MAT_ID: f0}
    queue = [(MAT_ID, f0)]
    while queue:
        g0, ff = queue.pop()
        for s in SMALL_MATRICES:
            g1 = mat_mul(s, g0)
            if g1 in seen:
                continue
            f1 = tuple(act(s, ff))
            if pred(f1):
                seen[g1] = f1
                queue.append((g1, f1))
                if len(seen) > 5000:
                    raise RuntimeError("orbit closure blow-up at %r" % (form,))
    stab = sum(1 for ff in seen.values() if ff == f0)
    proper = sum(1 for g, ff in seen.items() if ff == f0 and g.det == 1)
    return OrbitClosure(frozenset(seen.values()), seen, stab, proper)


def canonicalize(form) -> BinaryCubicForm:
    """Deterministic orbit representative: the lexicographically largest
    reduced form in the orbit.  Two forms are GL2(Z)-equivalent iff their
    canonical representatives coincide."""
    f, _ = reduce_form(form)
    return BinaryCubicForm(*max(orbit_closure(f).forms))


def stabilizer_matrices(form) -> list:
    """The full stabilizer of `form` in GL2(Z) (conjugated computation via
    the reduced representative)."""
    f, g = reduce_form(form)
    cl = orbit_closure(f)
    ginv = _mat_inverse(g)
    out = []
    for m, image in cl.matrices.items():
        if image == tuple(f):
            out.append(mat_mul(ginv, mat_mul(m, g)))
    return out


def _mat_inverse(g) -> UnimodularMatrix:
    p, q, r, s = g
    det = p * s - q * r
    return UnimodularMatrix(s // det, -q // det, -r // det, p // det)


def stabilizer_order(form) -> int:
    """|Aut C| of the associated cubic ring; always in {1, 2, 3, 6}."""
    f, _ = reduce_form(form)
    n = orbit_closure(f).stabilizer_order
    assert n in (1, 2, 3, 6), (form, n)
    return n


def stabilizer_signs(form):
    """(order, proper_order): proper = index-2 subgroup fixing orientation
    when an orientation-reversing automorphism exists."""
    f, _ = reduce_form(form)
    cl = orbit_closure(f)
    return cl.stabilizer_order, cl.proper_stabilizer_order


def random_unimodular(rng, steps: int = 8) -> UnimodularMatrix:
    """Small random word in the standard generators; for tests."""
    gens = (
        UnimodularMatrix(1, 0, 1, 1),
        UnimodularMatrix(1, 0, -1, 1),
        UnimodularMatrix(1, 1, 0, 1),
        UnimodularMatrix(0, 1, 1, 0),
        MAT_NEG,
    )
    g = MAT_ID
    for _ in range(steps):
        g = mat_mul(rng.choice(gens), g)
    return g
