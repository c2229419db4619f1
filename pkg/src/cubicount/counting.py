"""Orbit enumeration by bounded discriminant and the weighted class numbers.

h(D) counts GL2(Z)-orbits of integral binary cubic forms of discriminant D,
each weighted by 1/|stabilizer|; hhat(D) does the same over forms with
3 | b, 3 | c at discriminant -27 D.  Everything is exact: weights are
fractions.Fraction, enumeration is integer-only.

The primary enumeration scans the reduced domains of `forms` directly with
proven coefficient bounds; a secondary coefficient-box method (canonicalize
and deduplicate everything in a box) exists purely as a correctness oracle.
Also here: the local subring-count sequence s_n with its seed table, closed
form and three-term recursion, the induced subring counter for maximal
forms, the discriminant recursions relating h(p^6 D) to h(p^4 D), h(D),
h(D/p^2), and Dirichlet coefficient tables for the four associated series.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction
from math import isqrt

from .forms import (
    BinaryCubicForm,
    canonicalize,
    disc,
    is_ambiguous_reduced,
    is_reduced_neg,
    is_reduced_pos,
    orbit_closure,
)
from .rings import BudgetExceeded, is_maximal_at_p, splitting_type

DEFAULT_MAX_DISC = 1_000_000
_BUDGET_ENV = "CUBICOUNT_BUDGET"


def disc_budget() -> int:
    raw = os.environ.get(_BUDGET_ENV)
    if raw:
        return int(raw)
    return DEFAULT_MAX_DISC


def _check_budget(x, budget=None):
    cap = disc_budget() if budget is None else budget
    if x > cap:
        raise BudgetExceeded("requested |disc| <= %d over budget %d" % (x, cap))


def in_discs(n: int) -> bool:
    """Membership in (4Z \\ 0) + (1 + 4Z), the possible nonzero discriminants."""
    return n != 0 and n % 4 in (0, 1)


def _i4root(n):
    return isqrt(isqrt(n)) if n > 0 else 0


def _icbrt(n):
    if n <= 0:
        return 0
    x = int(round(n ** (1.0 / 3))) + 2
    while x * x * x > n:
        x -= 1
    return x


def _ceil_div(a, b):
    return -((-a) // b)


# ---------------------------------------------------------------------------
# Reduced-domain scans.  Each yields every reduced form with the requested
# discriminant sign and 0 < |disc| <= X, with a >= 0 (and b > 0 when a = 0).

def _scan_pos(X, zmat):
    step = 3 if zmat else 1
    out = []
    ap = out.append
    Pmax = isqrt(X)
    # a = 0: P = b^2, Q = bc, R = c^2 - 3bd
    for b in range(step, isqrt(Pmax) + 1, step):
        P = b * b
        for c in range(-(b // step) * step, b + 1, step):
            Q = b * c
            Rhi = (3 * X + Q * Q) // (4 * P)
            # P <= c^2 - 3 b d <= Rhi
            dl = _ceil_div(c * c - Rhi, 3 * b)
            dh = (c * c - P) // (3 * b)
            for d in range(dl, dh + 1):
                R = c * c - 3 * b * d
                if R < P or abs(Q) > P:
                    continue
                D3 = 4 * P * R - Q * Q
                if D3 < 3 or D3 > 3 * X:
                    continue
                ap((0, b, c, d))
    amax = isqrt((4 * isqrt(X)) // 27) + 2
    for a in range(1, amax + 1):
        a9 = 9 * a
        bmax = isqrt(Pmax) + (3 * a) // 2 + 2
        for b in range(-(bmax // step) * step, bmax + 1, step):
            # 1 <= P = b^2 - 3ac <= Pmax
            cl = _ceil_div(b * b - Pmax, 3 * a)
            ch = (b * b - 1) // (3 * a)
            if zmat:
                cl += (-cl) % 3
            for c in range(cl, ch + 1, step):
                P = b * b - 3 * a * c
                if P < 1 or P > Pmax:
                    continue
                bc = b * c
                dl = _ceil_div(bc - P, a9)
                dh = (bc + P) // a9
                cc = c * c
                for d in range(dl, dh + 1):
                    Q = bc - a9 * d
                    R = cc - 3 * b * d
                    if R < P or abs(Q) > P:
                        continue
                    D3 = 4 * P * R - Q * Q
                    if D3 < 3 or D3 > 3 * X:
                        continue
                    ap((a, b, c, d))
    return out


def _scan_neg(X, zmat):
    step = 3 if zmat else 1
    out = []
    ap = out.append
    # a = 0 family: (0, b, c, d), b >= 1, |c| <= b, d >= b
    bmax = _i4root(X // 3) + 2
    for b in range(step, bmax + 1, step):
        bb = b * b
        for c in range(-(b // step) * step, b + 1, step):
            dhi = (X // bb + c * c) // (4 * b)
            for d in range(b, dhi + 1):
                D = bb * (c * c - 4 * b * d)
                if -X <= D <= -1:
                    ap((0, b, c, d))
    # a >= 1
    amax = _i4root((16 * X) // 27) + 1
    for a in range(1, amax + 1):
        a2 = a * a
        a3 = a2 * a
        a4 = a2 * a2
        T = _i4root(X // (3 * a4)) + 1
        M2 = _icbrt(X // (4 * a4)) + 1
        tmax = T + isqrt(M2) + 2
        vmax = M2 + 1
        capd = a * tmax * vmax + 1
        bmax = a * (tmax + 1) + 1
        cmax = a * (vmax + tmax) + 1
        for b in range(-(bmax // step) * step, bmax + 1, step):
            amb = a - b
            apb = a + b
            K1base = a * amb ** 3 + a * b * amb * amb
            K2base = -a * apb ** 3 + a * b * apb * apb
            for c in range(-(cmax // step) * step, cmax + 1, step):
                # d window from the strip condition |Re w| <= 1/2
                K1 = K1base + a2 * c * amb
                K2 = K2base - a2 * c * apb
                dl = -(K1 // a3)
                dh = (-K2) // a3
                if dl > dh:
                    continue
                # d window from disc >= -X (quadratic in d, opens downward)
                bq = 18 * a * b * c - 4 * b ** 3
                gq = b * b * c * c - 4 * a * c ** 3
                dq = bq * bq + 108 * a2 * (gq + X)
                if dq < 0:
                    continue
                rt = isqrt(dq)
                dl = max(dl, (bq - rt) // (54 * a2) - 1, -capd)
                dh = min(dh, (bq + rt) // (54 * a2) + 1, capd)
                for d in range(dl, dh + 1):
                    D = -27 * a2 * d * d + bq * d + gq
                    if D > -1 or D < -X:
                        continue
                    # |w| >= 1
                    if d == 0:
                        if c < a:
                            continue
                    else:
                        val = -a * d ** 3 + a * b * d * d - a2 * c * d + a3 * d
                        if (val < 0) if d < 0 else (val > 0):
                            continue
                    ap((a, b, c, d))
    return out


def _lexmax_keep(f):
    # keep exactly one of the four sign variants (a,b,c,d), -(a,b,c,d),
    # (-a,b,-c,d), (a,-b,c,-d): the lexicographically largest
    a, b, c, d = f
    if a > 0:
        return b > 0 or (b == 0 and d >= 0)
    return b > 0 and c >= 0


class Orbit:
    """One GL2(Z)-orbit: canonical form, stabilizer data."""

    __slots__ = ("form", "stabilizer_order", "proper_stabilizer_order")

    def __init__(self, form, stab, proper):
        self.form = BinaryCubicForm(*form)
        self.stabilizer_order = stab
        self.proper_stabilizer_order = proper

    @property
    def weight(self) -> Fraction:
        return Fraction(1, self.stabilizer_order)

    @property
    def has_orientation_reversing_automorphism(self) -> bool:
        return self.proper_stabilizer_order != self.stabilizer_order

    def __repr__(self):
        return "Orbit(%s, stab=%d)" % (self.form, self.stabilizer_order)


_ORBIT_CACHE = {}


def orbit_table(X: int, zmat_only: bool = False, budget=None):
    """dict disc -> sorted list of Orbit, for all 0 < |disc| <= X."""
    _check_budget(X, budget)
    cached = _ORBIT_CACHE.get(zmat_only)
    if cached is not None and cached[0] >= X:
        if cached[0] == X:
            return cached[1]
        return {
            D: orbs for D, orbs in cached[1].items() if abs(D) <= X
        }
    table = {}
    pending = {}
    for forms in (_scan_pos(X, zmat_only), _scan_neg(X, zmat_only)):
        for f in forms:
            D = disc(f)
            assert 0 < abs(D) <= X
            if not _lexmax_keep(f):
                continue
            if is_ambiguous_reduced(f):
                pending.setdefault(D, []).append(f)
            else:
                table.setdefault(D, []).append(Orbit(f, 1, 1))
    for D, forms in pending.items():
        done = set()
        for f in forms:
            if f in done:
                continue
            cl = orbit_closure(f)
            done |= cl.forms
            table.setdefault(D, []).append(
                Orbit(max(cl.forms), cl.stabilizer_order, cl.proper_stabilizer_order)
            )
    for D in table:
        table[D].sort(key=lambda o: o.form)
    _ORBIT_CACHE[zmat_only] = (X, table)
    return table


def enumerate_orbits(X: int, zmat_only: bool = False, budget=None):
    """Canonical representatives of all orbits with 0 < |disc| <= X,
    sorted by (disc, form); exactly one per orbit."""
    table = orbit_table(X, zmat_only, budget)
    out = []
    for D in sorted(table):
        for orb in table[D]:
            out.append(orb.form)
    return out


def h_value(D: int, zmat_variant: bool = False, budget=None) -> Fraction:
    """h(D) (or hhat(D) when zmat_variant), single value."""
    if D == 0 or not in_discs(D):
        return Fraction(0)
    if zmat_variant:
        table = orbit_table(27 * abs(D), True, budget)
        orbs = table.get(-27 * D, [])
    else:
        table = orbit_table(abs(D), False, budget)
        orbs = table.get(D, [])
    return sum((o.weight for o in orbs), Fraction(0))


def class_numbers(X: int, budget=None):
    """dict D -> (h(D), hhat(D)) for all 0 < |D| <= X, exact rationals."""
    _check_budget(max(X, 27 * X), budget)
    h_table = orbit_table(X, False, budget)
    hh_table = orbit_table(27 * X, True, budget)
    out = {}
    for D in range(-X, X + 1):
        if D == 0:
            continue
        h = sum((o.weight for o in h_table.get(D, [])), Fraction(0))
        hh = sum((o.weight for o in hh_table.get(-27 * D, [])), Fraction(0))
        if h or hh or in_discs(D):
            out[D] = (h, hh)
    return out


# ---------------------------------------------------------------------------
# Secondary enumeration oracle: coefficient box + canonicalize-dedup

def box_orbit_counts(X: int):
    """Independent re-enumeration for cross-checking: scan a coefficient box
    guaranteed to contain every reduced form with |disc| <= X, keep reduced
    forms, canonicalize, deduplicate.  Returns dict disc -> orbit count."""
    amax = max(_i4root((16 * X) // 27) + 1, isqrt((4 * isqrt(X)) // 27) + 2)
    T = _i4root(X // 3) + 1
    M2 = _icbrt(X // 4) + 1
    tmax = T + isqrt(M2) + 2
    vmax = M2 + 1
    bmax = max(amax * (tmax + 1) + 1, isqrt(isqrt(X)) + (3 * amax) // 2 + 2)
    cmax = max(amax * (vmax + tmax) + 1, bmax)
    # the a = 0 families have d up to about X/4 (worst case b = 1)
    dmax = max(amax * tmax * vmax + 1, (X + 1) // 4 + 2, cmax)
    reps = {}
    for a in range(0, amax + 1):
        for b in range(-bmax, bmax + 1):
            if a == 0 and b <= 0:
                continue
            for c in range(-cmax, cmax + 1):
                for d in range(-dmax, dmax + 1):
                    f = (a, b, c, d)
                    D = disc(f)
                    if D == 0 or abs(D) > X:
                        continue
                    red = is_reduced_pos(f) if D > 0 else is_reduced_neg(f)
                    if not red:
                        continue
                    reps.setdefault(D, set()).add(canonicalize(f))
    return {D: len(s) for D, s in reps.items()}


# ---------------------------------------------------------------------------
# Local subring counts

_S1 = {"111": 3, "12": 1, "3": 0, "1^2 1": 2, "1^3": 1}
_S2 = {"111": 4, "12": 2, "3": 1, "1^2 1": 2, "1^3": 1}


def s_sequence(sigma: str, p: int, n: int) -> int:
    """Number of index-p^n subrings of a maximal ring with splitting type
    sigma at p, by the three-term recursion seeded from the table."""
    if sigma not in _S1:
        raise ValueError("unknown splitting type %r" % (sigma,))
    if n < 0:
        raise ValueError("n must be >= 0")
    seq = [0, 0, 1, _S1[sigma], _S2[sigma]]  # s_{-2} s_{-1} s_0 s_1 s_2
    while len(seq) < n + 3:
        m = len(seq)
        # s_{k+3} = s_{k+2} + p (s_k - s_{k-1}) with k = m - 5
        seq.append(seq[m - 1] + p * (seq[m - 3] - seq[m - 4]))
    val = seq[n + 2]
    assert val == s_closed_form(sigma, p, n)
    return val


def s_closed_form(sigma: str, p: int, n: int) -> int:
    """Explicit solution of the recursion with floor-of-thirds exponents."""
    s1, s2 = _S1[sigma], _S2[sigma]
    num = (
        p ** ((n + 3) // 3) - 1
        + (s1 - 1) * (p ** ((n + 2) // 3) - 1)
        + (s2 - s1) * (p ** ((n + 1) // 3) - 1)
    )
    assert num % (p - 1) == 0
    return num // (p - 1)


def subring_count(form, m: int) -> int:
    """Number of index-m subrings of the maximal ring of `form`, multiplied
    out prime by prime; requires maximality at every prime dividing m."""
    if m < 1:
        raise ValueError("index must be positive")
    total = 1
    for p, v in factorize(m).items():
        if not is_maximal_at_p(form, p):
            raise ValueError("form not maximal at %d" % p)
        total *= s_sequence(splitting_type(form, p), p, v)
    return total


def factorize(n: int):
    n = abs(n)
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


# ---------------------------------------------------------------------------
# Discriminant recursions

def check_recursion(D: int, p: int, include_hhat: bool = True, budget=None):
    """Evaluate h(p^6 D) = h(p^4 D) + p (h(D) - h(D/p^2)) and, optionally,
    the same identity for hhat, from independent enumerations of all terms.
    Returns a list of report dicts."""
    if not in_discs(D):
        raise ValueError("D must lie in Discs")
    terms = [D * p ** 6, D * p ** 4, D]
    small = Fraction(0)
    if D % (p * p) == 0 and in_discs(D // (p * p)):
        terms.append(D // (p * p))
    reports = []
    variants = [("h", False)] + ([("hhat", True)] if include_hhat else [])
    for name, zv in variants:
        need = abs(D) * p ** 6 * (27 if zv else 1)
        _check_budget(need, budget)
        vals = {}
        for t in sorted(set(terms), key=abs, reverse=True):  # warm the cache once
            vals[t] = h_value(t, zv, budget)
        small_term = vals.get(D // (p * p), Fraction(0)) if D % (p * p) == 0 else Fraction(0)
        lhs = vals[D * p ** 6]
        rhs = vals[D * p ** 4] + p * (vals[D] - small_term)
        reports.append(
            {
                "check": "recursion-%s" % name,
                "delta": D,
                "p": p,
                "lhs": lhs,
                "rhs": rhs,
                "pass": lhs == rhs,
            }
        )
    return reports


# ---------------------------------------------------------------------------
# Dirichlet coefficient tables

def zeta_coefficients(X: int, budget=None):
    """First X coefficients of the four series, exact rationals, 1-indexed.

    zeta_plus[n]  = h(n),   zeta_minus[n] = h(-n);
    zhat_plus[n]  = hhat(-n)  (forms of positive discriminant 27 n),
    zhat_minus[n] = hhat(n)   (forms of discriminant -27 n),
    i.e. the 3^{3s} rescaling reindexes the hat series by n = |disc|/27.
    The pairwise identities are then zhat_plus == zeta_minus and
    zhat_minus == 3 * zeta_plus, entry by entry."""
    cn = class_numbers(X, budget)
    z = {
        "zeta_plus": [Fraction(0)] * (X + 1),
        "zeta_minus": [Fraction(0)] * (X + 1),
        "zhat_plus": [Fraction(0)] * (X + 1),
        "zhat_minus": [Fraction(0)] * (X + 1),
    }
    for n in range(1, X + 1):
        if n in cn:
            z["zeta_plus"][n] = cn[n][0]
            z["zhat_minus"][n] = cn[n][1]
        if -n in cn:
            z["zeta_minus"][n] = cn[-n][0]
            z["zhat_plus"][n] = cn[-n][1]
    return z


# ---------------------------------------------------------------------------
# Serialization

def frac_str(q: Fraction) -> str:
    q = Fraction(q)
    return "%d/%d" % (q.numerator, q.denominator)


def table_csv_lines(X: int, budget=None):
    """CSV rows `delta,h_num,h_den,hhat_num,hhat_den`, delta ascending."""
    cn = class_numbers(X, budget)
    lines = ["delta,h_num,h_den,hhat_num,hhat_den"]
    for D in range(-X, X + 1):
        if D == 0 or D not in cn:
            continue
        h, hh = cn[D]
        lines.append(
            "%d,%d,%d,%d,%d"
            % (D, h.numerator, h.denominator, hh.numerator, hh.denominator)
        )
    return lines


def table_json(X: int, budget=None) -> str:
    """JSON mirror of the CSV schema, same five fields per row."""
    cn = class_numbers(X, budget)
    rows = [
        {
            "delta": D,
            "h_num": cn[D][0].numerator,
            "h_den": cn[D][0].denominator,
            "hhat_num": cn[D][1].numerator,
            "hhat_den": cn[D][1].denominator,
        }
        for D in sorted(cn)
    ]
    return json.dumps(rows, indent=0, sort_keys=True)
