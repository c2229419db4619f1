"""Cubic rings as explicit multiplication tables over Z.

A form (a, b, c, d) determines the ring with basis [1, alpha, beta] and

    alpha^2     = -a*c - b*alpha + a*beta
    alpha*beta  = -a*d
    beta^2      = -b*d - d*alpha + c*beta,

the unique choice making the table associative.  Elements are integer
coordinate triples (x0, x1, x2).  The orientation sign fixes a generator
of the top exterior power (basis wedge times the sign).

Also here: the maximal subring with all traces divisible by 3, local
maximality of a form at a prime, splitting types of maximal forms, and a
brute-force enumeration of finite-index subrings via triangular sublattice
bases (the oracle that backs the counting recursions).
"""

from __future__ import annotations

from math import gcd

from .forms import BinaryCubicForm, disc, evaluate

SPLITTING_TYPES = ("111", "12", "3", "1^2 1", "1^3")


class CubicRing:
    """Multiplication table attached to a binary cubic form."""

    def __init__(self, form, orientation: int = 1):
        if orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")
        self.form = BinaryCubicForm(*form)
        self.orientation = orientation
        a, b, c, d = self.form
        # products of basis vectors, coordinates in [1, alpha, beta]
        self._aa = (-a * c, -b, a)
        self._ab = (-a * d, 0, 0)
        self._bb = (-b * d, -d, c)

    def __repr__(self):
        return "CubicRing(%s, orientation=%+d)" % (self.form, self.orientation)

    def __eq__(self, other):
        return (
            isinstance(other, CubicRing)
            and self.form == other.form
            and self.orientation == other.orientation
        )

    def __hash__(self):
        return hash((self.form, self.orientation))

    @property
    def discriminant(self) -> int:
        return disc(self.form)

    def mul(self, x, y):
        x0, x1, x2 = x
        y0, y1, y2 = y
        p0, p1, p2 = self._aa
        q0 = self._ab[0]
        r0, r1, r2 = self._bb
        s11 = x1 * y1
        s12 = x1 * y2 + x2 * y1
        s22 = x2 * y2
        return (
            x0 * y0 + s11 * p0 + s12 * q0 + s22 * r0,
            x0 * y1 + x1 * y0 + s11 * p1 + s22 * r1,
            x0 * y2 + x2 * y0 + s11 * p2 + s22 * r2,
        )

    def power(self, x, n: int):
        out = (1, 0, 0)
        for _ in range(n):
            out = self.mul(out, x)
        return out

    def trace(self, x) -> int:
        a, b, c, d = self.form
        return 3 * x[0] - b * x[1] + c * x[2]

    def mult_matrix(self, x):
        """Columns are x*1, x*alpha, x*beta."""
        cols = [x, self.mul(x, (0, 1, 0)), self.mul(x, (0, 0, 1))]
        return [[cols[j][i] for j in range(3)] for i in range(3)]

    def norm(self, x) -> int:
        return _det3(self.mult_matrix(x))

    def char_poly(self, x):
        """Coefficients (e1, e2, e3) with x^3 - e1 x^2 + e2 x - e3 = 0."""
        m = self.mult_matrix(x)
        e1 = m[0][0] + m[1][1] + m[2][2]
        e2 = (
            m[0][0] * m[1][1] - m[0][1] * m[1][0]
            + m[0][0] * m[2][2] - m[0][2] * m[2][0]
            + m[1][1] * m[2][2] - m[1][2] * m[2][1]
        )
        e3 = _det3(m)
        return e1, e2, e3

    def trace_pairing_disc(self) -> int:
        basis = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
        m = [[self.trace(self.mul(u, v)) for v in basis] for u in basis]
        return _det3(m)

    def is_associative(self) -> bool:
        basis = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
        for u in basis:
            for v in basis:
                for w in basis:
                    if self.mul(self.mul(u, v), w) != self.mul(u, self.mul(v, w)):
                        return False
        return True


def _det3(m) -> int:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def ring_from_form(form, orientation: int = 1) -> CubicRing:
    return CubicRing(form, orientation)


def trace(ring: CubicRing, x) -> int:
    return ring.trace(x)


def is_zmat_ring(ring: CubicRing) -> bool:
    """3 | tr(x) for all x; equivalent to is_zmat of the form."""
    a, b, c, d = ring.form
    return b % 3 == 0 and c % 3 == 0


# ---------------------------------------------------------------------------
# Sublattices and subrings

def _hnf_rows(vectors, n):
    """Row-echelon Hermite basis (pivot of row i in column i, positive
    pivots, entries above pivots reduced) of the lattice spanned by integer
    vectors of length n; raises if the lattice has rank < n."""
    rows = [list(v) for v in vectors]
    basis = []
    for col in range(n):
        pivot = None
        for r in rows:
            if any(r[:col]):
                raise AssertionError("unreduced prefix")
            if r[col]:
                pivot = r if pivot is None else pivot
        # gcd all rows into one pivot row
        while True:
            nz = [r for r in rows if r[col]]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda r: abs(r[col]))
            lead = nz[0]
            for r in nz[1:]:
                q = r[col] // lead[col]
                for i in range(col, n):
                    r[i] -= q * lead[i]
        nz = [r for r in rows if r[col]]
        if not nz:
            raise ValueError("rank deficient lattice")
        lead = nz[0]
        if lead[col] < 0:
            for i in range(n):
                lead[i] = -lead[i]
        basis.append(lead)
        rows = [r for r in rows if r is not lead and any(r)]
    # normalize entries above each pivot (rows are in echelon form)
    for j in range(n):
        for i in range(j):
            q = basis[i][j] // basis[j][j]
            if q:
                for k in range(n):
                    basis[i][k] -= q * basis[j][k]
    return basis


def index_in(parent_basis, sub_basis) -> int:
    det_p = _det3(parent_basis)
    det_s = _det3(sub_basis)
    assert det_p and det_s % det_p == 0
    return abs(det_s // det_p)


def sublattice_members(tri, vec) -> bool:
    """Membership of vec in the lattice whose rows tri are in row-echelon
    form (pivot of row i in column i, zeros to the left)."""
    v = list(vec)
    n = len(v)
    for i in range(n):
        if v[i] % tri[i][i]:
            return False
        q = v[i] // tri[i][i]
        for k in range(n):
            v[k] -= q * tri[i][k]
    return not any(v)


def subrings_of_index(ring: CubicRing, n: int, max_index: int = 1000):
    """All index-n sublattices of the ring containing 1 and closed under
    multiplication.  Each is returned as a triple of coordinate rows
    (a triangular basis starting with 1)."""
    if ring.discriminant == 0:
        raise ValueError("degenerate ring")
    if n > max_index:
        raise BudgetExceeded("subring index %d over budget %d" % (n, max_index))
    if n < 1:
        raise ValueError("index must be positive")
    out = []
    for e in _divisors(n):
        g = n // e
        for f in range(g):
            # lattice Z*1 + Z*(e*alpha + f*beta) + Z*(g*beta)
            basis = [(1, 0, 0), (0, e, f), (0, 0, g)]
            if _closed_under_mul(ring, basis):
                out.append(tuple(basis))
    return out


def _closed_under_mul(ring, basis) -> bool:
    tri = [list(b) for b in basis]
    gens = basis[1:]
    for i, u in enumerate(gens):
        for v in gens[i:]:
            if not sublattice_members(tri, ring.mul(u, v)):
                return False
    return True


def _divisors(n):
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


class BudgetExceeded(Exception):
    pass


# ---------------------------------------------------------------------------
# The maximal subring with all traces divisible by 3

def max_zmat_subring(ring: CubicRing):
    """The unique largest subring whose elements all have trace in 3Z,
    namely {x : x^3 in Z + 3C}.  Returns (subring, index, basis_rows)."""
    if ring.discriminant == 0:
        raise ValueError("degenerate ring")
    gens = [[1, 0, 0], [0, 3, 0], [0, 0, 3]]
    for x1 in range(3):
        for x2 in range(3):
            if x1 == 0 and x2 == 0:
                continue
            for x0 in range(3):
                x = (x0, x1, x2)
                cube = ring.power(x, 3)
                if cube[1] % 3 == 0 and cube[2] % 3 == 0:
                    gens.append(list(x))
    basis = _hnf_rows(gens, 3)
    idx = index_in([[1, 0, 0], [0, 1, 0], [0, 0, 1]], basis)
    assert idx in (1, 3, 9)
    sub = lattice_ring(ring, basis)
    assert is_zmat_ring(sub)
    assert sub.discriminant == idx * idx * ring.discriminant
    return sub, idx, [tuple(r) for r in basis]


def lattice_ring(ring: CubicRing, basis_rows) -> CubicRing:
    """Interpret a full-rank multiplicatively closed sublattice (rows starting
    with a vector proportional to 1) as a CubicRing: renormalize to a normal
    basis with positive determinant and read off the structure form."""
    b0, b1, b2 = ([list(r) for r in basis_rows])
    assert b0[1] == 0 and b0[2] == 0 and abs(b0[0]) == 1, "first vector must be +-1"
    if b0[0] < 0:
        b0 = [-x for x in b0]
    det = _det3([b0, b1, b2])
    if det < 0:
        b2 = [-x for x in b2]
        det = -det
    u, v = tuple(b1), tuple(b2)
    # normal basis: alpha*beta must be an integer
    prod = ring.mul(u, v)
    x, y = _solve2(u, v, prod)
    u = (u[0] - y * 1, u[1], u[2])
    v = (v[0] - x * 1, v[1], v[2])
    uu = ring.mul(u, u)
    uv = ring.mul(u, v)
    vv = ring.mul(v, v)
    cu = _solve2_full(u, v, uu)
    cv = _solve2_full(u, v, vv)
    cm = _solve2_full(u, v, uv)
    assert cm[1] == 0 and cm[2] == 0, "not a normal basis"
    # alpha^2 = l - b alpha + a beta ; beta^2 = n - d alpha + c beta
    b = -cu[1]
    a = cu[2]
    d = -cv[1]
    c = cv[2]
    form = BinaryCubicForm(a, b, c, d)
    sub = CubicRing(form, ring.orientation)
    # sanity: table constants match -ac, -ad, -bd
    assert cu[0] == -a * c and cm[0] == -a * d and cv[0] == -b * d
    return sub


def _solve2(u, v, w):
    """(x, y) with w = w0*1 + x*u + y*v in the alpha,beta coordinates."""
    det = u[1] * v[2] - u[2] * v[1]
    assert det != 0
    x_num = w[1] * v[2] - w[2] * v[1]
    y_num = u[1] * w[2] - u[2] * w[1]
    assert x_num % det == 0 and y_num % det == 0
    return x_num // det, y_num // det


def _solve2_full(u, v, w):
    x, y = _solve2(u, v, w)
    const = w[0] - x * u[0] - y * v[0]
    return (const, x, y)


# ---------------------------------------------------------------------------
# Local maximality and splitting types

def is_maximal_at_p(form, p: int) -> bool:
    """No index-p superring exists: fails iff p divides the whole form or a
    projective root mod p^2, moved to [1:0], leaves p^2 | a and p | b."""
    f = BinaryCubicForm(*form)
    if disc(f) == 0:
        raise ValueError("degenerate form")
    a, b, c, d = f
    if a % p == 0 and b % p == 0 and c % p == 0 and d % p == 0:
        return False
    p2 = p * p
    for v in _proj_points_mod(p2):
        if evaluate(f, v[0], v[1]) % p2:
            continue
        # complete v to a unimodular matrix with first row v
        r, s = _complement(v)
        det = v[0] * s - v[1] * r
        fx = 3 * a * v[0] ** 2 + 2 * b * v[0] * v[1] + c * v[1] ** 2
        fy = b * v[0] ** 2 + 2 * c * v[0] * v[1] + 3 * d * v[1] ** 2
        bb = (fx * r + fy * s) * det  # det = +-1, sign immaterial mod p
        if bb % p == 0:
            return False
    return True


def _proj_points_mod(m):
    """Representatives of P^1(Z/m) for m = p^2 (x or y a unit)."""
    pts = [(1, t) for t in range(m)]
    p = _isqrt_exact(m)
    pts += [(t * p, 1) for t in range(p)]
    return pts


def _isqrt_exact(m):
    from math import isqrt

    p = isqrt(m)
    assert p * p == m
    return p


def _complement(v):
    """(r, s) making [[x, y], [r, s]] unimodular for primitive (x, y)."""
    x, y = v
    g, r, s = _xgcd(x, y)
    assert g == 1, "point not primitive"
    return -s, r


def _xgcd(a, b):
    if b == 0:
        return (a, 1, 0) if a >= 0 else (-a, -1, 0)
    g, x, y = _xgcd(b, a % b)
    return g, y, x - (a // b) * y


def is_maximal(form) -> bool:
    """Maximal at every prime (only p with p^2 | disc can fail)."""
    D = disc(form)
    if D == 0:
        raise ValueError("degenerate form")
    for p in _primes_with_square_dividing(abs(D)):
        if not is_maximal_at_p(form, p):
            return False
    return True


def _primes_with_square_dividing(n):
    out = []
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            out.append(p)
        while n % p == 0:
            n //= p
        p += 1
    return out


def superrings_of_index_p(ring: CubicRing, p: int):
    """Index-p overrings inside C (x) Q, the brute-force converse oracle to
    is_maximal_at_p: lattices (C + Z*(v/p)) containing 1, closed under
    multiplication, with integral multiplication table."""
    out = []
    seen = set()
    for x0 in range(p):
        for x1 in range(p):
            for x2 in range(p):
                if (x0, x1, x2) == (0, 0, 0):
                    continue
                key = _proj_normalize((x0, x1, x2), p)
                if key in seen:
                    continue
                seen.add(key)
                v = key
                # lattice basis over Q: 1, alpha, beta, v/p
                if _superlattice_is_ring(ring, v, p):
                    out.append(v)
    return out


def _proj_normalize(v, p):
    for i in range(3):
        if v[i] % p:
            inv = pow(v[i], -1, p)
            return tuple((x * inv) % p for x in v)
    raise AssertionError


def _superlattice_is_ring(ring, v, p):
    # L = Z^3 + Z * (v/p); closed under multiplication iff v*v/p^2 and
    # v*e_i/p lie in L, i.e. numerators vanish appropriately mod p.
    vv = ring.mul(v, v)
    # v/p * v/p = vv/p^2 must lie in L: vv ≡ k*v mod p for some k, and then
    # (vv - k v)/p^2... handled by checking vv ≡ k v (mod p) and
    # (vv - k v)/p in L i.e. ≡ k' v mod p.
    for e in ((0, 1, 0), (0, 0, 1)):
        ve = ring.mul(v, e)
        if not _in_mod_line(ve, v, p):
            return False
    if not _in_mod_line_sq(ring, vv, v, p):
        return False
    return True


def _in_mod_line(w, v, p):
    # w ≡ t*v (mod p) for some t
    for t in range(p):
        if all((w[i] - t * v[i]) % p == 0 for i in range(3)):
            return True
    return False


def _in_mod_line_sq(ring, w, v, p):
    # w/p^2 in Z^3 + Z*(v/p)  <=>  w = 0 mod p and w/p = k*v mod p
    if any(x % p for x in w):
        return False
    w2 = tuple(x // p for x in w)
    return _in_mod_line(w2, v, p)


def splitting_type(form, p: int) -> str:
    """Degree/multiplicity pattern of the form mod p; only meaningful (and
    only allowed) for forms maximal at p."""
    if not is_maximal_at_p(form, p):
        raise ValueError("splitting type is defined for forms maximal at %d" % p)
    f = BinaryCubicForm(*form)
    mults = []
    for v in _proj_points_mod_p(p):
        m = _root_multiplicity(f, v, p)
        if m:
            mults.append(m)
    mults.sort(reverse=True)
    total = sum(mults)
    if mults == [1, 1, 1]:
        return "111"
    if mults == [2, 1]:
        return "1^2 1"
    if mults == [3]:
        return "1^3"
    if mults == [1]:
        return "12"
    assert mults == [], (form, p, mults)
    return "3"


def _proj_points_mod_p(p):
    return [(t, 1) for t in range(p)] + [(1, 0)]


def _root_multiplicity(f, v, p):
    """Multiplicity of the projective root v of f mod p (0 if not a root):
    move v to [1:0]; the multiplicity is the number of leading coefficients
    of the transformed form divisible by p."""
    if evaluate(f, v[0], v[1]) % p:
        return 0
    r, s = _complement((v[0], v[1])) if gcd(v[0], v[1]) == 1 else (None, None)
    from .forms import act

    g = (v[0], v[1], r, s)
    a2, b2, c2, d2 = act(g, f)
    if b2 % p:
        return 1
    if c2 % p:
        return 2
    assert d2 % p, "form vanishes mod p"
    return 3


def roots_in_p1(form, p: int):
    """Projective roots of the form mod p (no maximality requirement)."""
    return [v for v in _proj_points_mod_p(p) if evaluate(form, v[0], v[1]) % p == 0]
