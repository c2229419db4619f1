"""Binary cubic forms and the cubic rings they parametrize.

A form (a, b, c, d) means a x^3 + b x^2 y + c x y^2 + d y^3.  Unimodular
substitutions, twisted by 1/det, act on forms; orbits correspond to cubic
rings, with the discriminant and the trace-divisibility predicate carried
across the correspondence.
"""

from cubicount.forms import (
    act,
    canonicalize,
    disc,
    hessian,
    is_zmat,
    stabilizer_order,
)
from cubicount.rings import (
    max_zmat_subring,
    is_maximal_at_p,
    ring_from_form,
    splitting_type,
)

# two landmark rings: Z^3 (discriminant 1) and Z[t]/(t^3 - 1) (disc -27)
z3 = (0, 1, 1, 0)
t3m1 = (1, 0, 0, -1)

print("disc x^2 y + x y^2        =", disc(z3))
print("disc x^3 - y^3            =", disc(t3m1))
print("automorphisms of Z^3      =", stabilizer_order(z3))
print("automorphisms of Z[t]/(t^3-1) =", stabilizer_order(t3m1))

# the twisted action: swapping x and y negates and reverses coefficients
print("\nswap acting on (3,5,7,11) ->", tuple(act((0, 1, 1, 0), (3, 5, 7, 11))))

# canonical representatives decide equivalence
g = (2, 1, 1, 1)  # determinant 1
moved = act(g, t3m1)
print("a translate of x^3 - y^3  :", tuple(moved))
print("same canonical form?       ", canonicalize(moved) == canonicalize(t3m1))

# all traces of Z[t]/(t^3-1) are divisible by 3; its form shows 3 | b, c
print("\ntrace-divisible form?      ", is_zmat(t3m1))
print("hessian of x^3 - y^3      =", tuple(hessian(t3m1))[:3], "content", hessian(t3m1).content)

# multiplication table from the form, and the trace of each basis vector
C = ring_from_form((1, 0, -1, 1))  # x^3 - x + 1, discriminant -23
print("\nring of x^3 - x + 1: alpha^2 =", C.mul((0, 1, 0), (0, 1, 0)))
print("traces of [1, alpha, beta] =", [C.trace(v) for v in ((1, 0, 0), (0, 1, 0), (0, 0, 1))])

# local structure: where is Z[t]/(t^3-1) not maximal, and how do primes split
print("\nmaximal at 2?", is_maximal_at_p(t3m1, 2), " maximal at 3?", is_maximal_at_p(t3m1, 3))
print("splitting of x^3 - y^3 at 5:", splitting_type(t3m1, 5))
print("splitting of x^3 - y^3 at 7:", splitting_type(t3m1, 7))

# the biggest subring of Z^3 with all traces in 3Z has index 9
sub, idx, _ = max_zmat_subring(ring_from_form(z3))
print("\nmax trace-divisible subring of Z^3: index", idx, "discriminant", sub.discriminant)
