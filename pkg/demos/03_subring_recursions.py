"""Counting subrings of a fixed ring, and the discriminant recursions.

The number of index-p^n subrings of a ring maximal at p obeys
s_{n+3} = s_{n+2} + p (s_n - s_{n-1}), seeded by a five-column table in
the splitting type of p.  Summed over a whole discriminant range this
yields recursions for the class numbers themselves:
h(p^6 D) = h(p^4 D) + p (h(D) - h(D/p^2)), and the same for hhat.
"""

from cubicount.counting import check_recursion, s_closed_form, s_sequence, subring_count
from cubicount.rings import ring_from_form, splitting_type, subrings_of_index

print("seed table (s1, s2) per splitting type:")
for sigma in ("111", "12", "3", "1^2 1", "1^3"):
    print("  %-6s s1=%d s2=%d" % (sigma, s_sequence(sigma, 5, 1), s_sequence(sigma, 5, 2)))

print("\nrecursion vs closed form, type 111 at p = 2:")
print("  s_0..s_8 =", [s_sequence("111", 2, n) for n in range(9)])
print("  closed   =", [s_closed_form("111", 2, n) for n in range(9)])

# the brute-force lattice oracle agrees: subrings of Z^3 of index 2^k
z3 = ring_from_form((0, 1, 1, 0))
print("\nZ^3 subring counts by lattice enumeration:",
      [len(subrings_of_index(z3, 2 ** k)) for k in (1, 2, 3)])
print("Z^3 has splitting type", splitting_type((0, 1, 1, 0), 2), "at 2")

# the disc -23 field ring is inert at 2 (splitting type 3): no subring of
# index 2, one of index 4, three of index 8
f23 = (1, 0, -1, 1)
print("\ndisc -23 ring, subring counts at indices 2, 4, 8:",
      [subring_count(f23, 2 ** k) for k in (1, 2, 3)])
print("multiplicativity: count(72) = count(8) * count(9):",
      subring_count(f23, 72), "=", subring_count(f23, 8), "*", subring_count(f23, 9))

# a full class-number recursion, all four terms enumerated independently
for rep in check_recursion(1, 2):
    print("\n%s at D=1, p=2: lhs = %s, rhs = %s, %s"
          % (rep["check"], rep["lhs"], rep["rhs"], "ok" if rep["pass"] else "FAIL"))
