"""Weighted class numbers of cubic rings and the pairing identity.

h(D) counts cubic rings of discriminant D weighted by 1/#automorphisms;
hhat(D) counts the trace-divisible rings of discriminant -27 D the same
way.  The two tables line up: hhat = 3h on positive discriminants and
hhat = h on negative ones, an identity this package verifies by complete
enumeration.
"""

from cubicount.counting import class_numbers, enumerate_orbits, zeta_coefficients
from cubicount.forms import disc

X = 60
cn = class_numbers(X)

print("first rows of the class-number table (delta, h, hhat):")
for D in [1, -3, -4, 5, -23, 49, -31, 44]:
    h, hh = cn[D]
    print("  %5d  %8s  %8s" % (D, h, hh))

print("\nh(1) = 1/6 because Z^3 has 6 automorphisms;")
print("hhat(1) = 1/2 because Z[t]/(t^3-1) has 2.")

violations = [D for D, (h, hh) in cn.items() if hh != (3 * h if D > 0 else h)]
print("\npairing identity for 0 < |D| <= %d: %s" % (X, "holds" if not violations else violations))

# the identity in Dirichlet-series form: coefficientwise equality of the
# rescaled hat series with the plain series of the opposite sign
z = zeta_coefficients(40)
ok = all(
    z["zhat_plus"][n] == z["zeta_minus"][n] and z["zhat_minus"][n] == 3 * z["zeta_plus"][n]
    for n in range(1, 41)
)
print("series form (zhat+ = zeta-, zhat- = 3 zeta+) up to 40:", "holds" if ok else "fails")

# enumeration is exact and duplicate-free: every orbit appears once
forms = enumerate_orbits(40)
print("\n%d orbits with 0 < |disc| <= 40; the three smallest by |disc|:" % len(forms))
for f in sorted(forms, key=lambda f: abs(disc(f)))[:3]:
    print("  form", tuple(f), "disc", disc(f))
