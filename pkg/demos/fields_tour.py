"""A short tour of the exact fields: F_p, F_{p^k} and Q(eps)."""

from triplepoints import make_field, roots_of

# prime field
F7 = make_field(7)
five = F7(5)
print("in F_7, 5*5 - 5 + 1 =", five * five - five + 1)
print("roots of x^2 - x + 1 in F_7:", roots_of([1, -1, 1], F7))

# extension field; the modulus is the smallest monic irreducible polynomial
F16 = make_field(2, 4)
print(F16.name, "modulus (constant term first):", F16.modulus)
g = F16.wrap(F16.generator)
print("generator", g, "has order", next(n for n in range(1, 16) if g ** n == 1))

# the quadratic field with 4 eps^2 - 6 eps + 1 = 0
Q = make_field(quadratic=(4, -6, 1))
eps = Q(Q.eps)
print("4 eps^2 - 6 eps + 1 =", 4 * eps * eps - 6 * eps + 1)
print("1 / eps =", eps.inverse())
