# Finite fields and reduced polynomials.
#
# Elements of GF(p^n) are small integers whose base-p digits are polynomial
# coefficients (lowest first).  Every function F_q^m -> F_q is exactly one
# reduced polynomial, and numpy tables make the conversion cheap.

import numpy as np

from grmkit import GF, ReducedPoly, parse_poly, rp_interpolate, rp_to_table

# %% GF(4) built on x^2 + x + 1: the generator g has code 2 and g*g = g + 1 = 3
F4 = GF(4)
print(F4.serialize())
print("multiplication table\n", F4.mul)
g = F4(2)
print("g^2 =", (g * g).code, " g^3 =", (g**3).code, " 1/g =", g.inverse().code)

# %% vectorised arithmetic is just table lookup
a = np.array([0, 1, 2, 3])
print("a + 3 =", F4.add[a, 3], "  a * a =", F4.mul[a, a])

# %% reduced polynomials: exponents never exceed q - 1
F3 = GF(3)
p = parse_poly("x1^2*x2 + 2*x2", F3, 2)
print("p =", p, " degree", p.degree)
print("x1^5 reduces to", parse_poly("x1^5", F3, 1))

# %% evaluation table in canonical point order, x1 most significant
table = rp_to_table(p)
print("table of p:", table.tolist())

# %% interpolation inverts it; the delta at 0 in one variable is 1 - x1^2
print(rp_interpolate(F3, [1, 0, 0]))
assert rp_interpolate(F3, table, 2) == p

# %% random round trips
rng = np.random.default_rng(1)
for _ in range(200):
    T = rng.integers(0, 9, size=9)
    assert np.array_equal(rp_to_table(rp_interpolate(GF(9), T, 1)), T)
print("200 GF(9) round trips ok")

# %% products are pointwise products of tables
A = ReducedPoly.random(F4, 2, rng, density=0.4)
B = ReducedPoly.random(F4, 2, rng, density=0.4)
assert np.array_equal(rp_to_table(A * B), F4.mul[rp_to_table(A), rp_to_table(B)])
print("A =", A, "\nB =", B, "\nA*B =", A * B)
