# Factoring out vanishing hyperplanes.
#
# A reduced polynomial that vanishes on x_j = a is (x_j - a) times another
# reduced polynomial of smaller x_j-degree.  One that vanishes off x_j = b is
# the indicator 1 - (x_j - b)^(q-1) times something free of x_j.

import numpy as np

from grmkit import GF, NotVanishingError, ReducedPoly, complement_factor, divide_linear, parse_poly
from grmkit.poly import insert_variable

F3 = GF(3)

# %% x1^2 - 1 vanishes at x1 = 1, so it splits as (x1 - 1)(x1 + 1)
P = parse_poly("x1^2 + 2", F3, 1)
Q = divide_linear(P, 0, 1)
print(P, "=", ReducedPoly.linear(F3, 1, 0, 1), "*", Q)

# %% a polynomial that does not vanish gives a witness point
try:
    divide_linear(parse_poly("x1 + x2", F3, 2), 0, 0)
except NotVanishingError as err:
    print("no factor:", err, "witness", err.witness)

# %% complement factor: strip the indicator of x1 = 0 and drop x1
P = ReducedPoly.indicator(F3, 2, 0, 0) * parse_poly("x2 + 1", F3, 2)
Q = complement_factor(P, 0, 0)
print("P =", P, "\nQ =", Q, "(in one variable fewer)")
assert ReducedPoly.indicator(F3, 2, 0, 0) * insert_variable(Q, 0) == P

# %% random reconstructions over GF(5)
rng = np.random.default_rng(2)
F5 = GF(5)
for _ in range(300):
    R = ReducedPoly.random(F5, 2, rng, density=0.5)
    lin = ReducedPoly.linear(F5, 2, 1, 3)
    Q = divide_linear(lin * R, 1, 3)
    assert lin * Q == lin * R and Q.degree_in(1) <= (lin * R).degree_in(1) - 1
print("300 reconstructions over GF(5) ok")
