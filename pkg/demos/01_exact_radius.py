"""Exact generalized spectral radius of a pair with a rank-one member.

Run:  python demos/01_exact_radius.py
"""
import numpy as np

from finitejsr import RankOnePair, word_string
from finitejsr import catalog

# S2 = [[0, 1], [0, 0]] has rank one, so every product containing it
# collapses to a scalar times a fixed outer product.
s1, s2 = catalog.example1()
pair = RankOnePair(s1, s2)
print("u =", pair.factors.u, " v =", pair.factors.v, " rho(S2) =", pair.rho_b)

# The block values g(l) = |v^T S1^l u| grow linearly here
print("g(l), l = 0..8:", [round(pair.scalar_growth(l), 12) for l in range(9)])

# and the normalised block radii (g(l))**(1/(l+1)) peak at l = 4
for ell in range(1, 9):
    print(f"  l={ell}  candidate={pair.candidate_value(ell, 1):.10f}")

res = pair.solve_certified(tol=1e-9)
print("rho =", res.value, "=", 4 ** 0.2)
print("optimal word:", word_string(res.word), " certified:", res.certified)

# The same numbers from explicit matrix powers
print("matrix route:", pair.candidate_value_matrix_check(4, 1))

# The other worked examples
for name in ("example2", "example3"):
    r = RankOnePair(*getattr(catalog, name)()).solve_certified()
    print(f"{name}: rho = {r.value:.6f}, word {word_string(r.word)}")

# Roles are swapped automatically when only S1 has rank one
r = RankOnePair(s2, s1).solve_certified()
print("swapped input:", r.value, word_string(r.word))

# A zero partner leaves just the other matrix
print("zero S2:", RankOnePair(np.diag([2.0, -3.0]), np.zeros((2, 2))).solve_certified().witness)
