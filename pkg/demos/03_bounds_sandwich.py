"""Brute-force bounds from word enumeration bracket the exact value.

Run:  python demos/03_bounds_sandwich.py
"""
import numpy as np

from finitejsr import RankOnePair, lower_bound, lyndon_words, sandwich_check, upper_bound
from finitejsr import catalog

print("Lyndon words of length <= 4 over {1, 2}:", lyndon_words(4, 2))

mats = list(catalog.example1())
exact = RankOnePair(*mats).solve_certified().value
for depth in (2, 4, 6, 8, 10):
    b = upper_bound(mats, depth)
    print(f"depth {depth:2d}: {b.lower:.8f} <= {exact:.8f} <= {b.upper:.8f}   argmax {b.argmax_word}")

# The lower bound needs depth 11 to see the optimum of example 3
mats3 = list(catalog.example3())
print("example 3, depth 6 :", lower_bound(mats3, 6).lower)
print("example 3, depth 11:", lower_bound(mats3, 11).lower, "vs", 4 ** (1 / 11))

# A random rank-one pair
rng = np.random.default_rng(0)
s1 = rng.uniform(-2, 2, (3, 3))
s2 = np.outer(rng.uniform(-2, 2, 3), rng.uniform(-2, 2, 3))
rep = sandwich_check([s1, s2], RankOnePair(s1, s2).solve_certified().value, depth=8)
print("random pair:", rep)
