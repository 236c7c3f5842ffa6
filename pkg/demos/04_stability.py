"""Deciding stability of the switched system and measuring periodic growth.

Run:  python demos/04_stability.py
"""
import math

import numpy as np

from finitejsr import decide_stability, growth_exponent
from finitejsr import catalog

s1, s2 = catalog.example1()
rho = 4 ** 0.2
for c in np.linspace(0.9, 1.1, 5) / rho:
    v = decide_stability(c * s1, c * s2)
    print(f"c*rho = {c * rho:.3f}: {v.verdict.value:8s} rho = {v.rho:.6f} certified = {v.certified}")

# Periodic switching along the optimal word grows at log(rho) per step
word = (1, 1, 1, 1, 2)
for periods in (1, 10, 100, 1000):
    g = growth_exponent(s1, s2, word, periods)
    print(f"{periods:5d} periods: exponent {g:.6f}  (log rho = {math.log(rho):.6f})")

# Any other periodic word grows more slowly
for w in [(1, 2), (1, 1, 2), (1, 1, 1, 2, 2), (1,)]:
    print(w, round(growth_exponent(s1, s2, w, 500), 6))
