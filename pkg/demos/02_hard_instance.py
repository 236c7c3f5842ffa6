"""A pair whose optimal word is longer than any fixed search window.

With S1 = [[1, eps], [0, 1]], S2 = [[1, -1], [1, -1]] and eps = 1/(L+1),
no word of length <= L attains the radius.

Run:  python demos/02_hard_instance.py
"""
from finitejsr import RankOnePair, word_string
from finitejsr import catalog

for L in (5, 10, 20, 40):
    pair = RankOnePair(*catalog.example5(1.0 / (L + 1)))
    window = pair.solve_bounded(ell_max=L, m_max=1)
    full = pair.solve_certified(tol=1e-9)
    print(f"L={L:3d}  best in window={window.value:.6f}  "
          f"radius={full.value:.6f}  optimal word {word_string(full.word)}  "
          f"scanned up to l={full.explored_ell_max}")

# The 4x4 version: the optimal exponent grows quickly as eps shrinks
for eps in (0.2, 0.1, 0.05, 0.02):
    res = RankOnePair(*catalog.example4(eps)).solve_certified()
    print(f"eps={eps:<5}  l_eps={res.witness.ell:4d}  rho={res.value:.8f}")
