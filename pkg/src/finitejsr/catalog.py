"""Worked example pairs with known generalized spectral radius.

Each function returns ``(S1, S2)`` with ``S2`` of rank one.
"""
import math

import numpy as np

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)


def example1():
    """rho = 4**(1/5), attained by S1^4 S2."""
    return np.array([[1.0, 0.0], [1.0, 1.0]]), np.array([[0.0, 1.0], [0.0, 0.0]])


def example2():
    """rho = (5/sqrt2 + sqrt3/2 - 1)**(1/6), attained by S1^5 S2."""
    s1 = np.array([[1.0, 1.0 / SQRT2], [0.0, 1.0]])
    s2 = np.array([[1.0, SQRT3 / 2.0], [-1.0, -SQRT3 / 2.0]])
    return s1, s2


def example3():
    """rho = 4**(1/11), attained by S1^10 S2."""
    s1 = np.array([[1.0, 1.0 / SQRT2], [0.0, 1.0]])
    s2 = np.array([[0.0, 0.0], [-1.0 / SQRT2, 1.0]])
    return s1, s2


def example4(eps: float):
    """4x4 pair whose optimal S1 exponent grows quickly as eps -> 0."""
    s1 = np.eye(4) + eps * np.eye(4, k=1)
    s2 = np.tile([1.0, -1.0, 0.0, 1.0], (4, 1))
    return s1, s2


def example5(eps: float):
    """2x2 pair; with eps = 1/(L+1) no word of length <= L is optimal."""
    s1 = np.array([[1.0, eps], [0.0, 1.0]])
    s2 = np.array([[1.0, -1.0], [1.0, -1.0]])
    return s1, s2


def example2_exact() -> float:
    return (5.0 / SQRT2 + SQRT3 / 2.0 - 1.0) ** (1.0 / 6.0)


def example4_growth(ell: int, eps: float) -> float:
    """Closed form of rho(S1^ell S2) for :func:`example4`."""
    return (ell - 2) * (ell - 1) * ell * eps**3 / 6.0 + 1.0
