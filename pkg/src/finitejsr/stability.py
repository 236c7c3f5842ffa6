"""Stability of the switched system ``x_{n+1} = x_n S_{i_n}`` for a rank-one pair."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .matcore import DimensionMismatch, as_matrix
from .rankone import ExactJsrResult, RankOnePair

CERTIFIED_TOL = 1e-9
BOUNDED_TOL = 1e-6


class Verdict(enum.Enum):
    STABLE = "Stable"
    UNSTABLE = "Unstable"
    MARGINAL = "Marginal"


@dataclass(frozen=True)
class StabilityVerdict:
    verdict: Verdict
    rho: float
    tol: float
    certified: bool
    certificate: ExactJsrResult


def classify(rho: float, tol: float) -> Verdict:
    if rho < 1 - tol:
        return Verdict.STABLE
    if rho > 1 + tol:
        return Verdict.UNSTABLE
    return Verdict.MARGINAL


def decide_stability(s1, s2, tol: float | None = None, ell_budget: int = 20000) -> StabilityVerdict:
    """Classify absolute exponential stability by comparing the radius with 1.

    `tol` is the half-width of the Marginal band; by default 1e-9 when the
    radius is certified and 1e-6 when the search ran out of budget.
    Raises :class:`~finitejsr.matcore.RankTooHigh` if neither matrix has rank one.
    """
    pair = RankOnePair(s1, s2)
    res = pair.solve_certified(CERTIFIED_TOL if tol is None else tol, ell_budget)
    if tol is None:
        tol = CERTIFIED_TOL if res.certified else BOUNDED_TOL
    return StabilityVerdict(classify(res.value, tol), res.value, tol, res.certified, res)


def growth_exponent(s1, s2, base_word, n_periods: int, norm: str = "two") -> float:
    """``(1/N) log ||product of base_word repeated n_periods times||``.

    The running product is rescaled to unit norm after every period.
    Returns ``-inf`` if the product vanishes.
    """
    if n_periods < 1:
        raise ValueError("n_periods must be >= 1")
    base_word = tuple(base_word)
    if not base_word:
        raise ValueError("base_word must be nonempty")
    mats = {1: as_matrix(s1, "S1"), 2: as_matrix(s2, "S2")}
    if mats[1].shape != mats[2].shape:
        raise DimensionMismatch("S1 and S2 have different shapes")
    if any(c not in mats for c in base_word):
        raise ValueError("letters must be 1 or 2")
    ord_ = 2 if norm == "two" else "fro"
    p = np.eye(mats[1].shape[0])
    log_total = 0.0
    for _ in range(n_periods):
        for c in base_word:
            p = p @ mats[c]
        nrm = float(np.linalg.norm(p, ord_))
        if nrm == 0.0:
            return -math.inf
        log_total += math.log(nrm)
        p /= nrm
    return log_total / (n_periods * len(base_word))
