"""Brute-force lower and upper bounds on the joint spectral radius of a finite set.

The lower bound is ``max rho(product(w)) ** (1/|w|)`` over words of length at
most ``depth``; since the spectral radius of a product is invariant under
rotation of the word only Lyndon words need evaluating.  The upper bound is
``min_n max_{|w| = n} ||product(w)|| ** (1/n)``, valid for any
submultiplicative norm.  Neither side uses any rank-one structure, so the
pair of bounds checks the exact solver independently.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .matcore import DimensionMismatch, as_matrix

Word = tuple[int, ...]

DEFAULT_BUDGET = 2**22
NORMS = ("two", "frobenius")


class EnumerationBudgetExceeded(RuntimeError):
    pass


class ViolatedSandwich(AssertionError):
    def __init__(self, report):
        super().__init__(
            f"lower={report.lower!r} exact={report.exact!r} upper={report.upper!r}"
        )
        self.report = report


@dataclass(frozen=True)
class BoundsResult:
    lower: float
    upper: float
    depth: int
    argmax_word: Word
    norm_id: str | None = None


@dataclass(frozen=True)
class SandwichReport:
    lower: float
    exact: float
    upper: float
    depth: int
    passed: bool


def _as_set(mats) -> list[np.ndarray]:
    mats = [as_matrix(m, f"S{i + 1}") for i, m in enumerate(mats)]
    if not mats:
        raise ValueError("matrix set is empty")
    if any(m.shape != mats[0].shape for m in mats):
        raise DimensionMismatch("matrices in the set have different shapes")
    return mats


def is_lyndon(word) -> bool:
    """True if `word` is strictly smaller than all of its proper rotations."""
    n = len(word)
    w = tuple(word)
    return all(w < w[i:] + w[:i] for i in range(1, n))


def lyndon_words(n: int, k: int) -> list[Word]:
    """All Lyndon words of length ``<= n`` over ``{1..k}`` in lexicographic order.

    Duval's successor algorithm.
    """
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    out = []
    w = [0]
    while w:
        out.append(tuple(c + 1 for c in w))
        m = len(w)
        while len(w) < n:
            w.append(w[len(w) - m])
        while w and w[-1] == k - 1:
            w.pop()
        if w:
            w[-1] += 1
    return out


def _norm(p: np.ndarray, norm: str) -> float:
    if norm == "two":
        return float(np.linalg.norm(p, 2))
    if norm == "frobenius":
        return float(np.linalg.norm(p, "fro"))
    raise ValueError(f"unknown norm {norm!r}, expected one of {NORMS}")


def lower_bound(
    mats, depth: int, words: str = "lyndon", prune: bool = True, budget: int = DEFAULT_BUDGET
) -> BoundsResult:
    """Largest normalised spectral radius over words of length ``<= depth``.

    Depth-first over the word tree, letters in increasing order, so the first
    word reaching the maximum is the lexicographically smallest.  A branch is
    cut when ``(||prefix|| * M**j) ** (1/(n+j))``, with ``M`` the largest
    generator 2-norm, cannot beat the incumbent for any completion.
    With ``words="all"`` every word is evaluated (no cyclic reduction).
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if words not in ("lyndon", "all"):
        raise ValueError("words must be 'lyndon' or 'all'")
    mats = _as_set(mats)
    k = len(mats)
    log_big = math.log(max(_norm(m, "two") for m in mats) or 1e-300)
    best = [-1.0, ()]
    visited = [0]

    def visit(prefix: list[int], prod: np.ndarray):
        n = len(prefix)
        visited[0] += 1
        if visited[0] > budget:
            raise EnumerationBudgetExceeded(f"more than {budget} products at depth {depth}")
        if words == "all" or is_lyndon(prefix):
            val = float(np.max(np.abs(np.linalg.eigvals(prod)))) ** (1.0 / n)
            if val > best[0]:
                best[0], best[1] = val, tuple(c + 1 for c in prefix)
        if n == depth:
            return
        if prune and best[0] > 0:
            pn = _norm(prod, "two")
            if pn == 0.0:
                return
            lp = math.log(pn)
            opt = max((lp + j * log_big) / (n + j) for j in range(1, depth - n + 1))
            if opt < math.log(best[0]) - 1e-12:
                return
        for i in range(k):
            prefix.append(i)
            visit(prefix, prod @ mats[i])
            prefix.pop()

    for i in range(k):
        visit([i], mats[i])
    return BoundsResult(lower=best[0], upper=math.inf, depth=depth, argmax_word=best[1])


def upper_bound(
    mats, depth: int, norm: str = "two", budget: int = DEFAULT_BUDGET
) -> BoundsResult:
    """Norm-based upper bound, paired with the Lyndon lower bound at the same depth."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if norm not in NORMS:
        raise ValueError(f"unknown norm {norm!r}, expected one of {NORMS}")
    mats = _as_set(mats)
    k = len(mats)
    total = sum(k**n for n in range(1, depth + 1))
    if total > budget:
        raise EnumerationBudgetExceeded(f"{total} products exceeds budget {budget}")
    gens = np.stack(mats)
    level = gens
    upper = math.inf
    for n in range(1, depth + 1):
        if n > 1:
            # word order: level index = prefix index * k + last letter
            level = np.einsum("pij,kjl->pkil", level, gens).reshape(-1, *gens.shape[1:])
        if norm == "two":
            nrm = np.linalg.norm(level, 2, axis=(1, 2))
        else:
            nrm = np.linalg.norm(level, "fro", axis=(1, 2))
        upper = min(upper, float(nrm.max()) ** (1.0 / n))
    low = lower_bound(mats, depth, budget=budget)
    return BoundsResult(
        lower=low.lower, upper=upper, depth=depth, argmax_word=low.argmax_word, norm_id=norm
    )


def jsr_bounds(mats, depth: int, norm: str = "two", budget: int = DEFAULT_BUDGET) -> BoundsResult:
    return upper_bound(mats, depth, norm=norm, budget=budget)


def sandwich_check(mats, exact: float, depth: int, slack: float = 1e-9) -> SandwichReport:
    """Check ``lower <= exact <= upper``; raises :class:`ViolatedSandwich` otherwise."""
    res = upper_bound(mats, depth)
    ok = res.lower <= exact + slack and exact <= res.upper + slack
    report = SandwichReport(res.lower, exact, res.upper, depth, ok)
    if not ok:
        raise ViolatedSandwich(report)
    return report
