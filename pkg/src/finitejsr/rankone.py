"""Exact generalized spectral radius of a pair ``{S1, S2}`` with ``rank(S2) = 1``.

Write ``S2 = u v^T`` and ``r = |v^T u| = rho(S2)``.  Every product containing
``S2`` splits cyclically into blocks ``S1^l S2^m`` and

    rho(S1^l S2^m) = g(l) * r**(m - 1),    g(l) = |v^T S1^l u|,

so the radius of a long product is a product of block values and its
normalised root never beats the best single block.  Hence

    rho({S1, S2}) = max(rho(S1), rho(S2), max_{l, m} (g(l) r**(m-1))**(1/(l+m))).

For fixed ``l`` the exponent is a Moebius function of ``m``, so the block value
is bounded by ``max(candidate(l, 1), r)``; the search only scans ``m = 1``.
Termination of that scan is certified with ``g(l) <= |u| |v| ||S1^l||`` and a
Gelfand bound on ``||S1^l||``.
"""
from __future__ import annotations

import enum
import math
import threading
from dataclasses import dataclass

import numpy as np

from .matcore import (
    DEFAULT_RANK_TOL,
    DimensionMismatch,
    RankOneFactors,
    RankTooHigh,
    ZeroMatrix,
    as_matrix,
    log_power_norms,
    mat_pow,
    rank_one_factorize,
    spectral_radius,
)

__all__ = [
    "PowerPair",
    "Pure",
    "ExactJsrResult",
    "RankOnePair",
    "solve_bounded",
    "solve_certified",
    "optimal_word",
    "word_string",
]

# relative slack under which two candidate values count as tied
TIE_RTOL = 1e-12
MATRIX_CHECK_BUDGET = 200
MODAL_MAX_COND = 1e8
SNAP_ULPS = 8
RANK_ONE_SV_RATIO = 1e-10


@dataclass(frozen=True, order=True)
class PowerPair:
    """Exponents of the block ``A^ell B^m`` (A the iterated matrix, B the rank-one one)."""

    ell: int
    m: int

    def __post_init__(self):
        if self.ell < 0 or self.m < 1:
            raise ValueError(f"need ell >= 0 and m >= 1, got ({self.ell}, {self.m})")


class Pure(enum.Enum):
    """A single original matrix alone attains the radius."""

    S1 = 1
    S2 = 2

    def __repr__(self):
        return f"Pure{self.name}"


@dataclass(frozen=True)
class ExactJsrResult:
    value: float
    witness: PowerPair | Pure
    certified: bool
    explored_ell_max: int
    gap: float = 0.0
    # original letters of the iterated and the rank-one matrix
    letters: tuple[int, int] = (1, 2)
    diagnostic: str = ""

    @property
    def word(self) -> tuple[int, ...]:
        return optimal_word(self)


def optimal_word(res: ExactJsrResult, repeat: int = 1) -> tuple[int, ...]:
    """Letter sequence of the witness, repeated `repeat` times."""
    if repeat < 1:
        raise ValueError("repeat must be >= 1")
    w = res.witness
    if isinstance(w, Pure):
        base = (w.value,)
    else:
        a, b = res.letters
        base = (a,) * w.ell + (b,) * w.m
    return base * repeat


def word_string(word) -> str:
    """Run-length form, e.g. ``(1, 1, 1, 1, 2) -> "1^4 2^1"``."""
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        parts.append(f"{word[i]}^{j - i}")
        i = j
    return " ".join(parts)


class RankOnePair:
    """Solver for a pair of square matrices at least one of which has rank one.

    The rank-one matrix (``S2`` when both qualify) is factored once; the
    other one is the *iterated* matrix ``A`` and the factored one is ``B``.
    If ``S1`` is the only rank-one matrix the roles are swapped and
    ``letters`` records the original labels.  A zero partner is accepted and
    gives ``rho = rho(other)``.
    """

    def __init__(self, s1, s2, rank_tol: float = DEFAULT_RANK_TOL):
        self.s1 = as_matrix(s1, "S1")
        self.s2 = as_matrix(s2, "S2")
        if self.s1.shape != self.s2.shape:
            raise DimensionMismatch(f"S1 is {self.s1.shape} but S2 is {self.s2.shape}")
        self.rank_tol = rank_tol
        self.degenerate = False
        self.swapped = False
        self.factors: RankOneFactors | None = None
        try:
            self.factors = rank_one_factorize(self.s2, rank_tol)
        except ZeroMatrix:
            self._set_degenerate(zero_is_s2=True)
        except RankTooHigh:
            try:
                self.factors = rank_one_factorize(self.s1, rank_tol)
                self.swapped = True
            except ZeroMatrix:
                self._set_degenerate(zero_is_s2=False)
            except RankTooHigh:
                raise RankTooHigh("neither S1 nor S2 has rank one") from None
        if self.swapped:
            self.a, self.b = self.s2, self.s1
        elif not self.degenerate:
            self.a, self.b = self.s1, self.s2
        self.letters = (2, 1) if self.swapped else (1, 2)
        self.rho_a = spectral_radius(self.a)
        self.rho_b = 0.0
        if self.factors is not None:
            self._snap = SNAP_ULPS * self.a.shape[0] * np.finfo(float).eps * float(
                np.linalg.norm(self.factors.u))
            self.rho_b = self.factors.rho
            if self.rho_b <= self._snap:
                self.rho_b = 0.0
        self._lock = threading.Lock()
        self._log_g: list[float] = []
        if self.factors is not None:
            self._w = self.factors.v.copy()
            self._w_log = 0.0

    def _set_degenerate(self, zero_is_s2: bool):
        other = self.s1 if zero_is_s2 else self.s2
        if not np.any(other):
            raise RankTooHigh("both matrices are zero; no rank-one factorization exists")
        self.degenerate = True
        self.swapped = not zero_is_s2
        self.a, self.b = (self.s1, self.s2) if zero_is_s2 else (self.s2, self.s1)

    # -- block values -------------------------------------------------------

    def _extend(self, ell: int):
        u = self.factors.u
        with self._lock:
            while len(self._log_g) <= ell:
                if self._log_g:
                    w = self._w @ self.a
                    nrm = float(np.linalg.norm(w))
                    if nrm == 0.0:
                        self._w = w
                        self._w_log = -math.inf
                    else:
                        self._w = w / nrm
                        self._w_log += math.log(nrm)
                t = abs(float(self._w @ u))
                # below the rounding level of the inner product: treat as exact cancellation
                if t <= self._snap * float(np.linalg.norm(self._w)):
                    t = 0.0
                self._log_g.append(math.log(t) + self._w_log if t > 0 else -math.inf)

    def log_scalar_growth(self, ell: int) -> float:
        """``log g(ell)`` (``-inf`` when ``g(ell) = 0``)."""
        if ell < 0:
            raise ValueError("ell must be >= 0")
        if self.factors is None:
            return -math.inf
        if ell >= len(self._log_g):
            self._extend(ell)
        return self._log_g[ell]

    def scalar_growth(self, ell: int) -> float:
        """``g(ell) = |v^T A^ell u|`` by memoised vector iteration."""
        lg = self.log_scalar_growth(ell)
        if lg == -math.inf:
            return 0.0
        return math.exp(lg) if lg < 709.0 else math.inf

    def _log_candidate(self, ell: int, m: int) -> float:
        lg = self.log_scalar_growth(ell)
        if lg == -math.inf:
            return -math.inf
        if m > 1:
            if self.rho_b == 0.0:
                return -math.inf
            lg += (m - 1) * math.log(self.rho_b)
        return lg / (ell + m)

    def candidate_value(self, ell, m: int | None = None) -> float:
        """``rho(A^ell B^m) ** (1/(ell+m))`` from the scalar formula."""
        ell, m = _unpack(ell, m)
        return math.exp(self._log_candidate(ell, m))

    def candidate_value_matrix_check(self, ell, m: int | None = None) -> float:
        """Same quantity as :meth:`candidate_value` from explicit matrix powers."""
        ell, m = _unpack(ell, m)
        if ell + m > MATRIX_CHECK_BUDGET:
            raise ValueError(f"ell + m = {ell + m} exceeds budget {MATRIX_CHECK_BUDGET}")
        with np.errstate(over="raise", invalid="raise"):
            try:
                prod = mat_pow(self.a, ell) @ mat_pow(self.b, m)
            except FloatingPointError as exc:
                raise OverflowError(f"A^{ell} B^{m} overflows") from exc
        if not np.all(np.isfinite(prod)):
            raise OverflowError(f"A^{ell} B^{m} overflows")
        sv = np.linalg.svd(prod, compute_uv=False)
        if sv[0] == 0.0:
            return 0.0
        if len(sv) > 1 and sv[1] <= RANK_ONE_SV_RATIO * sv[0]:
            # rank <= 1: the only nonzero eigenvalue is the trace, and eigvals
            # loses half the digits when that trace is near zero
            rho = abs(float(np.trace(prod)))
            if rho <= SNAP_ULPS * prod.shape[0] * np.finfo(float).eps * sv[0]:
                rho = 0.0
        else:
            rho = spectral_radius(prod)
        return rho ** (1.0 / (ell + m))

    def _modal_data(self):
        # |v^T X e_i| |e_i^T X^-1 u| and |lambda_i| for diagonalizable A; None if too ill-conditioned
        if not hasattr(self, "_modal"):
            self._modal = None
            lam, X = np.linalg.eig(self.a)
            cond = np.linalg.cond(X)
            if np.isfinite(cond) and cond < MODAL_MAX_COND:
                coef = np.abs((self.factors.v @ X) * np.linalg.solve(X, self.factors.u))
                slack = 1.0 + 64 * np.finfo(float).eps * cond
                self._modal = (coef * slack, np.abs(lam) * slack)
        return self._modal

    def _modal_closed(self, scanned: int, bound: float) -> bool:
        """Tail test from ``g(l) <= sum_i |c_i| |lambda_i|^l``.

        Dividing by ``bound**(l+1)`` gives a sum that is nonincreasing in ``l``
        once every ``|lambda_i| <= bound``, so checking ``l = scanned + 1`` suffices.
        """
        modal = self._modal_data()
        if modal is None or bound <= 0:
            return False
        coef, lam = modal
        if np.any(lam > bound):
            return False
        ell = scanned + 1
        with np.errstate(divide="ignore"):
            terms = coef * np.exp(ell * (np.log(lam) - math.log(bound)))
        return float(np.sum(terms)) <= bound

    # -- solvers ------------------------------------------------------------

    def _pure_start(self):
        """Best of the two single-matrix words, ties toward the rank-one one."""
        pure_a = Pure(self.letters[0])
        pure_b = Pure(self.letters[1])
        if self.rho_a > self.rho_b * (1 + TIE_RTOL):
            return self.rho_a, pure_a
        return self.rho_b, pure_b

    def _degenerate_result(self, certified: bool) -> ExactJsrResult:
        return ExactJsrResult(
            value=self.rho_a,
            witness=Pure(self.letters[0]),
            certified=certified,
            explored_ell_max=0,
            letters=self.letters,
        )

    def solve_bounded(self, ell_max: int, m_max: int) -> ExactJsrResult:
        """Best block value over the window ``0 <= ell <= ell_max, 1 <= m <= m_max``.

        Every word in the window contains the rank-one matrix; the ``ell = 0``
        row is its pure power.  The pure power of the iterated matrix lies
        outside the window, so the window maximum can undershoot the radius.
        Result is never certified.
        """
        if ell_max < 0 or m_max < 1:
            raise ValueError("need ell_max >= 0 and m_max >= 1")
        if self.degenerate:
            return self._degenerate_result(False)
        log_g = np.array([self.log_scalar_growth(l) for l in range(ell_max + 1)])
        ells = np.arange(ell_max + 1)[:, None]
        ms = np.arange(1, m_max + 1)[None, :]
        with np.errstate(divide="ignore", invalid="ignore"):
            log_r = math.log(self.rho_b) if self.rho_b > 0 else -math.inf
            tail = np.where(ms > 1, (ms - 1) * log_r, 0.0)
            vals = np.exp((log_g[:, None] + tail) / (ells + ms))
        vals = np.nan_to_num(vals, nan=0.0)
        # ell = 0 is B^m, whose radius root is rho(B) for every m
        vals[0, :] = self.rho_b
        best = vals.max()
        cand = np.argwhere(vals >= best * (1 - TIE_RTOL))
        ell, mi = min(cand.tolist(), key=lambda lm: (lm[0] + lm[1] + 1, lm[0]))
        witness = Pure(self.letters[1]) if ell == 0 else PowerPair(ell, mi + 1)
        return ExactJsrResult(
            value=float(vals[ell, mi]),
            witness=witness,
            certified=False,
            explored_ell_max=ell_max,
            letters=self.letters,
        )

    def solve_certified(self, tol: float = 1e-9, ell_budget: int = 20000) -> ExactJsrResult:
        """Scan ``(ell, 1)`` blocks until the tail provably stays below ``value*(1+tol)``.

        At ``ell = 1, 2, 4, ...`` the Gelfand estimate ``beta_k = ||A^k||^(1/k)``
        (``k`` a power of two) gives ``||A^ell|| <= C_k beta_k^ell`` with
        ``C_k = max_{s<k} ||A^s|| / beta_k^s``, hence
        ``candidate(ell, 1) <= (|u| |v| C_k beta_k^ell) ** (1/(ell+1))``.
        Once that bound is below ``value*(1+tol)`` for every unscanned ``ell``
        the result is certified.  Exhausting `ell_budget` returns the best
        value found with ``certified=False``.
        """
        if not tol > 0:
            raise ValueError("tol must be positive")
        if self.degenerate:
            return self._degenerate_result(True)
        alpha, witness = self._pure_start()
        log_uv = math.log(float(np.linalg.norm(self.factors.u)))
        table = log_power_norms(self.a, 1)
        ell = 0
        checkpoint = 1
        while True:
            ell += 1
            if ell > ell_budget:
                return ExactJsrResult(
                    value=alpha,
                    witness=witness,
                    certified=False,
                    explored_ell_max=ell_budget,
                    letters=self.letters,
                    diagnostic=f"budget of {ell_budget} exhausted before the tail bound closed",
                )
            val = math.exp(self._log_candidate(ell, 1))
            if val > alpha * (1 + TIE_RTOL):
                alpha, witness = val, PowerPair(ell, 1)
            if ell == checkpoint or ell == ell_budget:
                if ell == checkpoint:
                    checkpoint *= 2
                if len(table) <= ell:
                    table = log_power_norms(self.a, ell)
                bound = alpha * (1 + tol)
                if _tail_closed(table, ell, bound, log_uv) or self._modal_closed(ell, bound):
                    return ExactJsrResult(
                        value=alpha,
                        witness=witness,
                        certified=True,
                        explored_ell_max=ell,
                        gap=tol,
                        letters=self.letters,
                    )


def _tail_closed(table: np.ndarray, scanned: int, bound: float, log_uv: float) -> bool:
    """True if every ``ell > scanned`` has ``candidate(ell, 1) <= bound``.

    ``table[s] = log ||A^s||``; only power-of-two ``k <= len(table) - 1`` are tried.
    """
    log_a = math.log(bound) if bound > 0 else -math.inf
    k = 1
    while k < len(table):
        if table[k] == -math.inf:
            # A^k = 0, so g(ell) = 0 for ell >= k
            if scanned + 1 >= k:
                return True
        elif log_a > -math.inf:
            log_beta = table[k] / k
            if log_beta < log_a:
                s = np.arange(k)
                log_c = float(np.max(table[:k] - s * log_beta))
                log_k = log_uv + log_c
                frontier = (log_k - log_a) / (log_a - log_beta)
                if scanned + 1 >= frontier:
                    return True
        k *= 2
    return False


def _unpack(ell, m):
    if isinstance(ell, PowerPair):
        return ell.ell, ell.m
    pp = PowerPair(int(ell), int(m))
    return pp.ell, pp.m


def solve_bounded(s1, s2, ell_max: int, m_max: int, **kw) -> ExactJsrResult:
    return RankOnePair(s1, s2, **kw).solve_bounded(ell_max, m_max)


def solve_certified(s1, s2, tol: float = 1e-9, ell_budget: int = 20000, **kw) -> ExactJsrResult:
    return RankOnePair(s1, s2, **kw).solve_certified(tol, ell_budget)
