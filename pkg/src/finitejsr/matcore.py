"""Dense small-matrix linear algebra used by the solvers.

Matrices are plain ``numpy.ndarray`` objects of shape ``(d, d)`` and dtype
float64.  :func:`as_matrix` validates and freezes them; every other function
accepts anything array-like and validates on entry.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "MatrixError",
    "DimensionMismatch",
    "ConvergenceError",
    "RankTooHigh",
    "ZeroMatrix",
    "SingularTransform",
    "RankOneFactors",
    "as_matrix",
    "mat_mul",
    "mat_pow",
    "spectral_radius",
    "norm_root_estimate",
    "log_power_norms",
    "rank_one_factorize",
    "similarity_transform",
]

MAX_DIM = 64
DEFAULT_RANK_TOL = 1e-9
MAX_CONDITION = 1e12


class MatrixError(ValueError):
    """Base class for invalid matrix input."""


class DimensionMismatch(MatrixError):
    pass


class RankTooHigh(MatrixError):
    pass


class ZeroMatrix(MatrixError):
    pass


class SingularTransform(MatrixError):
    pass


class ConvergenceError(ArithmeticError):
    """The eigenvalue iteration did not converge."""


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    """Return a read-only float64 copy of `a` after checking it is square and finite."""
    m = np.array(a, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise DimensionMismatch(f"{name} must be a non-empty square matrix, got shape {m.shape}")
    if m.shape[0] > MAX_DIM:
        raise DimensionMismatch(f"{name} has dimension {m.shape[0]} > {MAX_DIM}")
    if not np.all(np.isfinite(m)):
        raise MatrixError(f"{name} has non-finite entries")
    m.setflags(write=False)
    return m


def mat_mul(a, b) -> np.ndarray:
    a = as_matrix(a, "A")
    b = as_matrix(b, "B")
    if a.shape != b.shape:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def mat_pow(a, k: int) -> np.ndarray:
    """A**k by binary exponentiation; ``A**0`` is the identity."""
    a = as_matrix(a)
    if k < 0:
        raise ValueError("exponent must be nonnegative")
    result = np.eye(a.shape[0])
    base = a
    while k:
        if k & 1:
            result = result @ base
        k >>= 1
        if k:
            base = base @ base
    return result


def spectral_radius(a) -> float:
    """Largest eigenvalue modulus of a real square matrix.

    Eigenvalues come from LAPACK's Hessenberg reduction followed by the
    shifted QR iteration (``numpy.linalg.eigvals``).
    """
    a = as_matrix(a)
    try:
        ev = np.linalg.eigvals(a)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(str(exc)) from exc
    return float(np.max(np.abs(ev)))


def _norm(a: np.ndarray, which: str = "two") -> float:
    if which == "two":
        return float(np.linalg.norm(a, 2))
    if which == "frobenius":
        return float(np.linalg.norm(a, "fro"))
    raise ValueError(f"unknown norm {which!r}")


def log_power_norms(a, k: int) -> np.ndarray:
    """``log ||A^s||_2`` for ``s = 0..k``, with the powers renormalised at each step.

    Entries are ``-inf`` once a power vanishes.
    """
    a = as_matrix(a)
    out = np.empty(k + 1)
    out[0] = 0.0
    p = np.eye(a.shape[0])
    logscale = 0.0
    for s in range(1, k + 1):
        p = p @ a
        nrm = _norm(p)
        if nrm == 0.0:
            out[s:] = -np.inf
            break
        logscale += math.log(nrm)
        p /= nrm
        out[s] = logscale
    return out


def norm_root_estimate(a, k: int) -> float:
    """Gelfand upper bound ``||A^k||_2 ** (1/k)`` on the spectral radius."""
    if k < 1:
        raise ValueError("k must be >= 1")
    a = as_matrix(a)
    # repeated squaring in log scale for the 2-power part, then the remainder
    logscale = 0.0
    result = np.eye(a.shape[0])
    res_log = 0.0
    base = a
    e = k
    while e:
        if e & 1:
            result = result @ base
            n = _norm(result)
            if n == 0.0:
                return 0.0
            result /= n
            res_log += math.log(n) + logscale
        e >>= 1
        if e:
            base = base @ base
            n = _norm(base)
            if n == 0.0:
                return 0.0
            base /= n
            logscale = 2.0 * logscale + math.log(n)
    # res_log accumulated the scale of each multiplied factor
    value = res_log / k
    if value > 709.0:
        raise OverflowError(f"||A^{k}||^(1/{k}) overflows double precision")
    return math.exp(value)


@dataclass(frozen=True)
class RankOneFactors:
    """Outer-product factorisation ``M ~= u v^T``.

    ``v`` has unit 2-norm and its first nonzero entry is positive.
    """

    u: np.ndarray
    v: np.ndarray
    residual: float

    @property
    def trace(self) -> float:
        """``v^T u``, the only possibly nonzero eigenvalue of ``u v^T``."""
        return float(self.v @ self.u)

    @property
    def rho(self) -> float:
        return abs(self.trace)

    def matrix(self) -> np.ndarray:
        return np.outer(self.u, self.v)


def rank_one_factorize(m, tol: float = DEFAULT_RANK_TOL) -> RankOneFactors:
    """Factor a (numerically) rank-one matrix as ``u v^T`` using the SVD.

    Raises :class:`ZeroMatrix` for ``M = 0`` and :class:`RankTooHigh` when the
    best rank-one approximation leaves a Frobenius residual above
    ``tol * ||M||_F``.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    m = as_matrix(m)
    fro = float(np.linalg.norm(m, "fro"))
    if fro == 0.0:
        raise ZeroMatrix("zero matrix has no rank-one factorization")
    U, s, Vt = np.linalg.svd(m)
    residual = float(np.sqrt(np.sum(s[1:] ** 2)))
    if residual > tol * fro:
        raise RankTooHigh(
            f"matrix is not rank one: sigma_2/sigma_1 = {s[1] / s[0]:.3g} (tol {tol:g})"
        )
    u = U[:, 0] * s[0]
    v = Vt[0].copy()
    nz = np.flatnonzero(np.abs(v) > 1e-14)
    if v[nz[0]] < 0:
        u, v = -u, -v
    # residual against the factors actually returned
    residual = float(np.linalg.norm(m - np.outer(u, v), "fro"))
    u.setflags(write=False)
    v.setflags(write=False)
    return RankOneFactors(u=u, v=v, residual=residual)


def similarity_transform(a, p) -> np.ndarray:
    """Return ``P A P^{-1}``."""
    a = as_matrix(a, "A")
    p = as_matrix(p, "P")
    if a.shape != p.shape:
        raise DimensionMismatch(f"A is {a.shape} but P is {p.shape}")
    if np.linalg.cond(p) > MAX_CONDITION:
        raise SingularTransform("transformation matrix is singular or ill-conditioned")
    pa = p @ a
    # X P = PA  <=>  P^T X^T = (PA)^T
    return np.linalg.solve(p.T, pa.T).T
