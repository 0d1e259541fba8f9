"""Dense linear algebra: normalization, window centering and PC1 extraction.

PC1 is found by power iteration on the window covariance, started from the
normalized all-ones vector (falling back to e_1, e_2, ... only when that
start is orthogonal to the leading eigenvector).  Because the covariance is
positive semidefinite, the converged vector keeps the sign of its overlap
with the start vector, so the reported orientation is a deterministic function of
the window alone and is never aligned with neighbouring windows.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    NoConvergenceError,
    NonFiniteDataError,
    WindowTooSmallError,
    ZeroVarianceWindowError,
    ZeroVectorError,
)

SIGN_CONVENTION = "power-iteration/start=ones-normalized/fallback=e1..eD"

DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITERS = 10_000

_ZERO_NORM = 1e-300
_ZERO_ENTRY = 1e-12
_COLLAPSE = 1e-12
# relative eigenvalue separation below which the leading direction is ambiguous
_DEGENERATE_GAP = 1e-9


def _first_nonfinite(a: np.ndarray) -> tuple[int, ...] | None:
    bad = np.argwhere(~np.isfinite(a))
    if bad.size == 0:
        return None
    return tuple(int(i) for i in bad[0])


@dataclass(frozen=True, eq=False)
class FeatureMatrix:
    """N x D observations, rows are samples.  Stored as a read-only float64 copy."""

    data: np.ndarray

    def __post_init__(self):
        a = np.array(self.data, dtype=np.float64, copy=True)
        if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
            raise ValueError(f"feature matrix must be 2-D and non-empty, got shape {a.shape}")
        loc = _first_nonfinite(a)
        if loc is not None:
            raise NonFiniteDataError("non-finite entry", row=loc[0], col=loc[1])
        a.setflags(write=False)
        object.__setattr__(self, "data", a)

    @property
    def n(self) -> int:
        return self.data.shape[0]

    @property
    def d(self) -> int:
        return self.data.shape[1]


@dataclass(frozen=True, eq=False)
class CenteredWindow:
    rows: np.ndarray
    mean: np.ndarray
    origin_index: int = 0


@dataclass(frozen=True, eq=False)
class SvdFactors:
    """Leading right-singular vector and singular value of a centered window."""

    top_right_singular_vector: np.ndarray
    top_singular_value: float
    iterations: int = 0
    diagnostics: dict = field(default_factory=dict)


def normalize(v) -> np.ndarray:
    v = np.asarray(v, dtype=np.float64)
    n = float(np.linalg.norm(v))
    if not n >= _ZERO_NORM:
        raise ZeroVectorError("vector norm is zero", norm=n)
    return v / n


def center_window(w, origin_index: int = 0) -> CenteredWindow:
    """Subtract the column means of a W x D slice (W >= 2)."""
    w = np.asarray(w, dtype=np.float64)
    if w.ndim != 2 or w.shape[0] < 2:
        raise WindowTooSmallError("centering needs at least two rows", rows=w.shape[0] if w.ndim else 0)
    mean = w.mean(axis=0)
    return CenteredWindow(rows=w - mean, mean=mean, origin_index=origin_index)


def _second_eigenvalue_estimate(cov: np.ndarray, v: np.ndarray, lam1: float, iters: int = 200) -> float:
    """Lower bound on the largest eigenvalue of C restricted to v's complement.

    Power iteration on the deflated matrix from a fixed-seed Gaussian start,
    which is generic with respect to any structured (sparse, constant) data.
    """
    d = cov.shape[0]
    if d == 1:
        return 0.0
    deflated = cov - lam1 * np.outer(v, v)
    x = np.random.default_rng(0x5EED).standard_normal(d)
    x -= v * x.dot(v)
    x /= np.linalg.norm(x)
    for _ in range(iters):
        y = deflated @ x
        y -= v * y.dot(v)
        ny = np.linalg.norm(y)
        if ny == 0.0:
            return 0.0
        x = y / ny
    return float(x @ deflated @ x)


def _power_iterate(cov: np.ndarray, x: np.ndarray, tol: float, max_iters: int, collapse: float):
    """Returns (vector, iterations, last_step, status) with status in {"ok", "collapsed", "stalled"}."""
    delta = np.inf
    for it in range(1, max_iters + 1):
        y = cov @ x
        ny = float(np.linalg.norm(y))
        if ny < collapse:
            return x, it, delta, "collapsed"
        y /= ny
        delta = float(np.linalg.norm(y - x))
        x = y
        if delta < tol:
            return x, it, delta, "ok"
    return x, max_iters, delta, "stalled"


def _starts(d: int):
    yield np.full(d, 1.0 / np.sqrt(d))
    for j in range(d):
        e = np.zeros(d)
        e[j] = 1.0
        yield e


def extract_pc1(cw: CenteredWindow, tol: float = DEFAULT_TOL, max_iters: int = DEFAULT_MAX_ITERS) -> SvdFactors:
    """Leading principal direction of a centered window by power iteration.

    Iterates x <- C x / |C x| on the covariance C = rows^T rows / W, starting
    from ones/sqrt(D), until successive iterates differ by less than ``tol``.
    If that start has no component along the leading eigenvector (the
    iterate collapses, or a deflation check finds a larger eigenvalue left
    over) the next start e_1, e_2, ... is tried.

    Raises ZeroVarianceWindowError for an all-zero window and
    NoConvergenceError when the iteration stalls or the top eigenvalue is
    (numerically) repeated, in which case no unique direction exists.
    """
    rows = np.asarray(cw.rows, dtype=np.float64)
    if not np.any(np.abs(rows) >= _ZERO_ENTRY):
        raise ZeroVarianceWindowError("all centered entries vanish", origin=cw.origin_index)
    w, d = rows.shape
    cov = rows.T @ rows / w
    collapse = _COLLAPSE * float(np.trace(cov))
    total_iters = 0
    diag: dict = {}
    for attempt, x0 in enumerate(_starts(d)):
        x, it, delta, status = _power_iterate(cov, x0, tol, max_iters, collapse)
        total_iters += it
        if status == "collapsed":
            continue
        lam1 = float(x @ cov @ x)
        lam2 = _second_eigenvalue_estimate(cov, x, lam1)
        diag = {
            "start": attempt,
            "iterations": it,
            "last_step": delta,
            "lambda1": lam1,
            "lambda2_lower_bound": lam2,
            "gap_ratio": lam2 / lam1 if lam1 > 0 else float("nan"),
        }
        if status == "stalled":
            raise NoConvergenceError("power iteration did not converge", origin=cw.origin_index, **diag)
        if lam2 > lam1 * (1 + _DEGENERATE_GAP):
            # converged to a lower eigenvector: the start missed the top one
            continue
        if lam1 <= 0 or lam1 - lam2 <= _DEGENERATE_GAP * lam1:
            raise NoConvergenceError("leading eigenvalue is degenerate", origin=cw.origin_index, **diag)
        return SvdFactors(
            top_right_singular_vector=x,
            top_singular_value=float(np.sqrt(lam1 * w)),
            iterations=total_iters,
            diagnostics=diag,
        )
    raise NoConvergenceError("no start vector reached the leading direction", origin=cw.origin_index, **diag)
