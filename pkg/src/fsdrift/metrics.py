"""Pairwise distances between representations and their cumulative drift."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, NegativeIncrementError, ZeroVectorError

_ZERO_NORM = 1e-300


@dataclass(frozen=True)
class StepDistances:
    d_e: float
    d_c: float
    d_fs: float
    dot: float


def _check_dims(u: np.ndarray, v: np.ndarray) -> None:
    if u.shape != v.shape:
        raise DimensionMismatchError("vectors differ in shape", left=u.shape, right=v.shape)


def clipped_dot(u, v) -> float:
    """Inner product of the normalized vectors, clamped to [-1, 1]."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    _check_dims(u, v)
    nu = math.sqrt(float(u @ u))
    nv = math.sqrt(float(v @ v))
    if not (nu >= _ZERO_NORM and nv >= _ZERO_NORM):
        raise ZeroVectorError("vector norm is zero", left=nu, right=nv)
    c = float((u / nu) @ (v / nv))
    return min(1.0, max(-1.0, c))


def euclidean_distance(u, v) -> float:
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    _check_dims(u, v)
    w = v - u
    return math.sqrt(float(w @ w))


def cosine_from_dot(c: float) -> float:
    return math.acos(min(1.0, max(-1.0, c)))


def fubini_study_from_dot(c: float) -> float:
    return math.acos(min(1.0, abs(c)))


def cosine_distance(u, v) -> float:
    """Angle between u and v in [0, pi]; blind to positive rescaling only."""
    return cosine_from_dot(clipped_dot(u, v))


def fubini_study_distance(u, v) -> float:
    """Angle between the lines through u and v, in [0, pi/2].

    Identifies u with any nonzero multiple of itself, so a sign flip of either
    argument leaves the value unchanged bit for bit.
    """
    return fubini_study_from_dot(clipped_dot(u, v))


def step_distances(u, v) -> StepDistances:
    c = clipped_dot(u, v)
    return StepDistances(
        d_e=euclidean_distance(u, v),
        d_c=cosine_from_dot(c),
        d_fs=fubini_study_from_dot(c),
        dot=c,
    )


def cumulative_drift(step_values) -> np.ndarray:
    """Running sum of nonnegative step distances, summed left to right."""
    vals = np.asarray(step_values, dtype=np.float64).reshape(-1)
    if vals.size and not np.all(vals >= 0):
        bad = int(np.argmax(~(vals >= 0)))
        raise NegativeIncrementError("negative or NaN increment", index=bad, value=float(vals[bad]))
    out = np.empty_like(vals)
    total = 0.0
    for i, x in enumerate(vals):
        total += x
        out[i] = total
    return out


def rowwise_clipped_dots(U, V) -> np.ndarray:
    """``clipped_dot`` applied to matching rows of two (M, D) arrays."""
    U = np.asarray(U, dtype=np.float64)
    V = np.asarray(V, dtype=np.float64)
    _check_dims(U, V)
    nu = np.sqrt(np.einsum("ij,ij->i", U, U))
    nv = np.sqrt(np.einsum("ij,ij->i", V, V))
    if not (np.all(nu >= _ZERO_NORM) and np.all(nv >= _ZERO_NORM)):
        raise ZeroVectorError("zero row", row=int(np.argmin(np.minimum(nu, nv))))
    c = np.einsum("ij,ij->i", U / nu[:, None], V / nv[:, None])
    return np.clip(c, -1.0, 1.0)


def cosine_distances(U, V) -> np.ndarray:
    return np.arccos(rowwise_clipped_dots(U, V))


def fubini_study_distances(U, V) -> np.ndarray:
    return np.arccos(np.minimum(1.0, np.abs(rowwise_clipped_dots(U, V))))
