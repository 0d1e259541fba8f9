"""Sliding windows, PC1 trajectories, sign-flip detection and drift decomposition."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .core_linalg import (
    DEFAULT_MAX_ITERS,
    DEFAULT_TOL,
    FeatureMatrix,
    center_window,
    extract_pc1,
    normalize,
)
from .errors import DriftError, InvalidSpecError, TrajectoryTooShortError
from .metrics import StepDistances, cumulative_drift, step_distances

DEFAULT_WINDOW = 64
DEFAULT_STEP = 55
DEFAULT_EPSILON = 1e-12


@dataclass(frozen=True)
class WindowSpec:
    window_length: int = DEFAULT_WINDOW
    step: int = DEFAULT_STEP

    def __post_init__(self):
        if self.window_length < 2:
            raise InvalidSpecError("window length must be at least 2", window=self.window_length)
        if self.step < 1:
            raise InvalidSpecError("step must be at least 1", step=self.step)

    def check(self, n: int) -> None:
        if self.window_length > n:
            raise InvalidSpecError("window longer than data", window=self.window_length, rows=n)

    def count(self, n: int) -> int:
        self.check(n)
        return (n - self.window_length) // self.step + 1


@dataclass(frozen=True, eq=False)
class RepresentationTrajectory:
    """Ordered unit directions r_1..r_T, stored as a T x D array."""

    directions: np.ndarray
    window_starts: tuple[int, ...]
    spec: WindowSpec | None = None

    def __post_init__(self):
        d = np.array(self.directions, dtype=np.float64, copy=True)
        if d.ndim != 2:
            raise ValueError("directions must be a T x D array")
        if len(self.window_starts) != d.shape[0]:
            raise ValueError("one window start per direction required")
        d.setflags(write=False)
        object.__setattr__(self, "directions", d)
        object.__setattr__(self, "window_starts", tuple(int(s) for s in self.window_starts))

    def __len__(self) -> int:
        return self.directions.shape[0]

    @classmethod
    def from_vectors(cls, vectors, window_starts=None, spec=None) -> RepresentationTrajectory:
        """Normalize each row of ``vectors`` and wrap them as a trajectory."""
        vecs = np.asarray(vectors, dtype=np.float64)
        dirs = np.array([normalize(v) for v in vecs]).reshape(vecs.shape)
        if window_starts is None:
            window_starts = range(len(dirs))
        return cls(dirs, tuple(window_starts), spec)


@dataclass(frozen=True)
class StepRecord:
    index: int
    dot: float
    distances: StepDistances
    flip: bool


@dataclass(frozen=True, eq=False)
class DriftReport:
    steps: tuple[StepRecord, ...]
    cum_e: np.ndarray
    cum_c: np.ndarray
    cum_fs: np.ndarray
    gauge_diff: np.ndarray
    log_ratio: np.ndarray
    epsilon: float
    flip_count: int
    window_starts: tuple[int, ...] = ()

    @property
    def increment_differences(self) -> np.ndarray:
        """Per-step d_c - d_fs, the paired differences fed to the sign test."""
        return np.array([s.distances.d_c - s.distances.d_fs for s in self.steps])


def build_windows(x: FeatureMatrix, spec: WindowSpec) -> list[np.ndarray]:
    data = x.data if isinstance(x, FeatureMatrix) else np.asarray(x, dtype=np.float64)
    t = spec.count(data.shape[0])
    w = spec.window_length
    return [data[k * spec.step : k * spec.step + w] for k in range(t)]


def build_trajectory(
    x: FeatureMatrix,
    spec: WindowSpec,
    tol: float = DEFAULT_TOL,
    max_iters: int = DEFAULT_MAX_ITERS,
    workers: int = 1,
) -> RepresentationTrajectory:
    """PC1 of every window, with the raw window-local signs kept.

    Windows are independent, so ``workers > 1`` runs them on a thread pool;
    results are always assembled in window order.
    """
    windows = build_windows(x, spec)
    starts = [k * spec.step for k in range(len(windows))]

    def one(k: int) -> np.ndarray:
        try:
            cw = center_window(windows[k], origin_index=starts[k])
            return extract_pc1(cw, tol=tol, max_iters=max_iters).top_right_singular_vector
        except DriftError as exc:
            exc.details.setdefault("window", k + 1)
            raise

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            dirs = list(pool.map(one, range(len(windows))))
    else:
        dirs = [one(k) for k in range(len(windows))]
    return RepresentationTrajectory(np.array(dirs), tuple(starts), spec)


def compute_steps(traj: RepresentationTrajectory) -> list[StepRecord]:
    dirs = traj.directions
    if dirs.shape[0] < 2:
        raise TrajectoryTooShortError("need at least two directions", length=dirs.shape[0])
    steps = []
    for k in range(dirs.shape[0] - 1):
        sd = step_distances(dirs[k], dirs[k + 1])
        steps.append(StepRecord(index=k + 1, dot=sd.dot, distances=sd, flip=sd.dot < 0))
    return steps


def drift_report(steps, epsilon: float = DEFAULT_EPSILON, window_starts=()) -> DriftReport:
    """Cumulative drift under all three geometries plus the gauge decomposition.

    ``gauge_diff`` is accumulated from the per-step excess d_c - d_fs, which is
    exactly zero off flips and positive on them, so the series is nonnegative
    and nondecreasing in floating point as well; it agrees with
    ``cum_c - cum_fs`` to rounding.
    """
    if not epsilon > 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    steps = tuple(steps)
    d_e = [s.distances.d_e for s in steps]
    d_c = [s.distances.d_c for s in steps]
    d_fs = [s.distances.d_fs for s in steps]
    cum_e = cumulative_drift(d_e)
    cum_c = cumulative_drift(d_c)
    cum_fs = cumulative_drift(d_fs)
    gauge = cumulative_drift([c - f for c, f in zip(d_c, d_fs)])
    log_ratio = np.array([math.log10((e + epsilon) / (f + epsilon)) for e, f in zip(cum_e, cum_fs)])
    return DriftReport(
        steps=steps,
        cum_e=cum_e,
        cum_c=cum_c,
        cum_fs=cum_fs,
        gauge_diff=gauge,
        log_ratio=log_ratio,
        epsilon=float(epsilon),
        flip_count=sum(1 for s in steps if s.flip),
        window_starts=tuple(window_starts),
    )


def analyze_trajectory(traj: RepresentationTrajectory, epsilon: float = DEFAULT_EPSILON) -> DriftReport:
    return drift_report(compute_steps(traj), epsilon, window_starts=traj.window_starts[:-1])


def flip_excess(dot: float) -> float:
    """Extra cosine drift contributed by a flipped step: 2 arccos(c) - pi."""
    return 2.0 * math.acos(dot) - math.pi
