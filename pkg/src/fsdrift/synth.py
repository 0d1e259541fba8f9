"""Synthetic trajectories with a known rotation per step and injected sign flips.

Randomness comes from SplitMix64 (Steele, Lea & Flood 2014) feeding a
Box-Muller transform, both written out here so a given seed yields the same
trajectory on any platform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core_linalg import normalize
from .errors import IndexOutOfRangeError, InvalidAngleError, InvalidSpecError
from .trajectory import RepresentationTrajectory

RNG_NAME = "splitmix64+box-muller"

_MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def uniform(self) -> float:
        """Uniform double in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def normal(self) -> float:
        # one Box-Muller pair per call, the sine half is discarded for simplicity
        u1 = 1.0 - self.uniform()
        u2 = self.uniform()
        return math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)

    def normal_vector(self, d: int) -> np.ndarray:
        return np.array([self.normal() for _ in range(d)])


@dataclass(frozen=True)
class SynthSpec:
    dimension: int
    length: int
    step_angle: float
    flip_indices: frozenset[int] = field(default_factory=frozenset)
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "flip_indices", frozenset(int(i) for i in self.flip_indices))
        if not (0.0 <= self.step_angle < math.pi / 2):
            raise InvalidAngleError("step angle must lie in [0, pi/2)", angle=self.step_angle)
        if self.length < 2:
            raise InvalidSpecError("synthetic trajectory needs length >= 2", length=self.length)
        if self.dimension < 2:
            raise InvalidSpecError("rotation needs dimension >= 2", dimension=self.dimension)
        _check_indices(self.flip_indices, self.length)


def _check_indices(indices, length: int) -> None:
    bad = sorted(i for i in indices if not 1 <= i <= length)
    if bad:
        raise IndexOutOfRangeError("flip positions must lie in 1..T", positions=bad, length=length)


def _orthogonal_unit(rng: SplitMix64, r: np.ndarray) -> np.ndarray:
    while True:
        g = rng.normal_vector(r.size)
        # two Gram-Schmidt passes against r
        g -= r * g.dot(r)
        g -= r * g.dot(r)
        n = np.linalg.norm(g)
        if n > 1e-8:
            return g / n


def generate_smooth_trajectory(spec: SynthSpec) -> RepresentationTrajectory:
    """Random walk on the unit sphere turning by exactly ``step_angle`` per step.

    Each step rotates r_k toward a fresh random direction orthogonal to it.
    That direction is oriented to make a nonnegative angle with the current
    heading, so the walk never doubles back (in the plane it simply rotates
    at a constant rate, counter-clockwise).  No flips are applied here.
    """
    rng = SplitMix64(spec.seed)
    theta = spec.step_angle
    cos_t, sin_t = math.cos(theta), math.sin(theta)
    r = normalize(rng.normal_vector(spec.dimension))
    if theta == 0.0:
        return RepresentationTrajectory(np.tile(r, (spec.length, 1)), tuple(range(spec.length)))
    dirs = [r]
    heading = None
    for _ in range(spec.length - 1):
        u = _orthogonal_unit(rng, r)
        if heading is not None:
            if u.dot(heading) < 0:
                u = -u
        elif spec.dimension == 2 and r[0] * u[1] - r[1] * u[0] < 0:
            u = -u
        nxt = normalize(cos_t * r + sin_t * u)
        heading = -sin_t * r + cos_t * u
        r = nxt
        dirs.append(r)
    return RepresentationTrajectory(np.array(dirs), tuple(range(spec.length)))


def inject_flips(traj: RepresentationTrajectory, flip_indices) -> RepresentationTrajectory:
    """Negate the directions at the given 1-based positions."""
    idx = set(int(i) for i in flip_indices)
    _check_indices(idx, len(traj))
    dirs = np.array(traj.directions)
    for i in idx:
        dirs[i - 1] = -dirs[i - 1]
    return RepresentationTrajectory(dirs, traj.window_starts, traj.spec)


def synthesize(spec: SynthSpec) -> RepresentationTrajectory:
    return inject_flips(generate_smooth_trajectory(spec), spec.flip_indices)
