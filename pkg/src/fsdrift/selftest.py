"""Embedded invariant checks, run by ``fsdrift selftest``."""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import metrics
from .core_linalg import center_window, extract_pc1
from .stats import sign_test_pvalue_exact
from .synth import SynthSpec, generate_smooth_trajectory, inject_flips
from .trajectory import analyze_trajectory, flip_excess


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


def _random_pairs(rng, count, dims=(2, 8, 64)):
    for i in range(count):
        d = dims[i % len(dims)]
        yield rng.standard_normal(d), rng.standard_normal(d)


def check_gauge_identity(fs_distance, cos_distance, pairs) -> Check:
    worst = 0.0
    for u, v in pairs:
        dc = cos_distance(u, v)
        worst = max(worst, abs(fs_distance(u, v) - min(dc, math.pi - dc)))
    return Check("gauge identity d_fs = min(d_c, pi - d_c)", worst <= 1e-12, f"max error {worst:.3e}")


def check_sign_invariance(fs_distance, pairs) -> Check:
    bad = 0
    for u, v in pairs:
        base = fs_distance(u, v)
        if fs_distance(-u, v) != base or fs_distance(u, -v) != base:
            bad += 1
    return Check("d_fs sign invariance (exact)", bad == 0, f"{bad} violations")


def check_scale_invariance(fs_distance, cos_distance, pairs, rng) -> Check:
    worst_fs = worst_c = 0.0
    for u, v in pairs:
        lam = rng.uniform(-1e6, 1e6) or 1.0
        worst_fs = max(worst_fs, abs(fs_distance(lam * u, v) - fs_distance(u, v)))
        worst_c = max(worst_c, abs(cos_distance(abs(lam) * u, v) - cos_distance(u, v)))
    ok = worst_fs <= 1e-10 and worst_c <= 1e-10
    return Check("scale invariance", ok, f"fs {worst_fs:.3e}, cos {worst_c:.3e}")


def check_global_gauge(trials: int, rng) -> Check:
    bad = 0
    for seed in range(trials):
        spec = SynthSpec(dimension=int(rng.integers(2, 9)), length=int(rng.integers(3, 12)), step_angle=float(rng.uniform(0.05, 1.4)), seed=seed)
        clean = generate_smooth_trajectory(spec)
        flips = {i + 1 for i in range(spec.length) if rng.random() < 0.5}
        a = analyze_trajectory(clean)
        b = analyze_trajectory(inject_flips(clean, flips))
        if not np.array_equal(a.cum_fs, b.cum_fs):
            bad += 1
    return Check("cum_fs invariant under sign assignments (exact)", bad == 0, f"{bad}/{trials} mismatches")


def check_flip_excess(trials: int, rng) -> Check:
    worst = 0.0
    monotone = True
    for seed in range(trials):
        spec = SynthSpec(dimension=6, length=10, step_angle=float(rng.uniform(0.05, 1.4)), seed=1000 + seed)
        flips = {i + 1 for i in range(spec.length) if rng.random() < 0.3}
        rep = analyze_trajectory(inject_flips(generate_smooth_trajectory(spec), flips))
        predicted = sum(flip_excess(s.dot) for s in rep.steps if s.flip)
        worst = max(worst, abs((rep.cum_c[-1] - rep.cum_fs[-1]) - predicted))
        g = rep.gauge_diff
        monotone &= bool(np.all(g >= 0) and np.all(np.diff(g) >= 0))
    return Check("flip-excess decomposition", worst <= 1e-10 and monotone, f"max error {worst:.3e}, monotone={monotone}")


def check_coincidence(trials: int) -> Check:
    bad = 0
    for seed in range(trials):
        rep = analyze_trajectory(generate_smooth_trajectory(SynthSpec(dimension=5, length=8, step_angle=0.7, seed=seed)))
        if not np.array_equal(rep.cum_c, rep.cum_fs):
            bad += 1
    return Check("cum_c == cum_fs without flips (exact)", bad == 0, f"{bad}/{trials} mismatches")


def check_sign_test(max_n: int = 12) -> Check:
    bad = 0
    for n in range(1, max_n + 1):
        sums = [sum(p) for p in itertools.product((0, 1), repeat=n)]
        for k in range(n + 1):
            lower = sum(1 for s in sums if s <= k)
            upper = sum(1 for s in sums if s >= k)
            brute = min(Fraction(1), Fraction(2 * min(lower, upper), 2**n))
            if sign_test_pvalue_exact(k, n) != brute:
                bad += 1
    return Check("sign test matches 2^n enumeration", bad == 0, f"{bad} mismatches up to n={max_n}")


def check_pc1(trials: int, rng) -> Check:
    worst = 1.0
    for _ in range(trials):
        w, d = int(rng.integers(3, 21)), int(rng.integers(2, 9))
        rows = rng.standard_normal((w, d)) * rng.uniform(0.5, 3.0, size=d)
        cw = center_window(rows)
        v = extract_pc1(cw).top_right_singular_vector
        _, vecs = np.linalg.eigh(cw.rows.T @ cw.rows / w)
        worst = min(worst, abs(float(v @ vecs[:, -1])))
    return Check("PC1 agrees with dense eigensolver", worst > 1 - 1e-8, f"min |overlap| {worst:.12f}")


def run_selftest(fs_distance=None, cos_distance=None, seed: int = 20240601) -> list[Check]:
    fs_distance = fs_distance or metrics.fubini_study_distance
    cos_distance = cos_distance or metrics.cosine_distance
    rng = np.random.default_rng(seed)
    pairs = list(_random_pairs(rng, 3000))
    return [
        check_gauge_identity(fs_distance, cos_distance, pairs),
        check_sign_invariance(fs_distance, pairs),
        check_scale_invariance(fs_distance, cos_distance, pairs, rng),
        check_global_gauge(200, rng),
        check_flip_excess(100, rng),
        check_coincidence(50),
        check_sign_test(),
        check_pc1(50, rng),
    ]


def main(out=print) -> int:
    start = time.perf_counter()
    checks = run_selftest()
    for c in checks:
        out(f"{'PASS' if c.passed else 'FAIL'}  {c.name}: {c.detail}")
    passed = sum(c.passed for c in checks)
    out(f"{passed}/{len(checks)} checks passed in {time.perf_counter() - start:.2f} s")
    return 0 if passed == len(checks) else 1
