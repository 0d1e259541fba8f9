import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from fsdrift.errors import DimensionMismatchError, NegativeIncrementError, ZeroVectorError
from fsdrift.metrics import (
    clipped_dot,
    cosine_distance,
    cosine_distances,
    cumulative_drift,
    euclidean_distance,
    fubini_study_distance,
    fubini_study_distances,
    step_distances,
)

E1, E2 = np.array([1.0, 0.0]), np.array([0.0, 1.0])


def test_euclidean_examples():
    assert euclidean_distance(E1, E1) == 0.0
    assert euclidean_distance([0.0, 0.0], [3.0, 4.0]) == 5.0
    assert euclidean_distance(E1, E2) == pytest.approx(1.4142135624, abs=1e-10)
    with pytest.raises(DimensionMismatchError):
        euclidean_distance([1.0], [1.0, 2.0])


def test_cosine_examples():
    assert cosine_distance(E1, E1) == 0.0
    assert cosine_distance(E1, -E1) == math.pi
    assert cosine_distance(E1, [1.0, 1.0]) == pytest.approx(0.7853981634, abs=1e-10)
    with pytest.raises(ZeroVectorError):
        cosine_distance(E1, [0.0, 0.0])


def test_fubini_study_examples():
    assert fubini_study_distance(E1, -E1) == 0.0
    assert fubini_study_distance(E1, E2) == pytest.approx(1.5707963268, abs=1e-10)
    u = np.array([1.0, 0.0])
    v = np.array([-0.5, math.sqrt(0.75)])
    assert clipped_dot(u, v) == pytest.approx(-0.5, abs=1e-15)
    assert fubini_study_distance(u, v) == pytest.approx(1.0471975512, abs=1e-10)


def test_clip_guards_rounding_above_one():
    v = np.full(7, 0.1)
    # 1 + O(eps) after normalization would make a bare arccos return NaN
    for scale in (1.0, 3.0, 1e-150, 1e150):
        for f in (cosine_distance, fubini_study_distance):
            d = f(v * scale, v)
            assert not math.isnan(d) and d >= 0.0


def test_cumulative_drift_examples():
    assert cumulative_drift([]).size == 0
    assert cumulative_drift([1, 2, 3]).tolist() == [1.0, 3.0, 6.0]
    with pytest.raises(NegativeIncrementError):
        cumulative_drift([1.0, -1e-300])
    with pytest.raises(NegativeIncrementError):
        cumulative_drift([1.0, float("nan")])


def test_cumulative_drift_matches_compensated_sum(rng):
    x = rng.uniform(0, 3, size=31)
    out = cumulative_drift(x)
    assert len(out) == 31
    assert abs(out[-1] - math.fsum(x)) < 1e-12
    assert np.all(np.diff(out) >= 0)


unit_dims = st.integers(2, 16)


def vec(d):
    return arrays(np.float64, d, elements=st.floats(-1e3, 1e3, allow_subnormal=False))


pairs = unit_dims.flatmap(lambda d: st.tuples(vec(d), vec(d)))


@given(pairs)
def test_gauge_identity_and_ranges(p):
    u, v = p
    assume(np.linalg.norm(u) > 1e-6 and np.linalg.norm(v) > 1e-6)
    sd = step_distances(u, v)
    assert 0 <= sd.d_fs <= math.pi / 2 and 0 <= sd.d_c <= math.pi and sd.d_e >= 0
    assert sd.d_fs <= sd.d_c
    assert abs(sd.d_fs - min(sd.d_c, math.pi - sd.d_c)) <= 1e-12
    if sd.dot >= 0:
        assert sd.d_c == sd.d_fs
    else:
        assert abs((sd.d_c - sd.d_fs) - (2 * math.acos(sd.dot) - math.pi)) <= 1e-12
        # strictly positive excess except where |dot| underflows the arccos resolution
        assert sd.d_c > sd.d_fs or sd.dot > -1e-15


@given(pairs, st.floats(-1e6, 1e6))
def test_sign_and_scale_invariance(p, lam):
    u, v = p
    assume(np.linalg.norm(u) > 1e-6 and np.linalg.norm(v) > 1e-6 and abs(lam) > 1e-3)
    # arccos loses ~sqrt(eps) near |dot| = 1, so the tolerance only holds away from it
    assume(abs(clipped_dot(u, v)) < 1 - 1e-6)
    base = fubini_study_distance(u, v)
    assert fubini_study_distance(-u, v) == base
    assert fubini_study_distance(u, -v) == base
    assert abs(fubini_study_distance(lam * u, v) - base) <= 1e-10
    assert abs(cosine_distance(abs(lam) * u, v) - cosine_distance(u, v)) <= 1e-10


@given(pairs)
def test_symmetry(p):
    u, v = p
    assume(np.linalg.norm(u) > 1e-6 and np.linalg.norm(v) > 1e-6)
    assert fubini_study_distance(u, v) == fubini_study_distance(v, u)


def test_fs_triangle_inequality(rng):
    for d in (2, 3, 8, 64):
        a, b, c = (rng.standard_normal((2500, d)) for _ in range(3))
        ab, bc, ac = fubini_study_distances(a, b), fubini_study_distances(b, c), fubini_study_distances(a, c)
        assert np.all(ac <= ab + bc + 1e-12)


def test_rowwise_agrees_with_scalar(rng):
    for d in (2, 8, 64):
        U, V = rng.standard_normal((300, d)), rng.standard_normal((300, d))
        fs, cs = fubini_study_distances(U, V), cosine_distances(U, V)
        for i in range(300):
            assert abs(fs[i] - fubini_study_distance(U[i], V[i])) <= 1e-12
            assert abs(cs[i] - cosine_distance(U[i], V[i])) <= 1e-12
