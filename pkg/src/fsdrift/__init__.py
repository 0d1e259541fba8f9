"""Representation drift under Euclidean, cosine and Fubini-Study geometry."""

__version__ = "0.1.0"

from .core_linalg import FeatureMatrix, center_window, extract_pc1, normalize
from .metrics import cosine_distance, cumulative_drift, euclidean_distance, fubini_study_distance
from .stats import exact_sign_test
from .synth import SynthSpec, generate_smooth_trajectory, inject_flips, synthesize
from .trajectory import (
    DriftReport,
    RepresentationTrajectory,
    WindowSpec,
    analyze_trajectory,
    build_trajectory,
    build_windows,
    compute_steps,
    drift_report,
)

__all__ = [
    "DriftReport",
    "FeatureMatrix",
    "RepresentationTrajectory",
    "SynthSpec",
    "WindowSpec",
    "analyze_trajectory",
    "build_trajectory",
    "build_windows",
    "center_window",
    "compute_steps",
    "cosine_distance",
    "cumulative_drift",
    "drift_report",
    "euclidean_distance",
    "exact_sign_test",
    "extract_pc1",
    "fubini_study_distance",
    "generate_smooth_trajectory",
    "inject_flips",
    "normalize",
    "synthesize",
]
