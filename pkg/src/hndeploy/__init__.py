"""Deployment analysis for intrusion-detecting wireless sensor networks.

Computes the probability that a straight-line intruder is detected by at
least one sensor when sensor positions follow a half-normal distribution
concentrated at the protected boundary, cross-validates the analytic
integrals against an independent Monte Carlo simulator, and compares
against the uniform-deployment baseline.
"""

from .analytic import DetectionReport, detection_probability, full_report, p_total, uniform_p_single
from .config import ExperimentConfig, config_from_dict, load_config
from .distributions import (
    Correlated2DParams,
    DeploymentKind,
    DeploymentModel,
    HalfNormalParams,
    SamplingError,
    correlated_half_normal_pdf,
    half_normal_cdf,
    half_normal_mean,
    half_normal_pdf,
    half_normal_sample,
    half_normal_samples,
    halfplane_pdf,
    sample_deployment,
    stein_residual,
)
from .geometry import (
    Capsule,
    HalfPlane,
    IntruderScenario,
    Rectangle,
    SensorField,
    capsule_area,
    coverage_fraction,
    detects,
    point_segment_distance,
)
from .montecarlo import DetectionEstimate, SweepResult, derive_trial_seed, estimate_detection, run_trial, sweep
from .numerics import QuadratureError, QuadratureSpec, erf_approx, integrate_1d, integrate_2d
from .rng import RandomSeed, SplitMix64, mix64

__version__ = "0.1.0"
