"""Half-normal distribution family and deployment-model sampling.

A half-normal variable is |X| for X ~ Normal(0, sigma^2). Deployments draw
sensor x-coordinates from it so density peaks at the protected boundary
x = 0; four deployment kinds are supported:

  * uniform        -- uniform over a bounded rectangle (the baseline)
  * half_normal    -- x ~ HalfNormal(sigma), y ~ Normal(0, sigma); this is
                      the half-plane density 1/(pi sigma^2) exp(-(x^2+y^2)/(2 sigma^2))
                      that the analytic detection integrals assume
  * strip          -- x ~ HalfNormal(sigma), y uniform along the strip
  * quadrant       -- x and y both half-normal (the literal positive-quadrant
                      product density)

Sampling is counter-based: sensor j of a deployment keyed by seed s uses
the counter block [j * 256, (j + 1) * 256) of stream s, four counters per
rejection attempt (two Box-Muller normals). Draws falling outside a bounded
region are rejected and redrawn from the next attempt slot, up to
MAX_ATTEMPTS per sensor. The addressing makes batched and sequential
sampling bit-identical.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .geometry import HalfPlane, Point, Rectangle, Region
from .numerics import erf_approx
from .rng import RandomSeed, normal_draws, uniform_draws

SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)

MAX_ATTEMPTS = 64
_DRAWS_PER_ATTEMPT = 4
_BLOCK = MAX_ATTEMPTS * _DRAWS_PER_ATTEMPT


@dataclass(frozen=True)
class HalfNormalParams:
    """sigma of the underlying zero-mean normal (length units)."""

    sigma: float

    def __post_init__(self):
        if not (math.isfinite(self.sigma) and self.sigma > 0):
            raise ValueError(f"sigma must be a positive finite real, got {self.sigma}")


@dataclass(frozen=True)
class Correlated2DParams:
    sigma1: float
    sigma2: float
    rho: float

    def __post_init__(self):
        if self.sigma1 <= 0 or self.sigma2 <= 0:
            raise ValueError("sigma1 and sigma2 must be positive")
        if not abs(self.rho) < 1:
            raise ValueError("rho must lie in (-1, 1)")


class DeploymentKind(str, enum.Enum):
    UNIFORM = "uniform"
    HALF_NORMAL = "half_normal"
    STRIP = "strip"
    QUADRANT = "quadrant"


@dataclass(frozen=True)
class DeploymentModel:
    kind: DeploymentKind
    region: Region
    sigma: Optional[float] = None

    def __post_init__(self):
        if self.kind == DeploymentKind.UNIFORM:
            if not isinstance(self.region, Rectangle):
                raise ValueError("uniform deployment requires a bounded rectangle region")
        else:
            if self.sigma is None or self.sigma <= 0:
                raise ValueError(f"{self.kind.value} deployment requires sigma > 0")
        if self.kind == DeploymentKind.STRIP and not isinstance(self.region, Rectangle):
            raise ValueError("strip deployment requires a bounded rectangle region")


class SamplingError(Exception):
    """Rejection sampling exceeded the retry bound (sigma mismatched to region)."""


def half_normal_pdf(y: float, params: HalfNormalParams) -> float:
    """Density sqrt(2)/(sigma sqrt(pi)) exp(-y^2/(2 sigma^2)) on y >= 0."""
    if not math.isfinite(y):
        raise ValueError(f"y must be finite, got {y}")
    if y < 0.0:
        return 0.0
    s = params.sigma
    return SQRT_2_OVER_PI / s * math.exp(-y * y / (2.0 * s * s))


def half_normal_cdf(y: float, params: HalfNormalParams) -> float:
    """erf(y / (sigma sqrt(2))) for y >= 0, else 0."""
    if not math.isfinite(y):
        raise ValueError(f"y must be finite, got {y}")
    if y < 0.0:
        return 0.0
    return erf_approx(y / (params.sigma * math.sqrt(2.0)))


def half_normal_mean(params: HalfNormalParams) -> float:
    """E|X| = sigma * sqrt(2/pi)."""
    return params.sigma * SQRT_2_OVER_PI


def half_normal_sample(stream, params: HalfNormalParams) -> float:
    """One draw |z|, z ~ Normal(0, sigma^2), from a sequential stream."""
    return abs(stream.normal(0.0, params.sigma))


def half_normal_samples(params: HalfNormalParams, n: int, seed: RandomSeed) -> np.ndarray:
    """n independent half-normal draws from the stream keyed by `seed`."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    counters = np.arange(n, dtype=np.uint64) * np.uint64(2)
    return np.abs(normal_draws(seed.master, counters)) * params.sigma


def correlated_half_normal_pdf(x: float, y: float, params: Correlated2DParams) -> float:
    """Bivariate half-normal density on the open positive quadrant.

    This is the fourfold folding of the correlated bivariate normal onto
    the positive quadrant; the cross terms combine into a cosh factor.
    The quadrant is taken closed (boundary included) so the density has a
    well-defined value at the mode (0, 0).
    """
    if x < 0.0 or y < 0.0:
        return 0.0
    s1, s2, rho = params.sigma1, params.sigma2, params.rho
    one_minus = 1.0 - rho * rho
    norm = 2.0 / (math.pi * s1 * s2 * math.sqrt(one_minus))
    quad = (x * x / (s1 * s1) + y * y / (s2 * s2)) / (2.0 * one_minus)
    cross = rho * x * y / (one_minus * s1 * s2)
    return norm * math.exp(-quad) * math.cosh(cross)


def halfplane_pdf(x: float, y: float, params: HalfNormalParams) -> float:
    """Deployment density on the half-plane x >= 0, y unrestricted.

    x half-normal and y zero-mean normal with the same sigma, independent:
    1/(pi sigma^2) exp(-(x^2 + y^2)/(2 sigma^2)). This is the density the
    detection-probability integrals are taken against.
    """
    if x < 0.0:
        return 0.0
    s2 = params.sigma * params.sigma
    return math.exp(-(x * x + y * y) / (2.0 * s2)) / (math.pi * s2)


def sample_positions(model: DeploymentModel, n: int, seeds: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Sample n sensors per seed; returns x and y arrays of shape (len(seeds), n).

    Each seed keys one independent deployment. Rejection against a bounded
    region consumes further attempt slots of the same counter block, so the
    output depends only on (seed, model, n).
    """
    seeds = np.asarray(seeds, dtype=np.uint64)
    trials = seeds.shape[0]
    xs = np.zeros((trials, n), dtype=np.float64)
    ys = np.zeros((trials, n), dtype=np.float64)
    if n == 0 or trials == 0:
        return xs, ys
    pending_t, pending_j = np.nonzero(np.ones((trials, n), dtype=bool))
    region = model.region
    for attempt in range(MAX_ATTEMPTS):
        if pending_t.size == 0:
            break
        base = pending_j.astype(np.uint64) * np.uint64(_BLOCK) + np.uint64(attempt * _DRAWS_PER_ATTEMPT)
        s = seeds[pending_t]
        if model.kind == DeploymentKind.UNIFORM:
            x = region.x_min + region.width * uniform_draws(s, base)
            y = region.y_min + region.height * uniform_draws(s, base + np.uint64(1))
        elif model.kind == DeploymentKind.HALF_NORMAL:
            x = np.abs(normal_draws(s, base)) * model.sigma
            y = normal_draws(s, base + np.uint64(2)) * model.sigma
        elif model.kind == DeploymentKind.STRIP:
            x = np.abs(normal_draws(s, base)) * model.sigma
            y = region.y_min + region.height * uniform_draws(s, base + np.uint64(2))
        elif model.kind == DeploymentKind.QUADRANT:
            x = np.abs(normal_draws(s, base)) * model.sigma
            y = np.abs(normal_draws(s, base + np.uint64(2))) * model.sigma
        else:  # pragma: no cover - enum is exhaustive
            raise ValueError(f"unknown deployment kind {model.kind}")
        if isinstance(region, HalfPlane):
            accepted = np.ones(x.shape, dtype=bool)
        else:
            accepted = (
                (x >= region.x_min) & (x <= region.x_max)
                & (y >= region.y_min) & (y <= region.y_max)
            )
        xs[pending_t[accepted], pending_j[accepted]] = x[accepted]
        ys[pending_t[accepted], pending_j[accepted]] = y[accepted]
        keep = ~accepted
        pending_t = pending_t[keep]
        pending_j = pending_j[keep]
    else:
        raise SamplingError(
            f"{pending_t.size} draw(s) still rejected after {MAX_ATTEMPTS} attempts; "
            "sigma is grossly mismatched to the bounded region"
        )
    return xs, ys


def sample_deployment(model: DeploymentModel, n: int, seed: RandomSeed) -> List[Point]:
    """Draw n sensor positions from the model's density."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    xs, ys = sample_positions(model, n, np.array([seed.master], dtype=np.uint64))
    return list(zip(xs[0].tolist(), ys[0].tolist()))


# Stein characterization test-function family: name -> (f, f', f(0))
STEIN_TEST_FUNCTIONS = {
    "one": (lambda x: np.ones_like(x), lambda x: np.zeros_like(x), 1.0),
    "x": (lambda x: x, lambda x: np.ones_like(x), 0.0),
    "x2": (lambda x: x * x, lambda x: 2.0 * x, 0.0),
}


def stein_residual(test_function: str, samples: Sequence[float], params: HalfNormalParams) -> float:
    """Empirical Stein residual E[f'(Z)] - E[Z f(Z)] + f(0) sqrt(2/pi).

    Z are the samples rescaled by 1/sigma. The residual converges to 0 in
    probability exactly when the samples are half-normal(sigma), which makes
    it a distribution-correctness check with built-in power against
    lookalikes (e.g. uniform samples give 2/3 for f(x) = x).
    """
    if test_function not in STEIN_TEST_FUNCTIONS:
        raise ValueError(f"unknown test function {test_function!r}; choose from {sorted(STEIN_TEST_FUNCTIONS)}")
    z = np.asarray(samples, dtype=np.float64)
    if z.size == 0:
        raise ValueError("samples must be nonempty")
    if np.any(z < 0):
        raise ValueError("samples must be nonnegative")
    z = z / params.sigma
    f, fprime, f0 = STEIN_TEST_FUNCTIONS[test_function]
    return float(np.mean(fprime(z)) - np.mean(z * f(z)) + f0 * SQRT_2_OVER_PI)
