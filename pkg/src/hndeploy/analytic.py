"""Analytic detection probability under half-normal deployment.

The single-sensor hit probability is the half-plane deployment density
integrated over the intrusion capsule, split into its three parts:

  * rectangle  x in [S-d, S], y in [-r, r]
  * left half-disk centered at the path end (S-d, 0)
  * right half-disk centered at the entry point (S, 0)

With N independently placed sensors, at-least-one detection is
P_d = 1 - (1 - p_total)^N. The uniform baseline uses capsule area over
region area for the same quantity.

All integrals here assume the untruncated half-plane density; when sensors
are actually sampled inside a bounded region, analytic and empirical values
agree only if the region keeps at least ~6 sigma of mass around every
integration domain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .distributions import HalfNormalParams, halfplane_pdf
from .geometry import IntruderScenario, Rectangle
from .numerics import QuadratureSpec, integrate_2d

Density = Callable[[float, float], float]


@dataclass(frozen=True)
class DetectionReport:
    p_rect: float
    p_left: float
    p_right: float
    p_total: float
    p_d: float
    p_not_detected: float
    n_sensors: int
    p_single_uniform: Optional[float] = None


def detection_probability(p_single: float, n: int) -> float:
    """At-least-one-of-N detection: 1 - (1 - p)^n.

    Computed via exp(n * log1p(-p)) so tiny p with large n does not lose
    precision to cancellation.
    """
    if not (0.0 <= p_single <= 1.0):
        raise ValueError(f"p_single must lie in [0, 1], got {p_single}")
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return 0.0
    if p_single == 1.0:
        return 1.0
    return -math.expm1(n * math.log1p(-p_single))


def _not_detected(p_single: float, n: int) -> float:
    if n == 0:
        return 1.0
    if p_single == 1.0:
        return 0.0
    return math.exp(n * math.log1p(-p_single))


def rect_probability(density: Density, scenario: IntruderScenario, r: float,
                     spec: QuadratureSpec = QuadratureSpec()) -> float:
    """Integral of `density` over the capsule rectangle."""
    if scenario.distance_d == 0.0:
        return 0.0
    x_lo = scenario.start_s - scenario.distance_d
    x_hi = scenario.start_s
    return integrate_2d(density, (x_lo, x_hi), (-r, r), spec)


def left_disk_probability(density: Density, scenario: IntruderScenario, r: float,
                          spec: QuadratureSpec = QuadratureSpec()) -> float:
    """Integral of `density` over the half-disk behind the path end (S-d, 0)."""
    center = scenario.start_s - scenario.distance_d
    # density vanishes for x < 0, clip the domain there
    x_lo = max(0.0, center - r)
    if x_lo >= center:
        return 0.0

    def bounds(x: float):
        half = math.sqrt(max(0.0, r * r - (x - center) ** 2))
        return (-half, half)

    return integrate_2d(density, (x_lo, center), bounds, spec)


def right_disk_probability(density: Density, scenario: IntruderScenario, r: float,
                           spec: QuadratureSpec = QuadratureSpec()) -> float:
    """Integral of `density` over the half-disk ahead of the entry point (S, 0)."""
    center = scenario.start_s

    def bounds(x: float):
        half = math.sqrt(max(0.0, r * r - (x - center) ** 2))
        return (-half, half)

    return integrate_2d(density, (center, center + r), bounds, spec)


def p_rect(scenario: IntruderScenario, r: float, sigma: float,
           spec: QuadratureSpec = QuadratureSpec()) -> float:
    return rect_probability(_density(sigma), scenario, r, spec)


def p_left_disk(scenario: IntruderScenario, r: float, sigma: float,
                spec: QuadratureSpec = QuadratureSpec()) -> float:
    return left_disk_probability(_density(sigma), scenario, r, spec)


def p_right_disk(scenario: IntruderScenario, r: float, sigma: float,
                 spec: QuadratureSpec = QuadratureSpec()) -> float:
    return right_disk_probability(_density(sigma), scenario, r, spec)


def p_total(scenario: IntruderScenario, r: float, sigma: float,
            spec: QuadratureSpec = QuadratureSpec()) -> float:
    """Probability one half-plane-deployed sensor lands in the capsule."""
    density = _density(sigma)
    total = (
        rect_probability(density, scenario, r, spec)
        + left_disk_probability(density, scenario, r, spec)
        + right_disk_probability(density, scenario, r, spec)
    )
    return min(1.0, max(0.0, total))


def _density(sigma: float) -> Density:
    params = HalfNormalParams(sigma)
    return lambda x, y: halfplane_pdf(x, y, params)


def uniform_p_single(scenario: IntruderScenario, r: float, region: Rectangle) -> float:
    """Single-sensor hit probability under uniform deployment: capsule/region area.

    The capsule must lie fully inside the region; there is no principled
    clipping rule for a capsule sticking out, so that case is an error.
    """
    if not isinstance(region, Rectangle):
        raise TypeError("uniform baseline requires a bounded rectangle region")
    x_lo = scenario.start_s - scenario.distance_d - r
    x_hi = scenario.start_s + r
    if x_lo < region.x_min or x_hi > region.x_max or -r < region.y_min or r > region.y_max:
        raise ValueError(
            f"capsule [{x_lo}, {x_hi}] x [-{r}, {r}] is not contained in the region"
        )
    from .geometry import capsule_area

    return capsule_area(scenario.distance_d, r) / region.area


def full_report(scenario: IntruderScenario, r: float, sigma: float, n: int,
                region: Optional[Rectangle] = None,
                spec: QuadratureSpec = QuadratureSpec()) -> DetectionReport:
    """All analytic detection quantities for one scenario."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    density = _density(sigma)
    rect = rect_probability(density, scenario, r, spec)
    left = left_disk_probability(density, scenario, r, spec)
    right = right_disk_probability(density, scenario, r, spec)
    total = min(1.0, max(0.0, rect + left + right))
    p_not = _not_detected(total, n)
    baseline = None
    if region is not None:
        baseline = uniform_p_single(scenario, r, region)
    return DetectionReport(
        p_rect=rect,
        p_left=left,
        p_right=right,
        p_total=total,
        p_d=1.0 - p_not,
        p_not_detected=p_not,
        n_sensors=n,
        p_single_uniform=baseline,
    )
