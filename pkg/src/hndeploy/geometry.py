"""Regions, sensor fields, intruder paths and Boolean-sensing detection.

Coordinate convention: the protected target occupies x <= 0; the intruder
enters at (start_s, 0) and walks straight toward the target along -x, so
its path lies on y = 0. A sensor with sensing range r detects the intruder
iff it lies within distance r of the path (closed disk, boundary counts as
detected) -- the set of such points is a capsule: a rectangle plus two
half-disks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Tuple, Union

import numpy as np

Point = Tuple[float, float]


@dataclass(frozen=True)
class Rectangle:
    x_min: float
    x_max: float
    y_min: float
    y_max: float

    def __post_init__(self):
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise ValueError(f"degenerate rectangle {self}")

    @property
    def width(self) -> float:
        return self.x_max - self.x_min

    @property
    def height(self) -> float:
        return self.y_max - self.y_min

    @property
    def area(self) -> float:
        return self.width * self.height

    def contains(self, x: float, y: float) -> bool:
        return self.x_min <= x <= self.x_max and self.y_min <= y <= self.y_max


@dataclass(frozen=True)
class HalfPlane:
    """Unbounded region x >= 0 (the deployment side of the target boundary)."""

    @property
    def area(self) -> float:
        return math.inf

    def contains(self, x: float, y: float) -> bool:
        return x >= 0.0


Region = Union[Rectangle, HalfPlane]


@dataclass(frozen=True)
class SensorField:
    positions: List[Point]
    sensing_range: float

    def __post_init__(self):
        if self.sensing_range <= 0:
            raise ValueError("sensing_range must be positive")


@dataclass(frozen=True)
class IntruderScenario:
    """Straight-line intrusion from (start_s, 0) toward the target at x = 0.

    max_permitted is the alarm threshold distance; it defaults to start_s
    (the intruder must be caught before reaching the target) and does not
    enter the detection geometry, which depends on the traveled distance
    distance_d only.
    """

    start_s: float
    distance_d: float
    max_permitted: float = None  # type: ignore[assignment]

    def __post_init__(self):
        if self.start_s < 0:
            raise ValueError("start_s must be nonnegative")
        if not (0 <= self.distance_d <= self.start_s):
            raise ValueError("distance_d must satisfy 0 <= d <= start_s")
        if self.max_permitted is None:
            object.__setattr__(self, "max_permitted", self.start_s)
        if not (0 < self.max_permitted <= self.start_s):
            raise ValueError("max_permitted must satisfy 0 < D <= start_s")

    @property
    def path_start(self) -> Point:
        return (self.start_s, 0.0)

    @property
    def path_end(self) -> Point:
        return (self.start_s - self.distance_d, 0.0)


@dataclass(frozen=True)
class Capsule:
    """All points within `radius` of the segment from `start` to `end`."""

    start: Point
    end: Point
    radius: float

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("radius must be positive")

    @property
    def segment_length(self) -> float:
        return math.hypot(self.end[0] - self.start[0], self.end[1] - self.start[1])

    @property
    def area(self) -> float:
        return capsule_area(self.segment_length, self.radius)

    def contains(self, p: Point) -> bool:
        return point_segment_distance(p, self.start, self.end) <= self.radius


def capsule_area(length: float, r: float) -> float:
    """Area of a capsule: rectangle 2*length*r plus two half-disks."""
    if length < 0:
        raise ValueError("length must be nonnegative")
    if r <= 0:
        raise ValueError("r must be positive")
    return 2.0 * length * r + math.pi * r * r


def point_segment_distance(p: Point, a: Point, b: Point) -> float:
    """Euclidean distance from p to the closest point of segment ab."""
    px, py = p
    ax, ay = a
    bx, by = b
    dx = bx - ax
    dy = by - ay
    seg2 = dx * dx + dy * dy
    if seg2 == 0.0:
        return math.hypot(px - ax, py - ay)
    t = ((px - ax) * dx + (py - ay) * dy) / seg2
    t = min(1.0, max(0.0, t))
    return math.hypot(px - (ax + t * dx), py - (ay + t * dy))


def detects(sensor: Point, scenario: IntruderScenario, r: float) -> bool:
    """Boolean sensing: true iff the sensor lies in the intrusion capsule."""
    if r <= 0:
        raise ValueError("r must be positive")
    return point_segment_distance(sensor, scenario.path_start, scenario.path_end) <= r


def detects_any(xs: np.ndarray, ys: np.ndarray, scenario: IntruderScenario, r: float) -> np.ndarray:
    """Row-wise any-sensor detection for position arrays of shape (trials, n).

    Exploits the path lying on y = 0: the squared distance to the segment
    is clip-in-x squared plus y squared.
    """
    x_lo = scenario.start_s - scenario.distance_d
    x_hi = scenario.start_s
    dx = np.clip(xs, x_lo, x_hi) - xs
    dist2 = dx * dx + ys * ys
    return np.any(dist2 <= r * r, axis=-1)


def coverage_fraction(field: SensorField, region: Rectangle, resolution: int) -> float:
    """Fraction of a regular grid over `region` within sensing range of the field."""
    if not isinstance(region, Rectangle):
        raise TypeError("coverage_fraction requires a bounded rectangle region")
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    if not field.positions:
        return 0.0
    # cell-center grid
    gx = region.x_min + (np.arange(resolution) + 0.5) * (region.width / resolution)
    gy = region.y_min + (np.arange(resolution) + 0.5) * (region.height / resolution)
    covered = np.zeros((resolution, resolution), dtype=bool)
    r2 = field.sensing_range ** 2
    for sx, sy in field.positions:
        dx2 = (gx - sx) ** 2
        dy2 = (gy - sy) ** 2
        covered |= dx2[None, :] + dy2[:, None] <= r2
    return float(covered.mean())
