"""Error function and adaptive Simpson quadrature (1D and iterated 2D).

erf is computed in-house so the whole numerical stack is self-contained:
the Maclaurin series for |x| <= 2 (alternating, remainder bounded by the
first dropped term, iterated to below 1e-18) and the standard continued
fraction for erfc beyond, evaluated with the modified Lentz algorithm.
Both pieces are accurate to well under 1e-12 absolute; tests verify the
1e-9 contract against direct quadrature of the Gaussian density.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Tuple, Union

_SQRT_PI = math.sqrt(math.pi)
_TWO_OVER_SQRT_PI = 2.0 / _SQRT_PI


def erf_approx(x: float) -> float:
    """Error function, |erf_approx(x) - erf(x)| <= 1e-9; odd in x."""
    if not math.isfinite(x):
        raise ValueError(f"erf_approx requires finite input, got {x}")
    if x < 0.0:
        return -erf_approx(-x)
    if x == 0.0:
        return 0.0
    if x <= 2.0:
        return _erf_series(x)
    if x >= 6.0:
        # erfc(6) < 2.2e-17, below double resolution of 1 - erf
        return 1.0
    return 1.0 - _erfc_cf(x)


def _erf_series(x: float) -> float:
    # erf(x) = 2/sqrt(pi) * sum_k (-1)^k x^(2k+1) / (k! (2k+1))
    term = x
    total = x
    x2 = x * x
    k = 0
    while abs(term) > 1e-18:
        k += 1
        term *= -x2 / k
        total += term / (2 * k + 1)
    return _TWO_OVER_SQRT_PI * total


def _erfc_cf(x: float) -> float:
    # erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
    tiny = 1e-300
    f = x if x != 0.0 else tiny
    c = f
    d = 0.0
    for n in range(1, 200):
        a = 0.5 * n
        d = x + a * d
        if d == 0.0:
            d = tiny
        c = x + a / c
        if c == 0.0:
            c = tiny
        d = 1.0 / d
        delta = c * d
        f *= delta
        if abs(delta - 1.0) < 1e-17:
            break
    return math.exp(-x * x) / (_SQRT_PI * f)


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerance and work budget for one integration call."""

    absolute_tolerance: float = 1e-8
    max_subdivisions: int = 100_000

    def __post_init__(self):
        if self.absolute_tolerance <= 0:
            raise ValueError("absolute_tolerance must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be at least 1")


class QuadratureError(Exception):
    """Tolerance not reached; carries the best estimate and its error bound."""

    def __init__(self, message: str, estimate: float, error_bound: float):
        super().__init__(f"{message} (best estimate {estimate!r}, error bound {error_bound!r})")
        self.estimate = estimate
        self.error_bound = error_bound


def integrate_1d(
    f: Callable[[float], float],
    a: float,
    b: float,
    spec: QuadratureSpec = QuadratureSpec(),
) -> float:
    """Adaptive Simpson integral of f over [a, b].

    Raises QuadratureError when the subdivision budget is exhausted before
    every interval meets its share of the tolerance.
    """
    if a == b:
        return 0.0
    fa, fb = f(a), f(b)
    m = 0.5 * (a + b)
    fm = f(m)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    # stack entries: (a, fa, m, fm, b, fb, whole, tol, depth); a minimum
    # depth guards against false convergence on a coarse first probe of a
    # sharply peaked integrand
    min_depth = 4
    stack = [(a, fa, m, fm, b, fb, whole, spec.absolute_tolerance, 0)]
    total = 0.0
    error = 0.0
    used = 0
    exhausted = False
    min_width = abs(b - a) * 1e-14
    while stack:
        a0, fa0, m0, fm0, b0, fb0, whole0, tol0, depth = stack.pop()
        lm = 0.5 * (a0 + m0)
        rm = 0.5 * (m0 + b0)
        flm, frm = f(lm), f(rm)
        left = (m0 - a0) / 6.0 * (fa0 + 4.0 * flm + fm0)
        right = (b0 - m0) / 6.0 * (fm0 + 4.0 * frm + fb0)
        delta = left + right - whole0
        used += 1
        converged = depth >= min_depth and abs(delta) <= 15.0 * tol0
        if converged or abs(b0 - a0) <= min_width:
            total += left + right + delta / 15.0
            error += abs(delta) / 15.0
        elif used >= spec.max_subdivisions:
            exhausted = True
            total += left + right + delta / 15.0
            error += abs(delta) / 15.0
        else:
            half = 0.5 * tol0
            stack.append((a0, fa0, lm, flm, m0, fm0, left, half, depth + 1))
            stack.append((m0, fm0, rm, frm, b0, fb0, right, half, depth + 1))
    if exhausted:
        raise QuadratureError("subdivision budget exhausted", total, error)
    return total


YBounds = Union[Tuple[float, float], Callable[[float], Tuple[float, float]]]


def integrate_2d(
    f: Callable[[float, float], float],
    x_bounds: Tuple[float, float],
    y_bounds: YBounds,
    spec: QuadratureSpec = QuadratureSpec(),
) -> float:
    """Iterated adaptive Simpson integral over x in x_bounds, y in y_bounds(x).

    y_bounds may be a fixed (lo, hi) pair or a function of x. The inner
    tolerance is tol/3 scaled down by the x-extent so accumulated inner
    error stays within the overall budget; the outer pass also runs at
    tol/3.
    """
    x_lo, x_hi = x_bounds
    width = abs(x_hi - x_lo)
    inner_tol = spec.absolute_tolerance / (3.0 * max(1.0, width))
    inner_spec = QuadratureSpec(inner_tol, spec.max_subdivisions)
    outer_spec = QuadratureSpec(spec.absolute_tolerance / 3.0, spec.max_subdivisions)

    if callable(y_bounds):
        bounds_at = y_bounds
    else:
        fixed = y_bounds

        def bounds_at(_x: float) -> Tuple[float, float]:
            return fixed

    def slice_integral(x: float) -> float:
        y_lo, y_hi = bounds_at(x)
        return integrate_1d(lambda y: f(x, y), y_lo, y_hi, inner_spec)

    return integrate_1d(slice_integral, x_lo, x_hi, outer_spec)
