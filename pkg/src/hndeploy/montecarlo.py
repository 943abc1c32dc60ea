"""Empirical detection-probability estimation (the independent oracle).

Each trial redraws the whole sensor field from the deployment model and
checks whether any sensor lies in the intrusion capsule, estimating the
deployment-averaged at-least-one detection probability. Trial i always
uses the substream derive_trial_seed(master, i), so estimates are
independent of batch size, evaluation order and worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from .analytic import detection_probability, full_report, uniform_p_single
from .distributions import DeploymentKind, DeploymentModel, sample_deployment, sample_positions
from .geometry import IntruderScenario, Rectangle, detects_any
from .numerics import QuadratureError, QuadratureSpec
from .rng import RandomSeed, derive_stream_seed, mix64, raw_draws

_Z95 = 1.96
_BATCH = 1 << 15


@dataclass(frozen=True)
class DetectionEstimate:
    p_hat: float
    trials: int
    detected_count: int
    ci_half_width: float
    master_seed: int


@dataclass(frozen=True)
class SweepRow:
    model: str
    sigma: Optional[float]
    n: int
    s: float
    d: float
    r: float
    trials: int
    p_analytic: Optional[float]
    p_hat: Optional[float]
    ci_half_width: Optional[float]
    seed: int
    status: str = "ok"


@dataclass(frozen=True)
class SweepResult:
    rows: List[SweepRow]


def derive_trial_seed(master: int, trial_index: int) -> int:
    """Seed of the substream driving one trial; same mixer as rng streams."""
    return derive_stream_seed(master, trial_index)


def run_trial(model: DeploymentModel, n: int, scenario: IntruderScenario, r: float,
              trial_seed: int) -> bool:
    """One deployment draw; true iff any of the n sensors detects the intruder."""
    if n == 0:
        return False
    positions = sample_deployment(model, n, RandomSeed(trial_seed))
    xs = np.array([p[0] for p in positions])
    ys = np.array([p[1] for p in positions])
    return bool(detects_any(xs[None, :], ys[None, :], scenario, r)[0])


def _count_batch(model: DeploymentModel, n: int, scenario: IntruderScenario, r: float,
                 master: int, start: int, stop: int) -> int:
    # derive_trial_seed(master, i) == raw_draws(mix64(master), i), vectorized
    seeds = raw_draws(mix64(master), np.arange(start, stop, dtype=np.uint64))
    xs, ys = sample_positions(model, n, seeds)
    return int(np.count_nonzero(detects_any(xs, ys, scenario, r)))


def estimate_detection(model: DeploymentModel, n: int, scenario: IntruderScenario, r: float,
                       trials: int, seed: RandomSeed, workers: int = 1,
                       fixed_field: bool = False) -> DetectionEstimate:
    """Monte Carlo estimate of the at-least-one detection probability.

    `fixed_field` draws a single field from the master seed and reuses it
    for every trial (estimating the field-conditional probability, which
    under Boolean sensing is 0 or 1); the default redraws per trial.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if n < 0:
        raise ValueError("n must be nonnegative")
    if workers < 1:
        raise ValueError("workers must be at least 1")
    if fixed_field:
        detected = trials if run_trial(model, n, scenario, r, seed.master) else 0
    elif n == 0:
        detected = 0
    else:
        spans = [(lo, min(lo + _BATCH, trials)) for lo in range(0, trials, _BATCH)]
        if workers == 1:
            counts = [_count_batch(model, n, scenario, r, seed.master, lo, hi)
                      for lo, hi in spans]
        else:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                counts = list(pool.map(
                    lambda span: _count_batch(model, n, scenario, r, seed.master, *span),
                    spans))
        detected = sum(counts)
    p_hat = detected / trials
    ci = _Z95 * math.sqrt(p_hat * (1.0 - p_hat) / trials)
    return DetectionEstimate(
        p_hat=p_hat,
        trials=trials,
        detected_count=detected,
        ci_half_width=ci,
        master_seed=seed.master,
    )


def _analytic_value(kind: DeploymentKind, scenario: IntruderScenario, r: float,
                    sigma: Optional[float], n: int, region: Rectangle,
                    spec: QuadratureSpec) -> Optional[float]:
    if kind == DeploymentKind.HALF_NORMAL:
        return full_report(scenario, r, sigma, n, spec=spec).p_d
    if kind == DeploymentKind.UNIFORM:
        return detection_probability(uniform_p_single(scenario, r, region), n)
    return None  # strip / quadrant: Monte Carlo only


def sweep(config) -> SweepResult:
    """Run the cartesian (model, sigma, N, S, d, r) experiment sweep.

    Rows are ordered by (model, N, sigma, S, d, r); row i uses the
    substream derive_trial_seed(master, i) as its own master seed, so the
    whole result is reproducible from the config alone. Invalid
    combinations (d > S, capsule outside the region) are reported in the
    row status instead of aborting the sweep.
    """
    combos = sorted(
        (kind.value, n, sigma, s, d, r)
        for kind in config.models
        # the uniform baseline has no sigma; collapse it to one row
        for sigma in ([None] if kind == DeploymentKind.UNIFORM else config.sigma_values)
        for n in config.n_values
        for s in config.s_values
        for d in config.d_values
        for r in config.r_values
    )
    spec = QuadratureSpec(config.quadrature_tolerance)
    rows = []
    any_ok = False
    for index, (kind_name, n, sigma, s, d, r) in enumerate(combos):
        kind = DeploymentKind(kind_name)
        row_seed = derive_trial_seed(config.master_seed, index)
        sigma_out = sigma
        try:
            scenario = IntruderScenario(start_s=s, distance_d=d)
        except ValueError as exc:
            rows.append(SweepRow(kind_name, sigma_out, n, s, d, r, config.trials,
                                 None, None, None, row_seed, f"invalid: {exc}"))
            continue
        model = DeploymentModel(kind=kind, region=config.region, sigma=sigma)
        try:
            p_analytic = _analytic_value(kind, scenario, r, sigma, n, config.region, spec)
        except (ValueError, QuadratureError) as exc:
            rows.append(SweepRow(kind_name, sigma_out, n, s, d, r, config.trials,
                                 None, None, None, row_seed, f"invalid: {exc}"))
            continue
        estimate = estimate_detection(model, n, scenario, r, config.trials,
                                      RandomSeed(row_seed), workers=config.workers)
        rows.append(SweepRow(kind_name, sigma_out, n, s, d, r, config.trials,
                             p_analytic, estimate.p_hat, estimate.ci_half_width,
                             row_seed))
        any_ok = True
    if rows and not any_ok:
        raise ValueError("every sweep row is invalid; nothing to estimate")
    return SweepResult(rows=rows)
