"""Batch command-line front end.

Subcommands: sample, analytic, simulate, sweep, plot, validate. Every
command is deterministic given its full argument set (seeds included);
outputs carry no timestamps, so repeated runs are byte-identical.

Exit codes: 0 success, 1 validation error, 2 numerical failure, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from typing import List, Optional, Sequence

from .analytic import full_report
from .config import load_config
from .distributions import DeploymentKind, DeploymentModel, SamplingError, sample_deployment
from .geometry import HalfPlane, IntruderScenario, Rectangle
from .montecarlo import SweepResult, estimate_detection, sweep
from .numerics import QuadratureError, QuadratureSpec
from .rng import RandomSeed
from .svgplot import PlotSpec, render_line_chart
from .validate import run_validation

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NUMERICAL = 2
EXIT_IO = 3

SWEEP_COLUMNS = ["model", "sigma", "N", "S", "d", "r", "trials",
                 "p_analytic", "p_hat", "ci_half_width", "seed", "status"]


def _prob(value: Optional[float]) -> str:
    return "" if value is None else f"{value:.10g}"


def _num(value: Optional[float]) -> str:
    return "" if value is None else f"{value:g}"


def _region_from_args(values: Optional[Sequence[float]]):
    if values is None:
        return HalfPlane()
    return Rectangle(*values)


def _model_from_args(args) -> DeploymentModel:
    kind = DeploymentKind(args.model)
    region = _region_from_args(args.region)
    sigma = getattr(args, "sigma", None)
    return DeploymentModel(kind=kind, region=region, sigma=sigma)


def _write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def cmd_sample(args) -> int:
    model = _model_from_args(args)
    positions = sample_deployment(model, args.n, RandomSeed(args.seed))
    lines = ["x,y"] + [f"{x:.17g},{y:.17g}" for x, y in positions]
    _write_text(args.out, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_analytic(args) -> int:
    scenario = IntruderScenario(start_s=args.start, distance_d=args.distance,
                                max_permitted=args.max_permitted)
    spec = QuadratureSpec(absolute_tolerance=args.tolerance)
    region = Rectangle(*args.region) if args.region is not None else None
    report = full_report(scenario, args.range, args.sigma, args.n_sensors,
                         region=region, spec=spec)
    payload = {
        "p_rect": report.p_rect,
        "p_left": report.p_left,
        "p_right": report.p_right,
        "p_total": report.p_total,
        "p_uniform": report.p_single_uniform,
        "p_d": report.p_d,
        "p_not_detected": report.p_not_detected,
    }
    for key, value in payload.items():
        print(f"{key}={_prob(value)}" if value is not None else f"{key}=")
    print(json.dumps(payload))
    return EXIT_OK


def cmd_simulate(args) -> int:
    model = _model_from_args(args)
    scenario = IntruderScenario(start_s=args.start, distance_d=args.distance)
    estimate = estimate_detection(model, args.n_sensors, scenario, args.range,
                                  args.trials, RandomSeed(args.seed),
                                  workers=args.workers, fixed_field=args.fixed_field)
    payload = {
        "p_hat": estimate.p_hat,
        "ci_half_width": estimate.ci_half_width,
        "trials": estimate.trials,
        "detected_count": estimate.detected_count,
        "seed": estimate.master_seed,
    }
    print(f"p_hat={estimate.p_hat:.10g}")
    print(f"ci_half_width={estimate.ci_half_width:.10g}")
    print(f"trials={estimate.trials}")
    print(f"detected_count={estimate.detected_count}")
    print(f"seed={estimate.master_seed}")
    print(json.dumps(payload))
    return EXIT_OK


def sweep_csv(result: SweepResult) -> str:
    lines = [",".join(SWEEP_COLUMNS)]
    for row in result.rows:
        status = row.status.replace(",", ";").replace("\n", " ")
        lines.append(",".join([
            row.model,
            _num(row.sigma),
            str(row.n),
            _num(row.s),
            _num(row.d),
            _num(row.r),
            str(row.trials),
            _prob(row.p_analytic),
            _prob(row.p_hat),
            _prob(row.ci_half_width),
            str(row.seed),
            status,
        ]))
    return "\n".join(lines) + "\n"


def cmd_sweep(args) -> int:
    config = load_config(args.config)
    result = sweep(config)
    out = args.out if args.out is not None else config.output_path
    _write_text(out, sweep_csv(result))
    return EXIT_OK


def cmd_plot(args) -> int:
    spec = PlotSpec(
        x_column=args.x,
        y_columns=tuple(args.y),
        series_key=args.series or "",
        title=args.title or "",
        x_label=args.x_label or args.x,
        y_label=args.y_label or ", ".join(args.y),
        width=args.width,
        height=args.height,
    )
    with open(args.csv, "r", encoding="utf-8", newline="") as fh:
        rows = list(csv.DictReader(fh))
    svg = render_line_chart(rows, spec)
    _write_text(args.out, svg)
    return EXIT_OK


def cmd_validate(args) -> int:
    results = run_validation()
    failed = 0
    for result in results:
        mark = "PASS" if result.passed else "FAIL"
        print(f"{mark} {result.name}: {result.detail}")
        failed += 0 if result.passed else 1
    if failed:
        print(f"{failed} check(s) failed", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hndeploy",
        description="Half-normal sensor deployment analysis: analytic detection "
                    "probability, Monte Carlo cross-validation and experiment sweeps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_region(p, required=False):
        p.add_argument("--region", nargs=4, type=float, required=required,
                       metavar=("X_MIN", "X_MAX", "Y_MIN", "Y_MAX"),
                       help="bounded rectangle region (omit for the half-plane x >= 0)")

    p = sub.add_parser("sample", help="draw a sensor deployment and write it as CSV")
    p.add_argument("--model", required=True, choices=[k.value for k in DeploymentKind])
    p.add_argument("--sigma", type=float, default=None)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    add_region(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("analytic", help="analytic detection probability report")
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("-r", "--range", type=float, required=True, help="sensing range")
    p.add_argument("-S", "--start", type=float, required=True, help="intruder entry abscissa")
    p.add_argument("-d", "--distance", type=float, required=True, help="distance traveled")
    p.add_argument("-D", "--max-permitted", type=float, default=None)
    p.add_argument("-N", "--n-sensors", type=int, required=True)
    add_region(p)
    p.add_argument("--tolerance", type=float, default=1e-8)
    p.set_defaults(func=cmd_analytic)

    p = sub.add_parser("simulate", help="Monte Carlo detection-probability estimate")
    p.add_argument("--model", required=True, choices=[k.value for k in DeploymentKind])
    p.add_argument("--sigma", type=float, default=None)
    p.add_argument("-N", "--n-sensors", type=int, required=True)
    p.add_argument("-r", "--range", type=float, required=True)
    p.add_argument("-S", "--start", type=float, required=True)
    p.add_argument("-d", "--distance", type=float, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--fixed-field", action="store_true",
                   help="reuse one deployment for every trial (exploration only)")
    add_region(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", help="run an experiment sweep from a JSON config")
    p.add_argument("--config", required=True)
    p.add_argument("--out", default=None, help="override the config output_path")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("plot", help="render a results CSV as an SVG line chart")
    p.add_argument("--csv", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--y", nargs="+", required=True)
    p.add_argument("--series", default=None)
    p.add_argument("--title", default=None)
    p.add_argument("--x-label", default=None)
    p.add_argument("--y-label", default=None)
    p.add_argument("--width", type=int, default=720)
    p.add_argument("--height", type=int, default=480)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("validate", help="run the built-in invariant suite")
    p.set_defaults(func=cmd_validate)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except QuadratureError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ValueError, KeyError, TypeError, SamplingError, json.JSONDecodeError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"I/O failure: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
