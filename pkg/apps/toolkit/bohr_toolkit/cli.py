"""Command-line front end: radii, verification, harness runs, sweeps and series dumps."""

from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import sys
from typing import Any, Optional, Sequence, Union

from pydantic import ValidationError

from bohr_shared.constants import BISECTION_TOL, DEFAULT_ORDER
from bohr_shared.errors import BohrError, UsageError
from bohr_shared.helpers import format_number
from bohr_shared.models import (
    FAMILY_PARAMETERS,
    HoldsReport,
    RadiusFamily,
    RadiusResult,
    SharpnessReport,
    SweepSpec,
)

from bohr_toolkit.config import FlagSettings
from bohr_toolkit.contracts import (
    THEOREM_CONTRACTS_BY_NAME,
    THEOREM_GROUPS,
    THEOREM_LABELS,
    resolve_theorem_label,
)
from bohr_toolkit.extremal_catalog import TAG_PARAMETER, CatalogTag, catalog_series, verify
from bohr_toolkit.harness.runner import SAMPLE_RUNNERS, HarnessReport, run_harness
from bohr_toolkit.radius_solvers import solve_radius, sweep


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

FAMILIES = [family.value for family in RadiusFamily]
CATALOG_TAGS = [tag.value for tag in CatalogTag]


def _rounded(value: Any) -> Any:
    """Round every float in a JSON-ready structure to the printed precision.

    Non-finite floats become the strings ``"inf"``, ``"-inf"`` and ``"nan"``.
    """
    if isinstance(value, float):
        if not math.isfinite(value):
            return "nan" if math.isnan(value) else ("inf" if value > 0 else "-inf")
        return float(format_number(value))
    if isinstance(value, dict):
        return {key: _rounded(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_rounded(item) for item in value]
    return value


def _print_json(payload: Any) -> None:
    print(json.dumps(_rounded(payload), sort_keys=True, allow_nan=False))


def _params(args: argparse.Namespace) -> dict[str, float]:
    params = {}
    if args.K is not None:
        params["K"] = args.K
    if args.lam is not None:
        params["lambda"] = args.lam
    return params


def _add_param_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--K", type=float, help="Quasiconformality constant K >= 1 (inf allowed).")
    parser.add_argument("--lambda", dest="lam", type=float, help="Class parameter lambda.")


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bohr-toolkit",
        description="Compute, verify and sharpness-test Bohr radii.",
    )
    parser.add_argument("--verbose", action="store_true", help="Log progress to stderr.")
    commands = parser.add_subparsers(dest="command", required=True)

    radius = commands.add_parser("radius", help="Compute one Bohr radius.")
    radius.add_argument("--family", required=True, choices=FAMILIES, help="Function class.")
    _add_param_flags(radius)
    radius.add_argument("--tol", type=float, default=BISECTION_TOL, help="Bisection tolerance (default: 1e-12).")
    radius.add_argument("--format", dest="output_format", choices=("text", "json"), default="text")

    verify_cmd = commands.add_parser("verify", help="Run the sharpness or holds check of a theorem.")
    verify_cmd.add_argument(
        "--theorem",
        required=True,
        choices=THEOREM_LABELS,
        help="Theorem label (2.2, 2.4, 2.7, 3.1, 3.3, remark-convex) or a single contract name.",
    )
    _add_param_flags(verify_cmd)
    verify_cmd.add_argument("--order", type=int, help=f"Truncation order (default: {DEFAULT_ORDER}).")
    verify_cmd.add_argument("--format", dest="output_format", choices=("text", "json"), default="text")

    harness = commands.add_parser("harness", help="Run the randomized inequality checks.")
    harness.add_argument("--seed", type=int, help="Root seed (default: fixed harness seed).")
    harness.add_argument("--samples", type=int, help="Samples per check (default: per-check counts).")
    harness.add_argument("--order", type=int, help=f"Truncation order (default: {DEFAULT_ORDER}).")
    harness.add_argument(
        "--check",
        action="append",
        choices=list(SAMPLE_RUNNERS),
        help="Run only this check. Repeat for several.",
    )
    harness.add_argument("--no-hunt", action="store_true", help="Skip the counterexample hunt beyond r = 1/3.")

    sweep_cmd = commands.add_parser("sweep", help="Tabulate a radius over a parameter range.")
    sweep_cmd.add_argument("--family", required=True, choices=FAMILIES)
    sweep_cmd.add_argument("--param", required=True, choices=("K", "lambda"))
    sweep_cmd.add_argument("--min", dest="min_value", type=float, required=True)
    sweep_cmd.add_argument("--max", dest="max_value", type=float, required=True)
    sweep_cmd.add_argument("--steps", type=int, required=True)
    sweep_cmd.add_argument("--format", dest="output_format", choices=("csv", "json"), default="csv")
    sweep_cmd.add_argument("--tol", type=float, default=BISECTION_TOL)

    series = commands.add_parser("series", help="Dump catalog coefficients as 'n re im' lines.")
    series.add_argument("--function", required=True, choices=CATALOG_TAGS)
    _add_param_flags(series)
    series.add_argument("--order", type=int, default=DEFAULT_ORDER)
    series.add_argument("--log", action="store_true", help="Dump log(f(z)/z) instead of f.")

    commands.add_parser("list", help="List theorem labels and statements.")
    return parser


# -- commands ------------------------------------------------------------------------


def _radius_param(family: RadiusFamily, args: argparse.Namespace) -> Optional[float]:
    given = _params(args)
    expected = FAMILY_PARAMETERS.get(family)
    if expected is None:
        if given:
            raise UsageError(f"family {family.value} takes no parameter")
        return None
    name = expected[0]
    extra = set(given) - {name}
    if extra:
        raise UsageError(f"family {family.value} takes --{name}, not --{extra.pop()}")
    if name not in given:
        raise UsageError(f"family {family.value} needs --{name}")
    return given[name]


def _print_radius(result: RadiusResult) -> None:
    lo, hi = result.bracket
    print(f"value {format_number(result.value)}")
    print(f"bracket {format_number(lo)} {format_number(hi)}")
    print(f"residual {format_number(result.residual)}")
    print(f"method {result.method.value}")


def cmd_radius(args: argparse.Namespace) -> int:
    family = RadiusFamily(args.family)
    result = solve_radius(family, _radius_param(family, args), args.tol)
    if args.output_format == "json":
        _print_json(result.model_dump(mode="json"))
    else:
        _print_radius(result)
    return EXIT_OK


def _print_sharpness(report: SharpnessReport) -> None:
    print(f"theorem {report.theorem}")
    for name, value in report.params.items():
        print(f"param {name}={format_number(value)}")
    for name in (
        "r0", "threshold", "sum_at_r0", "equality_margin",
        "violation_r", "violation_margin", "tail_bound", "tolerance",
    ):
        print(f"{name} {format_number(getattr(report, name))}")
    print(f"order {report.order}")
    print(f"verdict {'pass' if report.passed else 'fail'}")


def _print_holds(report: HoldsReport) -> None:
    print(f"theorem {report.theorem}")
    for name, value in report.params.items():
        print(f"param {name}={format_number(value)}")
    print(f"r0 {format_number(report.r0)}")
    for check in report.checks:
        print(
            f"check r={format_number(check.r)} sum={format_number(check.sum_value)} "
            f"threshold={format_number(check.threshold)} tail={format_number(check.tail_bound)} "
            f"verdict={check.verdict.value}"
        )
    for note in report.notes:
        print(f"# {note}")
    print(f"verdict {'pass' if report.passed else 'fail'}")


def _print_report(report: Union[SharpnessReport, HoldsReport]) -> None:
    if isinstance(report, SharpnessReport):
        _print_sharpness(report)
    else:
        _print_holds(report)


def cmd_verify(args: argparse.Namespace) -> int:
    config = FlagSettings()
    contracts = resolve_theorem_label(args.theorem)
    params = _params(args)
    reports = [verify(contract.name, params, args.order, config) for contract in contracts]
    passed = all(report.passed for report in reports)
    if args.output_format == "json":
        payload = [report.model_dump(mode="json") for report in reports]
        _print_json(payload[0] if len(payload) == 1 else payload)
        return EXIT_OK if passed else EXIT_FAILED
    for index, report in enumerate(reports):
        if index:
            print()
        _print_report(report)
    if len(reports) > 1:
        print(f"overall {'pass' if passed else 'fail'}")
    return EXIT_OK if passed else EXIT_FAILED


def _print_harness(report: HarnessReport) -> None:
    print(f"seed {report.seed} order {report.order}")
    for summary in report.checks:
        print(
            f"{summary.check} {summary.passed}/{summary.samples} "
            f"worst_margin={format_number(summary.worst_margin)}"
        )
    for summary in report.checks:
        for line in summary.failures:
            print(f"replay {line}")
    if report.counterexample_draws:
        found = report.counterexample or "none"
        print(f"counterexample {found}")
    print(f"verdict {'pass' if report.passed else 'fail'}")


def cmd_harness(args: argparse.Namespace) -> int:
    if args.samples is not None and args.samples < 1:
        raise UsageError("--samples must be >= 1")
    report = run_harness(
        seed=args.seed,
        samples=args.samples,
        order=args.order,
        checks=args.check,
        hunt=not args.no_hunt,
        config=FlagSettings(),
    )
    _print_harness(report)
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_sweep(args: argparse.Namespace) -> int:
    spec = SweepSpec(
        family=args.family,
        param=args.param,
        min=args.min_value,
        max=args.max_value,
        steps=args.steps,
        output_format=args.output_format,
    )
    rows = sweep(spec, args.tol)
    if spec.output_format == "json":
        _print_json([row.as_dict() for row in rows])
        return EXIT_OK
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["param", "r0", "residual"])
    for row in rows:
        writer.writerow([format_number(row.param), format_number(row.r0), format_number(row.residual)])
    return EXIT_OK


def cmd_series(args: argparse.Namespace) -> int:
    tag = CatalogTag(args.function)
    given = _params(args)
    name = TAG_PARAMETER.get(tag)
    extra = set(given) - ({name} if name else set())
    if extra:
        raise UsageError(f"function {tag.value} does not take --{extra.pop()}")
    series = catalog_series(tag, args.order, given.get(name) if name else None, log=args.log)
    for line in series.to_debug_lines():
        print(line)
    return EXIT_OK


def cmd_list(args: argparse.Namespace) -> int:
    for group in THEOREM_GROUPS:
        for name in group.members:
            contract = THEOREM_CONTRACTS_BY_NAME[name]
            params = ",".join(contract.param_names()) or "-"
            print(f"{group.label}\t{contract.name}\t{contract.claim}\t{params}\t{contract.title}")
            print(f"\t{contract.statement}")
    return EXIT_OK


COMMANDS = {
    "radius": cmd_radius,
    "verify": cmd_verify,
    "harness": cmd_harness,
    "sweep": cmd_sweep,
    "series": cmd_series,
    "list": cmd_list,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse ``argv`` and run one command; returns the exit status."""
    parser = build_arg_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s %(message)s",
        force=True,
    )
    try:
        return COMMANDS[args.command](args)
    except (BohrError, ValidationError) as e:
        logger.debug("cli.error command=%s error=%s", args.command, e)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
