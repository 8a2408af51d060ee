"""Command-line front door.

Subcommands: posterior, sequence, roc, threshold, sweep, simulate.  All
probabilities are decimal fractions (never percentages).  Output formats:
``table`` is human-oriented at 4 decimal places, ``csv`` is
machine-parseable at 6, ``json`` carries full float precision and is
newline-terminated.

Exit codes: 0 success, 2 usage error, 3 indeterminate arithmetic (a 0/0
likelihood), 4 unachievable target.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .bayes import (
    DetectorCharacteristic,
    IndeterminateLikelihood,
    IndeterminateUpdate,
    MeasurementOutcome,
    fold_sequence,
    update_negative,
    update_positive,
)
from .montecarlo import SimulationConfig, simulate
from .roc import UnachievableTarget, posterior_sweep, roc_curve, threshold_for_ppv
from .signal import RayleighRician, threshold_of_pfa

__all__ = ["main"]

EXIT_USAGE = 2
EXIT_INDETERMINATE = 3
EXIT_UNACHIEVABLE = 4


def _probability_flag(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if math.isnan(value) or not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"must be a probability in [0, 1]: {text}")
    return value


def _nonnegative_flag(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if math.isnan(value) or math.isinf(value) or value < 0.0:
        raise argparse.ArgumentTypeError(f"must be finite and >= 0: {text}")
    return value


def _positive_int_flag(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text}")
    return value


def _seed_flag(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return value


def _emit(text: str, out: str | None) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_dumps(obj) -> str:
    return json.dumps(obj)


# ---------------------------------------------------------------- posterior


def _cmd_posterior(args) -> str:
    det = DetectorCharacteristic(args.pd, args.pfa)
    if args.outcome == "positive":
        value = update_positive(args.prior, det)
    else:
        value = update_negative(args.prior, det)
    fmt = args.format or "table"
    if fmt == "json":
        return _json_dumps({"posterior": value})
    if fmt == "csv":
        return f"posterior\n{value:.6f}"
    return f"{value:.4f}"


# ----------------------------------------------------------------- sequence


def _cmd_sequence(args) -> str:
    outcomes = []
    for ch in args.outcomes:
        if ch == "+":
            outcomes.append(MeasurementOutcome.POSITIVE)
        elif ch == "-":
            outcomes.append(MeasurementOutcome.NEGATIVE)
        else:
            raise _Usage(f"outcomes may contain only '+' and '-', got {ch!r}")
    if not outcomes:
        raise _Usage("outcomes must be nonempty")
    det = DetectorCharacteristic(args.pd, args.pfa)
    state = fold_sequence(args.prior, [(o, det) for o in outcomes])
    rows = [
        (i + 1, rec.outcome.value, rec.posterior_after)
        for i, rec in enumerate(state.looks)
    ]
    fmt = args.format or "table"
    if fmt == "json":
        return _json_dumps(
            [{"look": i, "outcome": o, "posterior": p} for i, o, p in rows]
        )
    if fmt == "csv":
        lines = ["look,outcome,posterior"]
        lines += [f"{i},{o},{p:.6f}" for i, o, p in rows]
        return "\n".join(lines)
    return "\n".join(f"{i:4d}  {o:<8s}  {p:.4f}" for i, o, p in rows)


# ---------------------------------------------------------------------- roc


def _cmd_roc(args) -> str:
    curve = roc_curve(RayleighRician(args.snr), args.prior, args.points)
    fmt = args.format or "table"
    if fmt == "json":
        return curve.to_json()
    if fmt == "csv":
        return curve.to_csv()
    lines = [f"{'threshold':>10s} {'pfa':>8s} {'pd':>8s} {'ppv':>8s}"]
    lines += [
        f"{pt.threshold:10.4f} {pt.pfa:8.4f} {pt.pd:8.4f} {pt.ppv:8.4f}"
        for pt in curve.points
    ]
    return "\n".join(lines)


# ---------------------------------------------------------------- threshold


def _cmd_threshold(args) -> str:
    point = threshold_for_ppv(RayleighRician(args.snr), args.prior, args.target_ppv)
    fmt = args.format or "table"
    if fmt == "json":
        return _json_dumps(
            {
                "threshold": point.threshold,
                "pfa": point.pfa,
                "pd": point.pd,
                "ppv": point.ppv,
            }
        )
    if fmt == "csv":
        return (
            "threshold,pfa,pd,ppv\n"
            f"{point.threshold:.6f},{point.pfa:.6f},{point.pd:.6f},{point.ppv:.6f}"
        )
    return (
        f"threshold {point.threshold:.4f}\n"
        f"pfa       {point.pfa:.4f}\n"
        f"pd        {point.pd:.4f}\n"
        f"ppv       {point.ppv:.4f}"
    )


# -------------------------------------------------------------------- sweep


def _cmd_sweep(args) -> str:
    if not args.pfa:
        raise _Usage("at least one --pfa is required")
    table = posterior_sweep(args.pfa, args.prior, args.points)
    fmt = args.format or "table"
    if fmt == "json":
        return _json_dumps(
            {
                "prior": table.prior,
                "pfa_values": list(table.pfa_values),
                "pd_values": list(table.pd_values),
                "columns": [list(col) for col in table.columns],
            }
        )
    header = ["pd"] + [f"posterior_pfa_{v:g}" for v in table.pfa_values]
    if fmt == "csv":
        lines = [",".join(header)]
        for j, pd in enumerate(table.pd_values):
            cells = [f"{pd:.6f}"] + [f"{col[j]:.6f}" for col in table.columns]
            lines.append(",".join(cells))
        return "\n".join(lines)
    lines = ["  ".join(f"{h:>18s}" for h in header)]
    for j, pd in enumerate(table.pd_values):
        cells = [f"{pd:18.4f}"] + [f"{col[j]:18.4f}" for col in table.columns]
        lines.append("  ".join(cells))
    return "\n".join(lines)


# ----------------------------------------------------------------- simulate


def _cmd_simulate(args) -> str:
    if (args.threshold is None) == (args.target_pfa is None):
        raise _Usage("exactly one of --threshold / --target-pfa is required")
    threshold = (
        args.threshold if args.threshold is not None else threshold_of_pfa(args.target_pfa)
    )
    config = SimulationConfig(
        model=RayleighRician(args.snr),
        threshold=threshold,
        prior=args.prior,
        trials=args.trials,
        seed=args.seed,
    )
    report = simulate(config, workers=args.workers)
    fmt = args.format or "json"
    if fmt == "json":
        return report.to_json()
    obj = report.to_json_obj()
    if fmt == "csv":
        lines = ["key,value"]
        for group in ("counts", "estimates", "ci_halfwidth_3sigma"):
            for key, value in obj[group].items():
                rendered = "" if value is None else (
                    f"{value:.6f}" if isinstance(value, float) else str(value)
                )
                lines.append(f"{group}.{key},{rendered}")
        return "\n".join(lines)
    lines = []
    for group in ("counts", "estimates", "ci_halfwidth_3sigma"):
        for key, value in obj[group].items():
            rendered = "n/a" if value is None else (
                f"{value:.4f}" if isinstance(value, float) else str(value)
            )
            lines.append(f"{group + '.' + key:<32s} {rendered}")
    return "\n".join(lines)


# ------------------------------------------------------------------ plumbing


class _Usage(Exception):
    """Post-parse usage error; rendered like argparse's own (exit 2)."""


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("csv", "json", "table"), default=None,
        help="output format (default: table; simulate defaults to json)",
    )
    common.add_argument("--out", metavar="FILE", default=None, help="write output to FILE")
    common.add_argument(
        "--seed", type=_seed_flag, default=0,
        help="random seed for commands that sample (default 0)",
    )

    parser = argparse.ArgumentParser(
        prog="bayesroc",
        description="Bayesian detection toolkit: posteriors, PPV-enhanced ROC curves, "
        "sequential looks and Monte Carlo validation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("posterior", parents=[common], help="single-look posterior")
    p.add_argument("--pd", type=_probability_flag, required=True)
    p.add_argument("--pfa", type=_probability_flag, required=True)
    p.add_argument("--prior", type=_probability_flag, required=True)
    p.add_argument("--outcome", choices=("positive", "negative"), required=True)
    p.set_defaults(handler=_cmd_posterior)

    p = sub.add_parser("sequence", parents=[common], help="fold a +/- outcome string")
    p.add_argument("--pd", type=_probability_flag, required=True)
    p.add_argument("--pfa", type=_probability_flag, required=True)
    p.add_argument("--prior", type=_probability_flag, required=True)
    p.add_argument("--outcomes", required=True, help="string over '+'/'-', e.g. '++-'")
    p.set_defaults(handler=_cmd_sequence)

    p = sub.add_parser("roc", parents=[common], help="PPV-enhanced ROC curve")
    p.add_argument("--snr", type=_nonnegative_flag, required=True)
    p.add_argument("--prior", type=_probability_flag, default=0.5)
    p.add_argument("--points", type=_positive_int_flag, default=200)
    p.set_defaults(handler=_cmd_roc)

    p = sub.add_parser("threshold", parents=[common], help="solve threshold for a target PPV")
    p.add_argument("--snr", type=_nonnegative_flag, required=True)
    p.add_argument("--prior", type=_probability_flag, default=0.5)
    p.add_argument("--target-ppv", type=_probability_flag, required=True)
    p.set_defaults(handler=_cmd_threshold)

    p = sub.add_parser("sweep", parents=[common], help="posterior vs pd for several pfa")
    p.add_argument(
        "--pfa", type=_probability_flag, action="append", default=[],
        help="repeatable; one posterior column per value",
    )
    p.add_argument("--prior", type=_probability_flag, required=True)
    p.add_argument("--points", type=_positive_int_flag, default=101)
    p.set_defaults(handler=_cmd_sweep)

    p = sub.add_parser("simulate", parents=[common], help="seeded Monte Carlo report")
    p.add_argument("--snr", type=_nonnegative_flag, required=True)
    p.add_argument("--threshold", type=_nonnegative_flag, default=None)
    p.add_argument("--target-pfa", type=_probability_flag, default=None)
    p.add_argument("--prior", type=_probability_flag, required=True)
    p.add_argument("--trials", type=_positive_int_flag, default=100000)
    p.add_argument("--workers", type=_positive_int_flag, default=1)
    p.set_defaults(handler=_cmd_simulate)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        text = args.handler(args)
    except _Usage as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (IndeterminateUpdate, IndeterminateLikelihood) as exc:
        print(f"indeterminate: {exc}", file=sys.stderr)
        return EXIT_INDETERMINATE
    except UnachievableTarget as exc:
        print(f"unachievable: {exc}", file=sys.stderr)
        return EXIT_UNACHIEVABLE
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(text, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
