"""Command-line interface: run verification sweeps and evaluate expressions.

Usage:
    jetalg verify <check-id> [--m1 lo..hi] [--m2 lo..hi] [--s1 lo..hi]
                  [--s2 lo..hi] [--a1 p/q] [--a2 p/q]
                  [--variant poly|laurent|quotient]
                  [--rep natural|adjoint|sym2] [--samples N]
                  [--jobs N] [--format json|text]
    jetalg eval --in <A|D|g|smash|L|DL> "<expr>"
    jetalg report --all [--jobs N] [--format json|text]

Exit codes: 0 all executed checks pass, 1 any check failure, 2 usage or
configuration error.  Note that negative-control reports failures by
design (it proves the axiom checker is not vacuously green), so a full
catalog run exits 1.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .checks import (
    CATALOG,
    CheckConfig,
    InvalidConfig,
    Report,
    UnknownCheck,
    reports_to_json,
    run_catalog,
    run_check,
)
from .exprs import CONTEXTS, ElaborationError, ExprSyntaxError, eval_and_render
from .phirho import DegreeTooHigh, TruncationEscape


def _parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise argparse.ArgumentTypeError(f"range must look like lo..hi, got {text!r}")
    try:
        return (int(lo), int(hi))
    except ValueError:
        raise argparse.ArgumentTypeError(f"range bounds must be integers, got {text!r}") from None


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational p/q, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jetalg", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run one verification sweep")
    verify.add_argument("check", metavar="check-id", help=f"one of: {', '.join(CATALOG)}")
    _add_config_args(verify)
    verify.add_argument("--format", choices=("json", "text"), default="json")

    ev = sub.add_parser("eval", help="evaluate an expression in a chosen algebra")
    ev.add_argument("--in", dest="algebra", required=True, choices=CONTEXTS, help="target algebra")
    ev.add_argument("expr", help="expression text")

    report = sub.add_parser("report", help="run the whole check catalog")
    report.add_argument("--all", action="store_true", required=True, help="run every catalog check")
    report.add_argument("--jobs", type=int, default=1)
    report.add_argument("--format", choices=("json", "text"), default="json")
    return parser


def _add_config_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--m1", type=_parse_range, default=(-3, 3), metavar="lo..hi")
    p.add_argument("--m2", type=_parse_range, default=(0, 3), metavar="lo..hi")
    p.add_argument("--s1", type=_parse_range, default=(-3, 3), metavar="lo..hi")
    p.add_argument("--s2", type=_parse_range, default=(0, 3), metavar="lo..hi")
    p.add_argument("--a1", type=_parse_fraction, default=Fraction(1, 2), metavar="p/q")
    p.add_argument("--a2", type=_parse_fraction, default=Fraction(0), metavar="p/q")
    p.add_argument("--variant", choices=("poly", "laurent", "quotient"), default="poly")
    p.add_argument("--rep", choices=("natural", "adjoint", "sym2"), default="natural")
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--jobs", type=int, default=1)


def _config_from_args(args: argparse.Namespace) -> CheckConfig:
    return CheckConfig(
        m1=args.m1,
        m2=args.m2,
        s1=args.s1,
        s2=args.s2,
        a1=args.a1,
        a2=args.a2,
        variant=args.variant,
        rep=args.rep,
        samples=args.samples,
        jobs=args.jobs,
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "eval":
        try:
            print(eval_and_render(args.expr, args.algebra))
        except (ExprSyntaxError, ElaborationError, TruncationEscape, DegreeTooHigh) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        return 0

    if args.command == "verify":
        try:
            report = run_check(args.check, _config_from_args(args))
        except (UnknownCheck, InvalidConfig) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        print(report.to_json() if args.format == "json" else report.to_text())
        return 0 if report.passed else 1

    # report --all
    try:
        reports = run_catalog(CheckConfig(jobs=args.jobs))
    except InvalidConfig as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        print(reports_to_json(reports))
    else:
        print("\n".join(r.to_text() for r in reports))
    return 0 if all(r.passed for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
