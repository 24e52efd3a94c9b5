"""Command-line front end.

Subcommands: check, sqroot, count, sweep, theory.  Exit statuses are a
stable scripting contract: 0 success, 1 negative decision, 2 input error,
3 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .census import (
    fmt12,
    record_line,
    rows_to_csv,
    run_count,
    run_sweep,
    witness_line,
)
from .config import CensusBudgetError, RunConfig, as_fraction
from .polynomials import PolynomialParseError, format_poly, parse_poly
from .roots import RootCertificationError
from .salem import Kind, classify
from .squarerootable import find_decompositions, verify_decomposition
from .theory import mean_multiplicity_bound, predict_salem_count, predict_square_rootable_count

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


def _common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--precision-bits", type=int, default=256, help="working precision for root enclosures")
    parser.add_argument("--budget", type=int, default=10**9, help="enumeration candidate cap")
    parser.add_argument("--shards", type=int, default=None, help="worker count (default: all CPUs)")
    parser.add_argument("--format", choices=("csv", "json"), default="csv", help="report format")
    parser.add_argument(
        "--resume",
        nargs="?",
        const="",
        default=None,
        metavar="DIR",
        help="checkpoint shards under DIR and resume from it (empty uses $SALEM_CENSUS_DIR)",
    )
    parser.add_argument("--seed", type=int, default=None, help="seed for report-level sampling")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="salem-census", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="classify a polynomial")
    p_check.add_argument("poly", help="coefficients '1,-3,1' or a string like 'x^2-3x+1'")
    _common_flags(p_check)

    p_sqroot = sub.add_parser("sqroot", help="find square-rootability witnesses of a Salem polynomial")
    p_sqroot.add_argument("poly")
    _common_flags(p_sqroot)

    p_count = sub.add_parser("count", help="run one census point")
    p_count.add_argument("--m", type=int, required=True, help="half-degree")
    p_count.add_argument("--max", dest="q", required=True, help="Salem bound Q")
    p_count.add_argument("--sq", action="store_true", help="also run the square-rootable census")
    _common_flags(p_count)

    p_sweep = sub.add_parser("sweep", help="census over several bounds plus a slope fit")
    p_sweep.add_argument("--m", type=int, required=True)
    p_sweep.add_argument("--max", dest="q_list", required=True, help="comma-separated Q values")
    p_sweep.add_argument("--sq", action="store_true")
    _common_flags(p_sweep)

    p_theory = sub.add_parser("theory", help="closed-form predictions")
    p_theory.add_argument("--m", type=int, default=None)
    p_theory.add_argument("--max", dest="q", default=None)
    p_theory.add_argument("--dim", type=int, default=None, help="hyperbolic dimension n")
    p_theory.add_argument("--length", type=float, default=None, help="geodesic length cutoff L")
    _common_flags(p_theory)

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        precision_bits=args.precision_bits,
        budget=args.budget,
        shards=args.shards,
        output_format=args.format,
        seed=args.seed,
    )


def _workdir_from_args(args: argparse.Namespace):
    if args.resume is None:
        return None
    if args.resume:
        return Path(args.resume)
    env = os.environ.get("SALEM_CENSUS_DIR")
    if not env:
        raise ValueError("--resume without a directory needs SALEM_CENSUS_DIR set")
    return Path(env)


def cmd_check(args) -> int:
    poly = parse_poly(args.poly)
    result = classify(poly, args.precision_bits)
    if result.kind is Kind.SALEM:
        record = result.record
        lam = (record.lambda_bracket[0] + record.lambda_bracket[1]) / 2
        print(f"Salem: lambda ~ {fmt12(lam)}, m = {record.m}")
        print(f"  minimal polynomial: {format_poly(poly)}")
        print(f"  record: {record_line(record)}")
    elif result.kind is Kind.CYCLOTOMIC:
        suffix = f" (order {result.cyclotomic_order})" if result.cyclotomic_order else ""
        print(f"Cyclotomic{suffix}")
    else:
        print("ReducibleOrOther")
    return EXIT_OK


def cmd_sqroot(args) -> int:
    poly = parse_poly(args.poly)
    result = classify(poly, args.precision_bits)
    if result.kind is not Kind.SALEM:
        print(f"input is not a Salem minimal polynomial: {result.kind.value}", file=sys.stderr)
        return EXIT_INPUT
    config = _config_from_args(args)
    witnesses = find_decompositions(result.record, config)
    for w in witnesses:
        flag = "verified" if verify_decomposition(w) else "FAILED"
        print(f"{witness_line(w)}; {flag}")
    if not witnesses:
        print("not square-rootable over the rationals")
        return EXIT_NEGATIVE
    return EXIT_OK


def cmd_count(args) -> int:
    config = _config_from_args(args)
    result = run_count(args.m, as_fraction(args.q), args.sq, config, _workdir_from_args(args))
    if config.output_format == "json":
        payload = {
            "row": result.row.to_dict(),
            "records": result.stream_lines(),
        }
        print(json.dumps(payload, indent=2))
    else:
        for line in result.stream_lines():
            print(line)
        print(rows_to_csv([result.row]), end="")
    return EXIT_OK


def cmd_sweep(args) -> int:
    config = _config_from_args(args)
    q_values = [as_fraction(part) for part in args.q_list.split(",") if part.strip()]
    result = run_sweep(args.m, q_values, args.sq, config, _workdir_from_args(args))
    if config.output_format == "json":
        payload = {
            "rows": [row.to_dict() for row in result.rows],
            "fitted_slope": result.fitted_slope,
            "expected_exponent": result.expected_exponent,
            "slope_deviation": result.slope_deviation,
            "errors": result.errors,
        }
        print(json.dumps(payload, indent=2))
    else:
        print(rows_to_csv(result.rows), end="")
        print(
            f"# fitted_slope={fmt12(result.fitted_slope)} "
            f"expected={fmt12(result.expected_exponent)} "
            f"deviation={fmt12(result.slope_deviation)}"
        )
        for err in result.errors:
            print(f"# error {err}", file=sys.stderr)
    return EXIT_OK if not result.errors else EXIT_BUDGET


def cmd_theory(args) -> int:
    if args.dim is not None or args.length is not None:
        if args.dim is None or args.length is None:
            raise ValueError("theory needs both --dim and --length for the geometry report")
        report = mean_multiplicity_bound(args.dim, args.length)
        payload = {
            "n": report.n,
            "L": report.L,
            "gamma_h": float(report.gamma_h),
            "distinct_lengths_bound": float(report.distinct_lengths_bound),
            "mean_mult_lower": float(report.mean_mult_lower),
            "c_prime": float(report.c_prime),
            "delta57": report.delta57,
        }
    else:
        if args.m is None or args.q is None:
            raise ValueError("theory needs either --m/--max or --dim/--length")
        q = as_fraction(args.q)
        sq = predict_square_rootable_count(args.m, q)
        payload = {
            "m": args.m,
            "Q": float(q),
            "all_main": float(predict_salem_count(args.m, q).value),
            "sq_lower": float(sq.lower),
            "sq_upper": float(sq.upper),
        }
    print(json.dumps(payload, indent=2))
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "check": cmd_check,
        "sqroot": cmd_sqroot,
        "count": cmd_count,
        "sweep": cmd_sweep,
        "theory": cmd_theory,
    }
    try:
        return handlers[args.command](args)
    except PolynomialParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CensusBudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, RootCertificationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
