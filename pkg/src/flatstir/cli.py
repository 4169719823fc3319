"""Command-line interface.

All results go to stdout, diagnostics to stderr.  Exit codes: 0 success,
1 verification mismatch, 2 usage error, 3 budget/resource, 4 network or
sequence data unavailable.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import mpmath

from . import analysis, bijection, counting, enumeration, oeis, series
from .config import Config, ConfigError, load_config
from .counting import CountContext
from .errors import (
    AlignmentError,
    BFileParseError,
    BudgetExceededError,
    ConvergenceError,
    FlatstirError,
    NonIntegralCoefficientError,
    SequenceUnavailableError,
)
from .partitions import parse_partition, partition_from_json
from .verify import VerifyLimits, run_verification
from .words import parse_word, word_from_json

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3
EXIT_NETWORK = 4


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
        return args.handler(args, cfg)
    except BudgetExceededError as exc:
        return _fail("budget", exc, EXIT_RESOURCE)
    except (SequenceUnavailableError, AlignmentError, BFileParseError) as exc:
        return _fail("network", exc, EXIT_NETWORK)
    except (ConvergenceError, NonIntegralCoefficientError) as exc:
        # exact/numeric cross-checks disagreeing is a verification failure
        return _fail("internal", exc, EXIT_MISMATCH)
    except (ConfigError, FlatstirError, ValueError) as exc:
        return _fail("usage", exc, EXIT_USAGE)
    except BrokenPipeError:
        return EXIT_OK


def _fail(category: str, exc: Exception, code: int) -> int:
    print(f"error: {category}: {exc}", file=sys.stderr)
    return code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flatstir",
        description="Enumerate, count and analyze flattened k-Stirling permutations "
        "and good k-colored set partitions.",
    )
    parser.add_argument("--config", help="path to a key=value config file")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="stream words or partitions")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--flattened", action="store_true", help="only flattened words")
    p.add_argument("--as", dest="kind", choices=("words", "partitions"), default="words")
    p.add_argument("--format", choices=("text", "jsonl"), default="text")
    p.add_argument("--budget", type=int)
    p.add_argument("--force", action="store_true", help="ignore the enumeration budget")
    p.set_defaults(handler=cmd_enumerate)

    p = sub.add_parser("count", help="count flattened words of order n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument(
        "--method",
        choices=("recurrence", "identity", "egf", "series-approx", "bruteforce"),
        default="recurrence",
    )
    p.add_argument("--precision-bits", type=int, default=128)
    p.add_argument("--budget", type=int)
    p.add_argument("--force", action="store_true")
    p.set_defaults(handler=cmd_count)

    p = sub.add_parser("table", help="totals and run-refined counts up to max-n")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--format", choices=("md", "csv", "json"), default="md")
    p.add_argument("--budget", type=int)
    p.add_argument("--force", action="store_true")
    p.set_defaults(handler=cmd_table)

    p = sub.add_parser("bijection", help="map stdin through the bijection")
    p.add_argument("--direction", choices=("forward", "inverse"), required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(handler=cmd_bijection)

    p = sub.add_parser("poly", help="print the descent polynomial of order n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--method", choices=("egf", "bruteforce"), default="egf")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--budget", type=int)
    p.add_argument("--force", action="store_true")
    p.set_defaults(handler=cmd_poly)

    p = sub.add_parser("egf", help="print exact rational EGF coefficients")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--order", type=int, default=None, help="truncation order N")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(handler=cmd_egf)

    p = sub.add_parser("verify", help="run the full cross-validation suite")
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--max-k", type=int, default=4)
    p.add_argument("--budget", type=int)
    p.add_argument("--offline", action="store_true", help="skip network fetches")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("oeis", help="cross-check counts against a published sequence")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max-n", type=int, default=9)
    p.add_argument("--offline", action="store_true")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(handler=cmd_oeis)

    p = sub.add_parser("conjecture", help="unimodality / real-rootedness evidence report")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--format", choices=("md", "json"), default="md")
    p.set_defaults(handler=cmd_conjecture)

    return parser


def _budget(args: argparse.Namespace, cfg: Config) -> int:
    return args.budget if getattr(args, "budget", None) is not None else cfg.budget


def cmd_enumerate(args: argparse.Namespace, cfg: Config) -> int:
    budget = _budget(args, cfg)
    if args.kind == "partitions":
        if args.flattened:
            raise ValueError("--flattened applies to words; every good partition "
                             "already corresponds to a flattened word")
        for p in enumeration.gen_gcp(args.n, args.k, budget=budget, force=args.force):
            print(p.to_json() if args.format == "jsonl" else p.to_text())
    else:
        if args.flattened:
            stream = enumeration.gen_flattened(args.n, args.k, budget=budget, force=args.force)
        else:
            stream = enumeration.gen_stirling(args.n, args.k, budget=budget, force=args.force)
        for w in stream:
            print(w.to_json() if args.format == "jsonl" else w.to_text())
    return EXIT_OK


def cmd_count(args: argparse.Namespace, cfg: Config) -> int:
    ctx = CountContext()
    if args.method == "recurrence":
        print(counting.count_flattened_recurrence(args.n, args.k, ctx))
    elif args.method == "identity":
        print(counting.count_flattened_identity(args.n, args.k, ctx))
    elif args.method == "egf":
        egf = series.egf_flattened(args.k, args.n - 1, ctx)
        print(egf.egf_coefficient(args.n - 1))
    elif args.method == "series-approx":
        approx, rounded = counting.count_flattened_series_approx(
            args.n - 1, args.k, args.precision_bits
        )
        print(rounded)
        print(mpmath.nstr(approx, 30), file=sys.stderr)
    else:
        total = sum(
            1
            for _ in enumeration.gen_flattened(
                args.n, args.k, budget=_budget(args, cfg), force=args.force
            )
        )
        print(total)
    return EXIT_OK


def cmd_table(args: argparse.Namespace, cfg: Config) -> int:
    table = counting.count_table(
        args.k, args.max_n, budget=_budget(args, cfg), force=args.force
    )
    skipped = [row.n for row in table.rows if row.run_refined is None]
    if skipped:
        print(
            f"note: run-refined columns skipped beyond the budget at n={skipped}",
            file=sys.stderr,
        )
    if args.format == "json":
        payload = {
            "k": table.k,
            "rows": [
                {
                    "n": row.n,
                    "stirling_words": enumeration.predicted_stirling_count(row.n, table.k),
                    "total": row.total,
                    "runs": list(row.run_refined) if row.run_refined is not None else None,
                }
                for row in table.rows
            ],
        }
        print(json.dumps(payload))
        return EXIT_OK
    width = max((len(row.run_refined or ())) for row in table.rows)
    header = ["n", "words", "flattened"] + [f"runs={s}" for s in range(1, width + 1)]
    body = []
    for row in table.rows:
        refined = list(row.run_refined) if row.run_refined is not None else []
        cells = [str(row.n), str(enumeration.predicted_stirling_count(row.n, table.k)),
                 str(row.total)]
        cells += [str(c) for c in refined] + [""] * (width - len(refined))
        body.append(cells)
    if args.format == "csv":
        print(",".join(header))
        for cells in body:
            print(",".join(cells))
    else:
        print("| " + " | ".join(header) + " |")
        print("|" + "|".join(" --- " for _ in header) + "|")
        for cells in body:
            print("| " + " | ".join(cells) + " |")
    return EXIT_OK


def cmd_bijection(args: argparse.Namespace, cfg: Config) -> int:
    payload = sys.stdin.read().strip()
    if not payload:
        raise ValueError("expected one object on standard input")
    if args.direction == "forward":
        p = (
            partition_from_json(payload)
            if args.format == "json"
            else parse_partition(payload, args.k)
        )
        w = bijection.phi(p)
        print(w.to_json() if args.format == "json" else w.to_text())
    else:
        w = (
            word_from_json(payload)
            if args.format == "json"
            else parse_word(payload, args.k)
        )
        p = bijection.phi_inverse(w)
        print(p.to_json() if args.format == "json" else p.to_text())
    return EXIT_OK


def cmd_poly(args: argparse.Namespace, cfg: Config) -> int:
    ctx = CountContext()
    if args.method == "egf":
        egf = series.descent_egf(args.k, args.n - 1, ctx)
        poly = series.extract_descent_polynomial(egf, args.n - 1)
    else:
        poly = analysis.descent_polynomial_bruteforce(
            args.n, args.k, budget=_budget(args, cfg), force=args.force
        )
    if args.format == "json":
        print(json.dumps({"n": args.n, "k": args.k, "coefficients": list(poly.coeffs)}))
    else:
        print(poly.to_text())
    return EXIT_OK


def cmd_egf(args: argparse.Namespace, cfg: Config) -> int:
    order = args.order if args.order is not None else cfg.truncation_order
    egf = series.egf_flattened(args.k, order)
    fractions = [_frac_str(c) for c in egf.coeffs]
    if args.format == "json":
        print(json.dumps({"k": args.k, "order": order, "coefficients": fractions}))
    else:
        for n, text in enumerate(fractions):
            print(f"{n} {text}")
    return EXIT_OK


def _frac_str(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}" if c.denominator != 1 else str(c.numerator)


def cmd_verify(args: argparse.Namespace, cfg: Config) -> int:
    limits = VerifyLimits(
        max_n=args.max_n,
        max_k=args.max_k,
        budget=_budget(args, cfg),
        offline_oeis=args.offline,
        cache_dir=cfg.cache_dir,
        oeis_timeout=cfg.oeis_timeout,
    )
    results = run_verification(limits)
    failures = 0
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        print(f"{status} {r.name} ({r.seconds:.1f}s): {r.detail}")
        failures += 0 if r.ok else 1
    if failures:
        print(f"error: verification: {failures} check(s) failed", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_oeis(args: argparse.Namespace, cfg: Config) -> int:
    report = oeis.cross_check(
        args.k,
        args.max_n,
        offline=args.offline,
        cache_dir=cfg.cache_dir,
        timeout=cfg.oeis_timeout,
    )
    if args.format == "json":
        payload = {
            "k": report.k,
            "sequence": report.sequence_id,
            "source": report.source,
            "shift": report.shift,
            "rows": [
                {"n": r.n, "computed": r.computed, "expected": r.expected, "match": r.match}
                for r in report.rows
            ],
            "all_match": report.all_match,
        }
        print(json.dumps(payload))
    else:
        print(f"{report.sequence_id} (source: {report.source}, shift {report.shift})")
        for r in report.rows:
            flag = "ok" if r.match else ("MISMATCH" if r.expected is not None else "missing")
            print(f"n={r.n} computed={r.computed} expected={r.expected} {flag}")
    if not report.all_match:
        print("error: verification: sequence mismatch", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_conjecture(args: argparse.Namespace, cfg: Config) -> int:
    rows = analysis.conjecture_report(args.k, args.max_n)
    if args.format == "json":
        payload = [
            {
                "n": r.n,
                "k": r.k,
                "coefficients": list(r.coefficients),
                "unimodal": r.unimodal,
                "real_rooted": r.real_rooted,
            }
            for r in rows
        ]
        print(json.dumps(payload))
    else:
        print("| n | k | polynomial | unimodal | real-rooted |")
        print("| --- | --- | --- | --- | --- |")
        for r in rows:
            poly = series.IntPolynomial(r.coefficients).to_text()
            print(f"| {r.n} | {r.k} | {poly} | {r.unimodal} | {r.real_rooted} |")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
