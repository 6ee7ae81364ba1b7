"""Command-line interface.

Subcommands: ``analyze`` (full pipeline: oracle invariants, exact fixed
points, signed count), ``markov`` (random Markov walk with audits), and
``pillowcase`` (exact two-strand geometry).  Exit codes: 0 success, 1 usage
or domain error, 2 a degenerate signed count was encountered.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys

from .braids import BraidParseError, BraidWord, cycle_type, is_knot_closure, parse_braid, permutation
from .fixedpoints import SolverConfig, casson_lin
from .invariants import alexander, determinant, signature
from .markov import random_markov_walk
from .pillowcase import exact_classes, gamma_curves, torus_lift
from .report import (
    alexander_block,
    audit_block,
    base_report,
    classes_block,
    dump_report,
    lambda_block,
    pillowcase_block,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DEGENERATE = 2


def _solver_config(args) -> SolverConfig:
    return SolverConfig(
        seeds=args.seeds,
        residual_tol=args.tol,
        rng_seed=args.rng_seed,
    )


def _emit(report: dict, json_path: str | None) -> None:
    text = dump_report(report)
    if json_path:
        with open(json_path, "w") as fh:
            fh.write(text + "\n")
    print(text)


def _parse_word(args) -> BraidWord:
    return parse_braid(args.word, strands=args.strands)


def cmd_analyze(args) -> int:
    try:
        b = _parse_word(args)
    except BraidParseError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    cfg = _solver_config(args)
    report = base_report(str(b), b.strands, is_knot_closure(b), cfg)
    if not is_knot_closure(b):
        ct = list(cycle_type(permutation(b)))
        print(
            f"error: closure is a link, not a knot (cycle type {ct})",
            file=sys.stderr,
        )
        return EXIT_USAGE
    result = casson_lin(b, cfg)
    poly = alexander(b)
    report["classes"] = classes_block(result)
    report["lambda"] = lambda_block(result)
    report["nielsen_bracket"] = list(result.nielsen_bracket) if result.nielsen_bracket else None
    report["signature"] = signature(b)
    report["determinant"] = determinant(b)
    report["alexander"] = alexander_block(poly)
    if b.strands == 2:
        report["pillowcase"] = pillowcase_block(
            gamma_curves(b), exact_classes(b), torus_lift(b)
        )
    _emit(report, args.json)
    return EXIT_DEGENERATE if result.lam is None else EXIT_OK


def cmd_markov(args) -> int:
    try:
        b = _parse_word(args)
    except BraidParseError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    cfg = _solver_config(args)
    report = base_report(str(b), b.strands, is_knot_closure(b), cfg)
    if not is_knot_closure(b):
        ct = list(cycle_type(permutation(b)))
        print(
            f"error: closure is a link, not a knot (cycle type {ct})",
            file=sys.stderr,
        )
        return EXIT_USAGE
    audits = random_markov_walk(b, args.steps, rng_seed=args.rng_seed, cfg=cfg)
    report["markov_audits"] = [audit_block(a) for a in audits]
    _emit(report, args.json)
    for audit in audits:
        if not audit.passed:
            print(
                f"audit failed ({audit.reason}) at move: {audit.move}",
                file=sys.stderr,
            )
            return EXIT_DEGENERATE
    return EXIT_OK


def _write_curve_csv(path: str, b: BraidWord, samples: int = 256) -> None:
    curves = gamma_curves(b)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["curve", "alpha", "theta"])
        for k in range(samples):
            alpha = 2.0 * math.pi * k / samples
            writer.writerow(["id", alpha, 0.0])
            theta = (curves.q * (math.pi - alpha)) % (2.0 * math.pi)
            writer.writerow(["beta", alpha, theta])
        for p in exact_classes(b):
            writer.writerow([f"class:{p.tag}", p.alpha_radians(), p.theta_radians()])


def cmd_pillowcase(args) -> int:
    try:
        b = _parse_word(args)
    except BraidParseError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    if b.strands != 2:
        print(
            f"error: pillowcase geometry needs exactly 2 strands, got {b.strands}",
            file=sys.stderr,
        )
        return EXIT_USAGE
    if not is_knot_closure(b):
        ct = list(cycle_type(permutation(b)))
        print(
            f"error: closure is a link, not a knot (cycle type {ct})",
            file=sys.stderr,
        )
        return EXIT_USAGE
    cfg = _solver_config(args)
    report = base_report(str(b), b.strands, is_knot_closure(b), cfg)
    report["pillowcase"] = pillowcase_block(
        gamma_curves(b), exact_classes(b), torus_lift(b)
    )
    if args.csv:
        _write_curve_csv(args.csv, b)
    _emit(report, args.json)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="braidrep",
        description=(
            "Traceless SU(2) representation data of a braid closure: exact "
            "fixed points of the braid action, their signed count, classical "
            "oracle invariants, Markov audits, and exact pillowcase geometry."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("word", help="braid word: whitespace-separated nonzero integers")
        p.add_argument("--strands", type=int, default=None, help="strand count (default: inferred)")
        p.add_argument("--seeds", type=int, default=SolverConfig.seeds, help="random solver starts")
        p.add_argument("--tol", type=float, default=SolverConfig.residual_tol, help="residual tolerance")
        p.add_argument("--rng-seed", type=int, default=0, help="random seed")
        p.add_argument("--json", default=None, help="also write the JSON report to this path")

    p_analyze = sub.add_parser("analyze", help="full pipeline for one braid word")
    common(p_analyze)
    p_analyze.set_defaults(func=cmd_analyze)

    p_markov = sub.add_parser("markov", help="random Markov walk with audits")
    common(p_markov)
    p_markov.add_argument("--steps", type=int, default=6, help="number of moves")
    p_markov.set_defaults(func=cmd_markov)

    p_pillow = sub.add_parser("pillowcase", help="exact two-strand geometry")
    common(p_pillow)
    p_pillow.add_argument("--csv", default=None, help="write curve point samples to this path")
    p_pillow.set_defaults(func=cmd_pillowcase)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return EXIT_USAGE if err.code else EXIT_OK
    try:
        return args.func(args)
    except (BraidParseError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
