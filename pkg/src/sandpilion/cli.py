"""Command-line driver: sandpilion {tau,group,comb,verify,gf,export}."""
from __future__ import annotations

import argparse
import json
import sys

from .errors import BudgetExceeded, DisconnectedGraphError, InvalidParameters
from .formulas import gf_coefficients, predict_group, t_closed
from .graphs import (
    FamilyParams,
    build_bicoconut,
    build_coconut,
    build_left_comb,
    cone,
)
from .oracle import brute_force_tau
from .sandpile import comb_claims, mu, sandpile_group, tau
from .verify import CHECKS, SweepSpec, formula_table, parse_range, run_sweep, to_jsonl

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_BUDGET = 3


def _params(args) -> FamilyParams:
    return FamilyParams(args.p, args.s1, args.s2).require()


def _bicoconut_cone(args):
    return cone(build_bicoconut(_params(args)))


def cmd_tau(args) -> int:
    if args.method == "closed":
        value = t_closed(_params(args))
    elif args.method == "determinant":
        value = tau(_bicoconut_cone(args))
    else:
        value = brute_force_tau(_bicoconut_cone(args))
    print(value)
    return EXIT_OK


def cmd_group(args) -> int:
    params = _params(args)
    if args.method == "predictor":
        pred = predict_group(params)
        out = pred.to_group().to_json_dict()
        out["case"] = pred.case_tag.value
    else:
        out = sandpile_group(cone(build_bicoconut(params))).to_json_dict()
    print(json.dumps(out))
    return EXIT_OK


def cmd_comb(args) -> int:
    claims = comb_claims(args.p)
    tree = build_left_comb(args.p)
    m = mu(cone(tree))
    print(json.dumps({
        "p": args.p,
        "mu": m,
        "leaves": len(tree.leaves()),
        "claim1_odd": claims.claim1_odd,
        "claim2_minor": str(claims.claim2_minor),
        "cyclic": m <= 1,
    }))
    return EXIT_OK


def cmd_verify(args) -> int:
    checks = tuple(c.strip() for c in args.checks.split(",") if c.strip())
    spec = SweepSpec(
        parse_range(args.p),
        parse_range(args.s1),
        parse_range(args.s2),
        checks=checks,
        timestamp=not args.no_timestamp,
        jobs=args.jobs,
    )
    if args.format == "csv":
        text = formula_table(spec.points())
        output = args.output or "verify-report.csv"
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
        bad = [line for line in text.splitlines()[1:] if ",false" in line]
        print(f"{len(spec.points())} points, {2 * len(spec.points())} checks, "
              f"{sum(line.count(',false') for line in bad)} failures")
        for line in bad:
            print(line)
        return EXIT_FAILED if bad else EXIT_OK

    result = run_sweep(spec)
    output = args.output or "verify-report.jsonl"
    with open(output, "w", encoding="utf-8") as fh:
        fh.write(to_jsonl(result.records))
    print(result.summary())
    failures = result.failures()
    for rec in failures:
        print(json.dumps(rec))
    return EXIT_FAILED if failures else EXIT_OK


def cmd_gf(args) -> int:
    coeffs = gf_coefficients(args.s1, args.s2, args.terms)
    print(json.dumps([str(c) for c in coeffs]))
    return EXIT_OK


def cmd_export(args) -> int:
    if args.family == "bicoconut":
        g = build_bicoconut(_params(args))
    elif args.family == "coconut":
        g = build_coconut(args.p, args.s)
    else:
        g = build_left_comb(args.p)
    if args.cone:
        g = cone(g)
    text = g.to_dot() if args.format == "dot" else g.to_json() + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sandpilion",
        description="Spanning trees and sandpile groups of cones over coconut-type trees.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def family_args(sp, with_s=True):
        sp.add_argument("--p", type=int, required=True)
        if with_s:
            sp.add_argument("--s1", type=int, default=1)
            sp.add_argument("--s2", type=int, default=1)

    sp = sub.add_parser("tau", help="spanning-tree count of Cone(T(p,s1,s2))")
    family_args(sp)
    sp.add_argument("--method", choices=["closed", "determinant", "brute"], default="closed")
    sp.set_defaults(func=cmd_tau)

    sp = sub.add_parser("group", help="sandpile group of Cone(T(p,s1,s2))")
    family_args(sp)
    sp.add_argument("--method", choices=["predictor", "snf"], default="predictor")
    sp.set_defaults(func=cmd_group)

    sp = sub.add_parser("comb", help="cyclicity data for the cone over a left comb")
    family_args(sp, with_s=False)
    sp.set_defaults(func=cmd_comb)

    sp = sub.add_parser("verify", help="sweep parameter ranges and check every identity")
    sp.add_argument("--p", default="1..7", help="inclusive range, e.g. 1..7")
    sp.add_argument("--s1", default="1..4")
    sp.add_argument("--s2", default="1..4")
    sp.add_argument("--checks", default="tau,group,symmetry",
                    help=f"comma-separated subset of {','.join(CHECKS)}")
    sp.add_argument("--output", help="report path (default verify-report.jsonl / .csv)")
    sp.add_argument("--format", choices=["jsonl", "csv"], default="jsonl")
    sp.add_argument("--no-timestamp", action="store_true")
    sp.add_argument("--jobs", type=int, default=1, help="worker processes")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("gf", help="generating-function coefficients t(1..terms, s1, s2)")
    sp.add_argument("--s1", type=int, required=True)
    sp.add_argument("--s2", type=int, required=True)
    sp.add_argument("--terms", type=int, default=10)
    sp.set_defaults(func=cmd_gf)

    sp = sub.add_parser("export", help="write a family tree as DOT or JSON")
    sp.add_argument("--family", choices=["bicoconut", "coconut", "comb"], required=True)
    family_args(sp)
    sp.add_argument("--s", type=int, default=1, help="leaf count for coconut")
    sp.add_argument("--cone", action="store_true", help="export the cone instead")
    sp.add_argument("--format", choices=["dot", "json"], default="dot")
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_export)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InvalidParameters, DisconnectedGraphError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
