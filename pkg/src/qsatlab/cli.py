"""Command-line surface: parse | sat | build | check | example1 | prop | sweep.

Exit codes: 0 success/decided, 1 golden mismatch or (with --strict) a
proposition failure, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import checker, experiments, linalg, qassign
from .errors import GoldenMismatchError, QsatLabError
from .exact import GaussianRational
from .formula import (
    Evaluation,
    dimension,
    parse_dimacs,
    satisfying_evaluations,
    to_dimacs,
)
from .qassign import EmbeddingMode, natural_conversion, quantum_assignment


def _read_formula(path: str):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise QsatLabError(f"cannot read {path}: {exc}")
    return parse_dimacs(text)


def parse_scale(text: str):
    """--scale 're,im'; exact when both parts are rational, complex otherwise."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) == 1:
        parts.append("0")
    if len(parts) != 2:
        raise QsatLabError(f"--scale expects 're' or 're,im', got {text!r}")
    try:
        return GaussianRational(Fraction(parts[0]), Fraction(parts[1]))
    except (ValueError, ZeroDivisionError):
        pass
    try:
        return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        raise QsatLabError(f"cannot parse --scale value {text!r}")


def _parse_eval(text: str, n: int) -> Evaluation:
    if len(text) != n:
        raise QsatLabError(f"--eval must have length n={n}, got {len(text)} bits")
    try:
        return Evaluation.from_bitstring(text)
    except ValueError as exc:
        raise QsatLabError(str(exc))


def _assignment_json(q: qassign.QuantumAssignment) -> dict:
    return {
        "clause_index": q.clause_index,
        "mode": q.mode.value,
        "scale": linalg.scalar_to_pair(q.scale),
        "clause_vars": list(q.clause_vars),
        "matrix": linalg.matrix_to_json(q.matrix),
    }


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def _cmd_parse(args) -> int:
    f = _read_formula(args.input)
    k, n = dimension(f)
    if args.format == "json":
        print(json.dumps({"formula": str(f), "dimacs": to_dimacs(f), "k": k, "n": n, "m": f.m}))
    else:
        print(f"formula: {f}")
        print(f"dimension (k, n): ({k}, {n})")
        print(f"clauses m: {f.m}")
    return 0


def _cmd_sat(args) -> int:
    f = _read_formula(args.input)
    sats = satisfying_evaluations(f)
    if args.format == "json":
        print(json.dumps([v.as_bitstring() for v in sats]))
    else:
        for v in sats:
            print(v.as_bitstring())
        print(f"# {len(sats)} satisfying evaluation(s)", file=sys.stderr)
    return 0


def _cmd_build(args) -> int:
    f = _read_formula(args.input)
    if args.eval is None:
        raise QsatLabError("build requires --eval")
    v = _parse_eval(args.eval, f.n)
    scale = parse_scale(args.scale)
    assignments = [
        quantum_assignment(f, i, v, EmbeddingMode(args.mode), scale)
        for i in range(1, f.m + 1)
    ]
    if args.format == "json":
        print(
            json.dumps(
                {
                    "mode": args.mode,
                    "evaluation": v.as_bitstring(),
                    "assignments": [_assignment_json(q) for q in assignments],
                }
            )
        )
    else:
        for q in assignments:
            clause = f.clause(q.clause_index)
            print(f"clause {q.clause_index}: {clause}  vars {list(q.clause_vars)}")
            print(linalg.matrix_to_grid(q.matrix))
            print()
    return 0


def _check_one(f, v, mode, scale, cfg):
    assignments = [
        quantum_assignment(f, i, v, mode, scale) for i in range(1, f.m + 1)
    ]
    verdict = checker.qsat_decide(assignments, cfg)
    return checker.verdict_to_json(
        verdict, epsilon=cfg.epsilon, mode=mode.value, evaluation=v.as_bitstring()
    )


def _cmd_check(args) -> int:
    f = _read_formula(args.input)
    mode = EmbeddingMode(args.mode)
    scale = parse_scale(args.scale)
    epsilon = args.epsilon if args.epsilon is not None else checker.default_epsilon(f.n)
    cfg = checker.PromiseConfig(epsilon=epsilon, tol=args.tol)
    if args.eval is not None:
        evaluations = [_parse_eval(args.eval, f.n)]
    else:
        evaluations = satisfying_evaluations(f)
        if not evaluations:
            print("# formula is classically unsatisfiable; no instances", file=sys.stderr)
    for v in evaluations:
        print(json.dumps(_check_one(f, v, mode, scale, cfg)))
    return 0


def _cmd_example1(args) -> int:
    try:
        report = experiments.verify_example1()
    except GoldenMismatchError as exc:
        print(f"GOLDEN MISMATCH: {exc}", file=sys.stderr)
        if exc.report is not None:
            for name, ok in exc.report.checks.items():
                print(f"  {name}: {'ok' if ok else 'MISMATCH'}", file=sys.stderr)
        return 1
    print(f"formula: {report.formula}")
    print("outer product |v(x)v(y)><v(x)v(y)|:")
    print(linalg.matrix_to_grid(report.outer_xy))
    print("outer product |v(x)v(z)><v(x)v(z)|:")
    print(linalg.matrix_to_grid(report.outer_xz))
    print("clause-1 projector diagonal:", [str(e) for e in report.projector_1.diagonal()])
    print("clause-2 projector diagonal:", [str(e) for e in report.projector_2.diagonal()])
    print("natural conversion |101> index:", experiments.GOLDEN_VECTOR_INDEX)
    print(f"residuals at |101>: ({report.residuals[0]}, {report.residuals[1]})")
    for name, ok in report.checks.items():
        print(f"check {name}: {'ok' if ok else 'MISMATCH'}")
    print("all golden values matched")
    return 0


def _prop_report_json(rep: experiments.PropositionReport) -> dict:
    return {
        "pair": list(rep.clause_pair),
        "proposition_holds": rep.proposition_holds,
        "permutations_searched": rep.permutations_searched,
        "witnesses": [
            {
                "evaluation": w.evaluation.as_bitstring(),
                "residual_p": experiments._format_residual(w.residual_p),
                "residual_q": experiments._format_residual(w.residual_q),
            }
            for w in rep.witnesses
        ],
        "residual_table": [
            {
                "evaluation": w.evaluation.as_bitstring(),
                "residual_p": experiments._format_residual(w.residual_p),
                "residual_q": experiments._format_residual(w.residual_q),
            }
            for w in rep.residual_table
        ],
        "natural_successes": [v.as_bitstring() for v in rep.natural_successes],
    }


def _cmd_prop(args) -> int:
    f = _read_formula(args.input)
    if args.pair is not None:
        try:
            p, q = (int(x) for x in args.pair.split(","))
        except ValueError:
            raise QsatLabError(f"--pair expects 'p,q', got {args.pair!r}")
        reports = [experiments.proposition_witness_search(f, p, q, args.permute)]
    else:
        reports = experiments.proposition_search_all_pairs(f, args.permute)
        if not reports:
            print("# no clause pair with distinct variable sets", file=sys.stderr)
    if args.format == "json":
        print(json.dumps({"formula": str(f), "reports": [_prop_report_json(r) for r in reports]}))
    else:
        for rep in reports:
            p, q = rep.clause_pair
            print(f"pair ({p},{q}): proposition_holds={rep.proposition_holds}")
            for w in rep.witnesses:
                print(
                    f"  witness v={w.evaluation}  residuals "
                    f"({experiments._format_residual(w.residual_p)}, "
                    f"{experiments._format_residual(w.residual_q)})"
                )
            if not rep.proposition_holds:
                for w in rep.residual_table:
                    print(
                        f"  v={w.evaluation}  residuals "
                        f"({experiments._format_residual(w.residual_p)}, "
                        f"{experiments._format_residual(w.residual_q)})"
                    )
            if rep.natural_successes:
                joined = ", ".join(str(v) for v in rep.natural_successes)
                print(f"  natural conversion succeeds for: {joined}")
    if args.strict and any(not r.proposition_holds for r in reports):
        return 1
    return 0


def _cmd_sweep(args) -> int:
    cfg = experiments.SweepConfig(
        k=args.k,
        n=args.n,
        m=args.m,
        mode="random" if args.random else "exhaustive",
        seed=args.seed,
        count=args.count,
        require_distinct_varsets=args.distinct_varsets,
        permute_literals=args.permute,
    )
    report = experiments.sweep(cfg)
    if args.out:
        csv_path, json_path = experiments.write_report(report, args.out)
        print(f"wrote {csv_path}")
        print(f"wrote {json_path}")
    for key, value in report.totals.items():
        print(f"{key}: {value}")
    return 0


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qsatlab",
        description="Clause projectors, quantum satisfiability decisions and "
        "natural-conversion counterexample sweeps over CNF formulas.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p, choices=("text", "json")):
        p.add_argument("--format", choices=choices, default="text")

    p_parse = sub.add_parser("parse", help="echo the normalized formula and (k, n)")
    p_parse.add_argument("input")
    add_format(p_parse)

    p_sat = sub.add_parser("sat", help="list satisfying evaluations")
    p_sat.add_argument("input")
    add_format(p_sat)

    p_build = sub.add_parser("build", help="dump projector matrices for an evaluation")
    p_build.add_argument("input")
    p_build.add_argument("--eval", help="satisfying evaluation bitstring (x1..xn)")
    p_build.add_argument("--mode", choices=("literal", "aligned"), default="literal")
    p_build.add_argument("--scale", default="1", help="scalar a as 're' or 're,im'")
    add_format(p_build)

    p_check = sub.add_parser("check", help="decide quantum satisfiability")
    p_check.add_argument("input")
    p_check.add_argument("--eval", help="evaluation bitstring; omitted = all satisfying")
    p_check.add_argument("--mode", choices=("literal", "aligned"), default="literal")
    p_check.add_argument("--scale", default="1")
    p_check.add_argument("--epsilon", type=float, default=None)
    p_check.add_argument("--tol", type=float, default=linalg.DEFAULT_TOL)

    sub.add_parser("example1", help="verify the golden worked example")

    p_prop = sub.add_parser("prop", help="proposition witness search")
    p_prop.add_argument("input")
    p_prop.add_argument("--pair", help="clause pair 'p,q' (1-based); omitted = all eligible")
    p_prop.add_argument("--permute", action="store_true", help="search literal orderings of clause q")
    p_prop.add_argument("--strict", action="store_true", help="exit 1 if any pair fails")
    add_format(p_prop)

    p_sweep = sub.add_parser("sweep", help="generate formulas and aggregate reports")
    p_sweep.add_argument("--k", type=int, required=True)
    p_sweep.add_argument("--n", type=int, required=True)
    p_sweep.add_argument("--m", type=int, required=True)
    p_sweep.add_argument("--random", action="store_true", help="seeded random instead of exhaustive")
    p_sweep.add_argument("--seed", type=int, default=0)
    p_sweep.add_argument("--count", type=int, default=0)
    p_sweep.add_argument("--permute", action="store_true")
    p_sweep.add_argument("--distinct-varsets", action="store_true", dest="distinct_varsets")
    p_sweep.add_argument("--out", help="directory for sweep.csv and sweep.json")

    return parser


_HANDLERS = {
    "parse": _cmd_parse,
    "sat": _cmd_sat,
    "build": _cmd_build,
    "check": _cmd_check,
    "example1": _cmd_example1,
    "prop": _cmd_prop,
    "sweep": _cmd_sweep,
}


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except GoldenMismatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (QsatLabError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
