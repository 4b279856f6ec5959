"""Command-line front end.

Every command accepts ``--json`` for machine-readable output; exit codes
are 0 on success, 1 for parse errors, 2 for domain errors, and 3 when a
verification command finds a failing check.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import commcontrol, matrep, obstruction
from .covering import (
    DeckElement,
    deck_act,
    decompose,
    delta_L,
    delta_R,
    inner_product,
)
from .errors import DomainError
from .expr import ParseError, _mul_values, parse_element, render_element, render_tensor
from .nfalgebra import unembed
from .qtensor import TensorElement, delta

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_DOMAIN = 2
EXIT_CHECK = 3


def _print_value(x, args) -> None:
    if isinstance(x, TensorElement):
        print(json.dumps(x.to_json()) if args.json else render_tensor(x, args.pretty))
    else:
        print(json.dumps(x.to_json()) if args.json else render_element(x, args.pretty))


def _add_expr_flags(p, two: bool = False):
    p.add_argument("--n", type=int, default=1, help="covering parameter")
    if two:
        p.add_argument("--lhs", required=True, help="left expression")
        p.add_argument("--rhs", required=True, help="right expression")
    else:
        p.add_argument("--expr", required=True, help="expression in the surface syntax")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--pretty", action="store_true", help="unicode rendering")


def cmd_norm(args) -> int:
    _print_value(parse_element(args.expr, args.n), args)
    return EXIT_OK


def cmd_star(args) -> int:
    _print_value(parse_element(args.expr, args.n).star(), args)
    return EXIT_OK


def cmd_mul(args) -> int:
    x = parse_element(args.lhs, args.n)
    y = parse_element(args.rhs, args.n)
    _print_value(_mul_values(x, y), args)
    return EXIT_OK


def cmd_grade(args) -> int:
    x = parse_element(args.expr, args.n)
    if isinstance(x, TensorElement):
        grades = x.zz_grade()
        if args.json:
            print(json.dumps({f"{j},{k}": v.to_json() for (j, k), v in grades.items()}))
        else:
            for (j, k), v in grades.items():
                print(f"({j},{k}): {render_tensor(v, args.pretty)}")
    else:
        grades = x.grade()
        if args.json:
            print(json.dumps({str(d): v.to_json() for d, v in grades.items()}))
        else:
            for d, v in grades.items():
                print(f"{d}: {render_element(v, args.pretty)}")
    return EXIT_OK


def cmd_act(args) -> int:
    x = parse_element(args.expr, args.n)
    if isinstance(x, TensorElement):
        raise DomainError("the deck action command takes a plain element")
    _print_value(deck_act(DeckElement(args.n, args.g), x), args)
    return EXIT_OK


def cmd_delta(args) -> int:
    if args.n != 1:
        raise DomainError("the comultiplication is defined on the base algebra; use --n 1")
    x = parse_element(args.expr, 1)
    _print_value(delta(x), args)
    return EXIT_OK


def cmd_delta_side(args, side: str) -> int:
    x = parse_element(args.expr, args.n)
    if isinstance(x, TensorElement):
        raise DomainError("one-sided comultiplications take a plain element")
    v = decompose(x)
    _print_value(delta_L(v) if side == "L" else delta_R(v), args)
    return EXIT_OK


def cmd_inner(args) -> int:
    x = parse_element(args.lhs, args.n)
    y = parse_element(args.rhs, args.n)
    if isinstance(x, TensorElement) or isinstance(y, TensorElement):
        raise DomainError("the inner product takes plain elements")
    ip = inner_product(x, y)
    _print_value(ip, args)
    if not args.json:
        base = unembed(ip)
        if base is not None:
            print(f"base form: {render_element(base, args.pretty)}")
    return EXIT_OK


def cmd_decomp(args) -> int:
    x = parse_element(args.expr, args.n)
    if isinstance(x, TensorElement):
        raise DomainError("decomposition takes a plain element")
    v = decompose(x)
    if args.json:
        print(json.dumps(v.to_json()))
    else:
        for j, a in enumerate(v.coeffs):
            print(f"slot {j}: {render_element(a, args.pretty)}")
    return EXIT_OK


def cmd_counterexample(args) -> int:
    if args.sweep:
        results = obstruction.scalar_sweep(args.n)
        payload = [
            {"lambda": l, "mu": m, "verdict": r.verdict,
             "witness_coefficient": r.witness_coefficient}
            for l, m, r in results
        ]
        if args.json:
            print(json.dumps({"n": args.n, "sweep": payload}))
        else:
            for item in payload:
                print(f"lambda={item['lambda']:>3}  mu={item['mu']:>3}  ->  {item['verdict']}")
        return EXIT_OK
    report = obstruction.counterexample_report(args.n)
    if args.json:
        print(json.dumps(report.to_json()))
    else:
        print(f"verdict: {report.verdict}")
        print(f"cross grade: {report.cross_grade}")
        print(f"cross term: {render_tensor(report.cross)}")
        if report.witness_coefficient:
            print(f"witness coefficient: {report.witness_coefficient}")
        for grade, diff in report.mismatches:
            print(f"mismatch at {grade}: {render_tensor(diff)}")
    return EXIT_OK


def cmd_commcheck(args) -> int:
    report = commcontrol.full_report(args.m, args.n)
    if args.json:
        print(json.dumps(report))
    else:
        for key in ("hopf", "restriction", "fixed_algebra"):
            print(f"{key}: {report[key]['status']}")
        equi = report["equivariance"]
        print(f"one-leg equivariance holds everywhere: {equi['one_leg_holds_everywhere']}")
        print(f"two-leg form fails for all nontrivial deck elements: "
              f"{equi['two_leg_fails_for_all_nontrivial']}")
    expected = (
        report["hopf"]["status"] == "pass"
        and report["restriction"]["status"] == "pass"
        and report["fixed_algebra"]["status"] == "pass"
        and report["equivariance"]["one_leg_holds_everywhere"]
    )
    return EXIT_OK if expected else EXIT_CHECK


def cmd_numcheck(args) -> int:
    report = matrep.numcheck_report(
        q=args.q, n=args.n, N=args.fock, L=args.cyc, tol=args.tol,
        pairs=args.pairs, seed=args.seed,
    )
    if args.json:
        print(json.dumps(report))
    else:
        for r in report["relations"]:
            print(f"{r['relation']:<28} residual {r['max_residual']:.3e}  "
                  f"margin k<={r['margin']}  {'pass' if r['pass'] else 'FAIL'}")
        print(f"root power residual: {report['root_power_residual']:.3e}")
        print(f"spectrum exact: {report['spectrum']['exact']}")
        print(f"crosscheck max residual ({report['crosscheck']['pairs']} pairs): "
              f"{report['crosscheck']['max_residual']:.3e}")
        print(f"status: {report['status']}")
    return EXIT_OK if report["status"] == "pass" else EXIT_CHECK


def cmd_report(args) -> int:
    from .report import generate_report

    summary = generate_report(
        args.out, q=args.q, n=args.n, fock=args.fock, cyc=args.cyc,
        tol=args.tol, seed=args.seed, pairs=args.pairs,
    )
    print(f"wrote {summary['csv']}")
    for fig in summary["figures"]:
        print(f"wrote {fig}")
    return EXIT_OK if summary["passed"] else EXIT_CHECK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="qcov",
        description="Exact engine for the q-deformed unitary pair and its cyclic covering algebra.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    for name, handler in (("norm", cmd_norm), ("star", cmd_star)):
        p = sub.add_parser(name, help=f"{name} of an expression")
        _add_expr_flags(p)
        p.set_defaults(func=handler)

    p = sub.add_parser("mul", help="normalised product of two expressions")
    _add_expr_flags(p, two=True)
    p.set_defaults(func=cmd_mul)

    p = sub.add_parser("grade", help="split an expression by degree")
    _add_expr_flags(p)
    p.set_defaults(func=cmd_grade)

    p = sub.add_parser("act", help="apply a deck transformation")
    _add_expr_flags(p)
    p.add_argument("--g", type=int, required=True, help="deck element (mod n)")
    p.set_defaults(func=cmd_act)

    p = sub.add_parser("delta", help="comultiplication of a base element")
    _add_expr_flags(p)
    p.set_defaults(func=cmd_delta)

    p = sub.add_parser("deltaL", help="left-sided comultiplication on the free module")
    _add_expr_flags(p)
    p.set_defaults(func=lambda a: cmd_delta_side(a, "L"))

    p = sub.add_parser("deltaR", help="right-sided comultiplication on the free module")
    _add_expr_flags(p)
    p.set_defaults(func=lambda a: cmd_delta_side(a, "R"))

    p = sub.add_parser("inner", help="deck-averaged inner product")
    _add_expr_flags(p, two=True)
    p.set_defaults(func=cmd_inner)

    p = sub.add_parser("decomp", help="split into free-module slots")
    _add_expr_flags(p)
    p.set_defaults(func=cmd_decomp)

    p = sub.add_parser("counterexample", help="graded obstruction replay")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--sweep", action="store_true", help="sweep the unit-scalar family")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("commcheck", help="finite cyclic-group control model")
    p.add_argument("--m", type=int, required=True, help="base group order")
    p.add_argument("--n", type=int, required=True, help="covering multiplicity")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_commcheck)

    p = sub.add_parser("numcheck", help="numeric relation and oracle checks")
    p.add_argument("--q", type=float, default=0.5)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--fock", type=int, default=64)
    p.add_argument("--cyc", type=int, default=8)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--pairs", type=int, default=20, help="random pairs for the oracle sweep")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_numcheck)

    p = sub.add_parser("report", help="write CSV summary and figures")
    p.add_argument("--out", default="reports", help="output directory")
    p.add_argument("--q", type=float, default=0.5)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--fock", type=int, default=64)
    p.add_argument("--cyc", type=int, default=8)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--pairs", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_report)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
