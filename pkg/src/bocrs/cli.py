"""Command-line entry point: ``bocrs <subcommand> ...``.

Output is JSON on stdout (sorted keys, every number as a decimal string) or
CSV where supported; timing and diagnostics go to stderr so that identical
invocations print identical bytes.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 solver
did not converge.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from fractions import Fraction

from .algebra import parse_rational, rational_str
from .coeffring import InvalidConstants, c_n_symbolic, c_n_numeric, check_divisibility
from .legendre import q_poly
from .recurrence import u_tilde_seq
from .spectral import (
    NO_REFERENCE,
    InvalidInput,
    NonInteger,
    SolverError,
    TangencyCandidate,
    convergence_table,
    decay_diagnostic,
    decreasing_runs,
    integer_certificate,
    lambda_branch,
    lambda_fixed_point,
)
from .suites import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_SOLVER = 0, 1, 2, 3


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as err:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from err


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, sort_keys=True, indent=1)
    sys.stdout.write("\n")


def cmd_gen_u(args) -> int:
    seq = u_tilde_seq(args.n)
    if args.csv:
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["n", "r", "s", "coeff"])
        for n, p in enumerate(seq):
            for (r, s), c in p.sorted_terms():
                w.writerow([n, r, s, c])
    else:
        _emit({"command": "gen-u", "n": args.n,
               "polys": [{"n": n, "poly": p.to_json()} for n, p in enumerate(seq)]})
    return EXIT_OK


def cmd_q_poly(args) -> int:
    _emit({"command": "q-poly", "n": args.n, "poly": q_poly(args.n).to_json()})
    return EXIT_OK


def cmd_verify(args) -> int:
    t0 = time.perf_counter()
    checks = run_suite(args.suite, n_max=args.n_max, samples=args.samples, seed=args.seed)
    failed = [c for c in checks if not c.ok]
    report = {
        "suite": args.suite,
        "params": {"n_max": args.n_max, "samples": args.samples, "seed": args.seed},
        "checks": [c.to_json() for c in checks] if not args.failures_only else [c.to_json() for c in failed],
        "totals": {"checks": len(checks), "passed": len(checks) - len(failed), "failed": len(failed)},
        "ok": not failed,
    }
    _emit(report)
    print(f"verify {args.suite}: {len(checks) - len(failed)}/{len(checks)} passed "
          f"in {time.perf_counter() - t0:.2f}s", file=sys.stderr)
    return EXIT_OK if not failed else EXIT_FAIL


def cmd_solve(args) -> int:
    if args.table:
        report = convergence_table(args.a2, range(1, args.depth + 1), args.tol)
        _emit({"command": "solve", **report.to_json()})
        return EXIT_OK if report.converged and report.brackets_valid() else EXIT_SOLVER
    root = lambda_branch(args.a2, args.depth, args.tol, root_index=args.root_index)
    out = {"command": "solve", **root.to_json(), "root_index": args.root_index,
           "branch_rule": "k-th positive root of det T_N(a, .) (heuristic branch selection)",
           "note": NO_REFERENCE}
    if args.fixed_point:
        fp = lambda_fixed_point(args.a2, args.depth, args.tol)
        out["fixed_point"] = {"lambda": rational_str(fp.lam), "iterations": fp.iterations,
                              "agrees": abs(fp.lam - root.lam) < args.tol}
    _emit(out)
    return EXIT_OK


def cmd_decay(args) -> int:
    root = lambda_branch(args.a2, args.depth, args.tol)
    rows = decay_diagnostic(args.a2, root.lam, args.n_max)
    _emit({"command": "decay", "a2": rational_str(args.a2), "depth": args.depth,
           "lambda": rational_str(root.lam), "rows": [r.to_json() for r in rows],
           "decreasing_runs": [list(r) for r in decreasing_runs(rows)], "note": NO_REFERENCE})
    return EXIT_OK


def cmd_certify(args) -> int:
    cert = integer_certificate(args.a2, args.lam, args.n_max)
    _emit({"command": "certify", **cert.to_json()})
    return EXIT_OK


def cmd_coeff_ring(args) -> int:
    h = c_n_symbolic(args.n)
    out = {"command": "coeff-ring", "n": args.n, "poly": h.to_json(),
           "divisible_by_C^n": check_divisibility(h, args.n).ok}
    if args.eval:
        if args.c is None or args.l is None:
            print("--eval needs --c and --l", file=sys.stderr)
            return EXIT_USAGE
        out["numeric"] = c_n_numeric(args.n, args.c, args.l, prec=args.prec).to_json()
        out["numeric"]["inputs"] = {"C": args.c, "L": args.l}
    _emit(out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bocrs", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen-u", help="emit u~_0..u~_N")
    g.add_argument("--n", type=_nonneg, required=True)
    fmt = g.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")
    g.set_defaults(func=cmd_gen_u)

    q = sub.add_parser("q-poly", help="emit the scaled Legendre polynomial Q_N")
    q.add_argument("--n", type=_nonneg, required=True)
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_q_poly)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", choices=sorted(SUITES), required=True)
    v.add_argument("--n-max", type=_nonneg, default=20)
    v.add_argument("--samples", type=_nonneg, default=20)
    v.add_argument("--seed", type=_nonneg, default=0)
    v.add_argument("--failures-only", action="store_true", help="list only failing checks")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("solve", help="decaying-branch eigenvalue at depth N")
    s.add_argument("--a2", type=_rational, required=True)
    s.add_argument("--depth", type=int, required=True)
    s.add_argument("--tol", type=_rational, default=Fraction(1, 2**64))
    s.add_argument("--root-index", type=int, default=1)
    s.add_argument("--fixed-point", action="store_true", help="also run the continued-fraction iteration")
    s.add_argument("--table", action="store_true", help="convergence table over depths 1..N")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_solve)

    d = sub.add_parser("decay", help="|u^_n| along a solved branch value")
    d.add_argument("--a2", type=_rational, required=True)
    d.add_argument("--depth", type=int, required=True)
    d.add_argument("--n-max", type=_nonneg, required=True)
    d.add_argument("--tol", type=_rational, default=Fraction(1, 2**128))
    d.add_argument("--json", action="store_true")
    d.set_defaults(func=cmd_decay)

    c = sub.add_parser("certify", help="integer sequence (sq)^n u^_n at a rational point")
    c.add_argument("--a2", type=_rational, required=True)
    c.add_argument("--lambda", dest="lam", type=_rational, required=True)
    c.add_argument("--n-max", type=_nonneg, required=True)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_certify)

    r = sub.add_parser("coeff-ring", help="c_n in Z[pi^2, C, L]")
    r.add_argument("--n", type=_nonneg, required=True)
    r.add_argument("--eval", action="store_true")
    r.add_argument("--c", help="value of C (decimal string, caller-supplied)")
    r.add_argument("--l", help="value of L_tau(1) (decimal string, caller-supplied)")
    r.add_argument("--prec", type=int, default=128)
    r.add_argument("--json", action="store_true")
    r.set_defaults(func=cmd_coeff_ring)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except TangencyCandidate as err:
        _emit({"command": args.command, "error": "TangencyCandidate", "message": str(err),
               "location": rational_str(err.location)})
        return EXIT_SOLVER
    except SolverError as err:
        _emit({"command": args.command, "error": type(err).__name__, "message": str(err)})
        return EXIT_SOLVER
    except (InvalidInput, InvalidConstants) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except NonInteger as err:
        _emit({"command": args.command, "error": "NonInteger", "message": str(err)})
        return EXIT_FAIL


def main() -> None:
    sys.exit(run())
