"""Command-line interface: ``hypercube-dml <command> ...``.

Exit status: 0 on verified success, 20 when the instance is proved
unsatisfiable, 1 on any error, invalid labeling or inconclusive solve.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import tempfile
from pathlib import Path

from hypercube_dml.cnf import write_dimacs
from hypercube_dml.core import (
    LabelingParseError,
    balance_report,
    dml_exists,
    load_labeling,
    store_labeling,
    verify_dml,
)
from hypercube_dml.encoder import build_instance, decode_model
from hypercube_dml.engine import (
    SolverConfig,
    SolverUnknown,
    enumerate_models,
    solve_builtin,
    solve_external,
    solve_portfolio,
)
from hypercube_dml.oracle import MAX_BRUTE_FORCE_N, brute_force_dmls
from hypercube_dml.paper_data import paper_labeling
from hypercube_dml.report import balance_json, balance_table, write_figures

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNSAT = 20

SOLVER_ENV = "HYPERCUBE_DML_SOLVER"


class CliError(Exception):
    pass


def _add_encode_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, required=True, help="hypercube dimension")
    p.add_argument("--fix-paper-prefix", action="store_true",
                   help="fix label 0 on vertex 0 and 4,6,36,38,52,53 on its neighbors (n=6 only)")
    p.add_argument("--no-distinct", action="store_true", help="omit the pairwise distinctness constraints")
    p.add_argument("--no-sums", action="store_true", help="omit the neighbor-sum constraints")


def _build(args):
    if not 1 <= args.n <= 20:
        raise CliError(f"--n must be in 1..20, got {args.n}")
    if args.fix_paper_prefix and args.n != 6:
        raise CliError("--fix-paper-prefix requires --n 6")
    if not args.no_sums and args.n % 2:
        raise CliError(f"magic constant undefined (non-integer) for odd n={args.n}; use --no-sums")
    art = build_instance(args.n, distinct=not args.no_distinct, sums=not args.no_sums,
                         fixed_prefix=args.fix_paper_prefix)
    if not dml_exists(args.n) and not args.no_sums and not args.no_distinct:
        print(f"warning: no distance magic labeling of Q_{args.n} exists; instance expected UNSAT", file=sys.stderr)
    return art


def _print_stats(cnf) -> None:
    s = cnf.stats()
    print(f"variables: {s['num_vars']}")
    print(f"clauses: {s['num_clauses']}")


def _read_labeling(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from None
    try:
        return load_labeling(text)
    except LabelingParseError as exc:
        raise CliError(f"{path}: {exc}") from None


def _describe(lab) -> str:
    verdict = verify_dml(lab)
    text = verdict.describe()
    if verdict.valid:
        balanced = balance_report(lab).balanced
        text += ", neighbor-balanced" if balanced else ", non-neighbor-balanced"
    return text


def cmd_encode(args) -> int:
    art = _build(args)
    try:
        Path(args.out).write_text(write_dimacs(art.cnf))
    except OSError as exc:
        raise CliError(f"cannot write {args.out}: {exc}") from None
    _print_stats(art.cnf)
    print(f"wrote {args.out}")
    return EXIT_OK


def cmd_solve(args) -> int:
    template = args.solver or (None if args.builtin else os.environ.get(SOLVER_ENV))
    if template is None and args.n > MAX_BRUTE_FORCE_N and not args.force:
        raise CliError(f"the built-in engine is limited to n <= {MAX_BRUTE_FORCE_N}; "
                       f"pass --solver TEMPLATE (or set {SOLVER_ENV}) or --force")
    art = _build(args)
    _print_stats(art.cnf)
    if template is None:
        outcome = solve_builtin(art.cnf, SolverConfig(seed=args.seed, conflict_budget=args.conflict_budget))
    else:
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(args.cnf_out) if args.cnf_out else Path(tmp) / f"q{args.n}.cnf"
            path.write_text(write_dimacs(art.cnf))
            if args.portfolio > 1:
                seeds = [args.seed + k for k in range(args.portfolio)]
                outcome = solve_portfolio(path, template, seeds, cnf=art.cnf, timeout=args.timeout)
            else:
                outcome = solve_external(path, template, args.seed, cnf=art.cnf, timeout=args.timeout)
    if outcome.is_unsat:
        print("UNSAT")
        return EXIT_UNSAT
    if not outcome.is_sat:
        print(f"UNKNOWN: {outcome.reason}", file=sys.stderr)
        return EXIT_ERROR
    lab = decode_model(art, outcome.model)
    print("SAT")
    print(store_labeling(lab), end="")
    verdict = verify_dml(lab)
    print(f"verdict: {_describe(lab)}")
    if not verdict.valid:
        return EXIT_ERROR
    if args.out_labeling:
        Path(args.out_labeling).write_text(store_labeling(lab))
        print(f"wrote {args.out_labeling}")
    return EXIT_OK


def cmd_verify(args) -> int:
    lab = _read_labeling(args.labeling)
    print(_describe(lab))
    return EXIT_OK if verify_dml(lab).valid else EXIT_ERROR


def cmd_report(args) -> int:
    lab = _read_labeling(args.labeling)
    try:
        report = balance_report(lab)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    if args.json:
        print(balance_json(report))
    else:
        print(balance_table(lab, report, sep=args.sep), end="")
        print(f"# balanced: {str(report.balanced).lower()}")
    if args.figures:
        for path in write_figures(lab, report, args.figures, stem=Path(args.labeling).stem):
            print(f"wrote {path}", file=sys.stderr)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    n = args.n
    if not 1 <= n <= MAX_BRUTE_FORCE_N:
        raise CliError(f"enumerate supports 1 <= n <= {MAX_BRUTE_FORCE_N}, got {n}")
    if args.max < 1:
        raise CliError("--max must be at least 1")
    expected = {lab.labels for lab in brute_force_dmls(n)}
    if n % 2:
        found = []
        print(f"magic constant of Q_{n} is not an integer: no labelings")
    else:
        art = build_instance(n)
        try:
            models = enumerate_models(art.cnf, art.primary_vars, args.max,
                                      solve=lambda c: solve_builtin(c, SolverConfig(seed=args.seed)))
        except SolverUnknown as exc:
            raise CliError(f"solver gave up: {exc}") from None
        found = [decode_model(art, m) for m in models]
        for lab in found:
            print(" ".join(map(str, lab.labels)))
    got = {lab.labels for lab in found}
    print(f"{len(found)} labelings")
    # a run stopped by --max can only be checked for inclusion
    agree = got == expected if len(found) < args.max else got <= expected
    agree = agree and len(got) == len(found) and all(verify_dml(lab).valid for lab in found)
    print(f"oracle agreement: {'OK' if agree else 'MISMATCH'} (oracle count {len(expected)})")
    return EXIT_OK if agree else EXIT_ERROR


def cmd_paper(args) -> int:
    try:
        lab = paper_labeling(args.index)
    except IndexError as exc:
        raise CliError(str(exc)) from None
    print(store_labeling(lab), end="")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hypercube-dml",
                                     description="SAT search for distance magic labelings of hypercubes")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="write the DIMACS instance for Q_n")
    _add_encode_flags(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("solve", help="encode, solve, decode and verify")
    _add_encode_flags(p)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--solver", metavar="TEMPLATE",
                   help="external solver command with {cnf} and optional {seed} placeholders")
    g.add_argument("--builtin", action="store_true", help="use the built-in DPLL engine")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--portfolio", type=int, default=1, metavar="K",
                   help="race K external processes with seeds seed..seed+K-1")
    p.add_argument("--timeout", type=float, default=None, help="external solver wall-clock limit in seconds")
    p.add_argument("--conflict-budget", type=int, default=None)
    p.add_argument("--force", action="store_true", help="allow the built-in engine for n > 3")
    p.add_argument("--cnf-out", help="keep the DIMACS instance handed to the external solver")
    p.add_argument("--out-labeling")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a labeling file")
    p.add_argument("--labeling", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("report", help="neighbor balance report, optionally with figures")
    p.add_argument("--labeling", required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("--sep", default="\t", help="column delimiter for the tabular output")
    p.add_argument("--figures", metavar="DIR", help="write PNG figures into DIR")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("enumerate", help="list all DMLs of a small hypercube")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("paper", help="print one of the five published Q_6 labelings")
    p.add_argument("--index", type=int, required=True)
    p.set_defaults(func=cmd_paper)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
