"""Command-line DIMACS solver backed by python-sat, speaking the ``s``/``v`` line protocol.

Usage::

    python -m hypercube_dml.pysat_solver INSTANCE.cnf [--seed S] [--backend cadical195]

Exit status is 10 for SAT and 20 for UNSAT, like standalone solvers. A nonzero
seed renames variables, flips polarities and shuffles clauses before solving,
which is how different seeds reach different solutions.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from hypercube_dml.cnf import read_dimacs


def scramble(clauses, num_vars: int, seed: int):
    rng = random.Random(seed)
    perm = list(range(1, num_vars + 1))
    rng.shuffle(perm)
    sign = [1] + [rng.choice((1, -1)) for _ in range(num_vars)]
    # old variable v becomes new variable perm[v-1], possibly negated
    mapped = [[sign[abs(l)] * (perm[abs(l) - 1] if l > 0 else -perm[abs(l) - 1]) for l in c] for c in clauses]
    rng.shuffle(mapped)
    return mapped, perm, sign


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="pysat_solver", description=__doc__.splitlines()[0])
    ap.add_argument("cnf", type=Path)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--backend", default="cadical195")
    args = ap.parse_args(argv)

    try:
        from pysat.solvers import Solver
    except ImportError:
        print("c python-sat is not installed", file=sys.stderr)
        print("s UNKNOWN")
        return 0

    cnf = read_dimacs(args.cnf.read_text())
    clauses = [list(c) for c in cnf.clauses]
    perm = sign = None
    if args.seed:
        clauses, perm, sign = scramble(clauses, cnf.num_vars, args.seed)
    with Solver(name=args.backend, bootstrap_with=clauses) as solver:
        if not solver.solve():
            print("s UNSATISFIABLE")
            return 20
        raw = {abs(l): l > 0 for l in solver.get_model() or []}
    values = []
    for v in range(1, cnf.num_vars + 1):
        if perm is None:
            val = raw.get(v, False)
        else:
            val = raw.get(perm[v - 1], False)
            if sign[v] < 0:
                val = not val
        values.append(v if val else -v)
    print("s SATISFIABLE")
    for i in range(0, len(values), 20):
        print("v " + " ".join(map(str, values[i:i + 20])))
    print("v 0")
    return 10


if __name__ == "__main__":
    sys.exit(main())
