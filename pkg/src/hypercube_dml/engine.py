"""Satisfiability back ends: a small built-in DPLL engine and an external solver driver.

Every SAT answer, whichever back end produced it, is checked against the
formula before it is returned.
"""

from __future__ import annotations

import logging
import random
import shlex
import subprocess
import threading
import time
from concurrent.futures import FIRST_COMPLETED, ThreadPoolExecutor, wait
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Sequence

from hypercube_dml.cnf import Cnf, read_dimacs

log = logging.getLogger(__name__)

SAT = "SAT"
UNSAT = "UNSAT"
UNKNOWN = "UNKNOWN"

Model = dict[int, bool]


@dataclass(frozen=True)
class SolverOutcome:
    status: str
    model: Model | None = None
    reason: str = ""
    stats: dict = field(default_factory=dict, compare=False)

    @property
    def is_sat(self) -> bool:
        return self.status == SAT

    @property
    def is_unsat(self) -> bool:
        return self.status == UNSAT


class SolverUnknown(RuntimeError):
    """Raised when a solve needed for a definite answer came back UNKNOWN."""


@dataclass
class SolverConfig:
    seed: int = 0
    # "random": seeded variable order and polarity; "static": index order, false first
    heuristic: str = "random"
    conflict_budget: int | None = None


def _checked(cnf: Cnf, model: Model, stats: dict | None = None) -> SolverOutcome:
    bad = cnf.first_falsified(model)
    if bad is not None:
        raise RuntimeError(f"solver produced a model falsifying clause {bad}: {cnf.clauses[bad]}")
    return SolverOutcome(SAT, model, stats=stats or {})


class _Dpll:
    """DPLL with two watched literals and chronological backtracking."""

    def __init__(self, cnf: Cnf, config: SolverConfig):
        self.cnf = cnf
        self.config = config
        nv = cnf.num_vars
        self.value = [0] * (nv + 1)  # +1 true, -1 false, 0 unassigned
        self.trail: list[int] = []
        self.qhead = 0
        self.watches: dict[int, list[list[int]]] = {}
        self.units: list[int] = []
        self.conflicts = 0
        self.decisions = 0
        for clause in cnf.clauses:
            lits = list(dict.fromkeys(clause))
            if any(-lit in lits for lit in lits):
                continue  # tautology
            if len(lits) == 1:
                self.units.append(lits[0])
            else:
                self.watches.setdefault(lits[0], []).append(lits)
                self.watches.setdefault(lits[1], []).append(lits)
        order = list(range(1, nv + 1))
        rng = random.Random(config.seed)
        if config.heuristic == "random":
            rng.shuffle(order)
            self.polarity = [rng.random() < 0.5 for _ in range(nv + 1)]
        elif config.heuristic == "static":
            self.polarity = [False] * (nv + 1)
        else:
            raise ValueError(f"unknown decision heuristic {config.heuristic!r}")
        self.order = order

    def lit_value(self, lit: int) -> int:
        v = self.value[abs(lit)]
        return v if lit > 0 else -v

    def assign(self, lit: int) -> bool:
        cur = self.lit_value(lit)
        if cur:
            return cur > 0
        self.value[abs(lit)] = 1 if lit > 0 else -1
        self.trail.append(lit)
        return True

    def propagate(self) -> bool:
        value = self.value
        while self.qhead < len(self.trail):
            false_lit = -self.trail[self.qhead]
            self.qhead += 1
            watching = self.watches.get(false_lit)
            if not watching:
                continue
            keep = []
            i = 0
            n = len(watching)
            while i < n:
                c = watching[i]
                i += 1
                if c[0] == false_lit:
                    c[0], c[1] = c[1], c[0]
                first = c[0]
                fv = value[abs(first)]
                if (fv if first > 0 else -fv) > 0:
                    keep.append(c)
                    continue
                for k in range(2, len(c)):
                    lit = c[k]
                    lv = value[abs(lit)]
                    if (lv if lit > 0 else -lv) >= 0:
                        c[1], c[k] = lit, false_lit
                        self.watches.setdefault(lit, []).append(c)
                        break
                else:
                    keep.append(c)
                    if fv == 0:
                        self.assign(first)
                    else:
                        keep.extend(watching[i:])
                        self.watches[false_lit] = keep
                        return False
            self.watches[false_lit] = keep
        return True

    def undo_to(self, size: int) -> None:
        for lit in self.trail[size:]:
            self.value[abs(lit)] = 0
        del self.trail[size:]
        self.qhead = size

    def solve(self) -> SolverOutcome:
        for lit in self.units:
            if not self.assign(lit):
                return SolverOutcome(UNSAT)
        if not self.propagate():
            return SolverOutcome(UNSAT)
        # each frame: (trail size before the decision, decision literal, flipped?)
        frames: list[tuple[int, int, bool]] = []
        pos = 0
        budget = self.config.conflict_budget
        while True:
            while pos < len(self.order) and self.value[self.order[pos]]:
                pos += 1
            if pos == len(self.order):
                model = {v: self.value[v] > 0 for v in range(1, self.cnf.num_vars + 1)}
                return _checked(self.cnf, model, self.stats())
            var = self.order[pos]
            lit = var if self.polarity[var] else -var
            self.decisions += 1
            frames.append((len(self.trail), lit, False))
            self.assign(lit)
            while not self.propagate():
                self.conflicts += 1
                if budget is not None and self.conflicts > budget:
                    return SolverOutcome(UNKNOWN, reason=f"conflict budget {budget} exhausted", stats=self.stats())
                while frames and frames[-1][2]:
                    frames.pop()
                if not frames:
                    return SolverOutcome(UNSAT, stats=self.stats())
                size, dec, _ = frames.pop()
                self.undo_to(size)
                frames.append((size, -dec, True))
                self.assign(-dec)
            # the order scan restarts because backtracking can unassign earlier variables
            if frames and frames[-1][2]:
                pos = 0

    def stats(self) -> dict:
        return {"conflicts": self.conflicts, "decisions": self.decisions}


def solve_builtin(cnf: Cnf, config: SolverConfig | None = None) -> SolverOutcome:
    return _Dpll(cnf, config or SolverConfig()).solve()


def parse_solver_output(text: str, num_vars: int, returncode: int | None = None) -> SolverOutcome:
    """Interpret competition-style solver output (``s`` and ``v`` lines).

    The model is not checked here; :func:`solve_external` does that.
    """
    status = None
    lits: list[int] = []
    terminated = False
    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith("s "):
            word = line[2:].strip()
            if word not in ("SATISFIABLE", "UNSATISFIABLE", "UNKNOWN"):
                return SolverOutcome(UNKNOWN, reason=f"unrecognized status line {line!r}")
            if status is not None:
                return SolverOutcome(UNKNOWN, reason="multiple status lines")
            status = word
        elif line.startswith("v ") or line == "v":
            for tok in line[1:].split():
                try:
                    lit = int(tok)
                except ValueError:
                    return SolverOutcome(UNKNOWN, reason=f"bad value token {tok!r}")
                if terminated:
                    return SolverOutcome(UNKNOWN, reason="values after terminating 0")
                if lit == 0:
                    terminated = True
                else:
                    lits.append(lit)
    if status is None:
        if returncode in (10, 20):
            return SolverOutcome(UNKNOWN, reason=f"exit code {returncode} but no status line")
        return SolverOutcome(UNKNOWN, reason="no status line in solver output")
    if status == "UNKNOWN":
        return SolverOutcome(UNKNOWN, reason="solver reported UNKNOWN")
    expected_code = 10 if status == "SATISFIABLE" else 20
    if returncode not in (None, 0, expected_code):
        return SolverOutcome(UNKNOWN, reason=f"status {status} contradicts exit code {returncode}")
    if status == "UNSATISFIABLE":
        return SolverOutcome(UNSAT)
    if not terminated:
        return SolverOutcome(UNKNOWN, reason="value lines missing terminating 0")
    model = {v: False for v in range(1, num_vars + 1)}
    seen: dict[int, int] = {}
    for lit in lits:
        var = abs(lit)
        if var > num_vars:
            return SolverOutcome(UNKNOWN, reason=f"value {lit} exceeds {num_vars} variables")
        if seen.get(var, lit) != lit:
            return SolverOutcome(UNKNOWN, reason=f"variable {var} assigned both ways")
        seen[var] = lit
        model[var] = lit > 0
    return SolverOutcome(SAT, model)


def format_command(template: str, cnf_path: str | Path, seed: int | None = None) -> list[str]:
    if "{cnf}" not in template:
        raise ValueError("solver command template needs a {cnf} placeholder")
    args = []
    for tok in shlex.split(template):
        args.append(tok.replace("{cnf}", str(cnf_path)).replace("{seed}", str(seed if seed is not None else 0)))
    return args


def _verify_external(cnf: Cnf, outcome: SolverOutcome) -> SolverOutcome:
    if not outcome.is_sat:
        return outcome
    bad = cnf.first_falsified(outcome.model)
    if bad is not None:
        return SolverOutcome(UNKNOWN, reason=f"external model falsifies clause {bad}: {cnf.clauses[bad]}")
    return outcome


def _run(args: list[str], timeout: float | None, procs: list | None = None, lock=None) -> tuple[int | None, str, str]:
    proc = subprocess.Popen(args, stdout=subprocess.PIPE, stderr=subprocess.PIPE, text=True)
    if procs is not None:
        with lock:
            procs.append(proc)
    try:
        out, err = proc.communicate(timeout=timeout)
    except subprocess.TimeoutExpired:
        proc.kill()
        proc.communicate()
        raise
    return proc.returncode, out, err


def solve_external(
    dimacs_path: str | Path,
    command_template: str,
    seed: int | None = None,
    cnf: Cnf | None = None,
    timeout: float | None = None,
) -> SolverOutcome:
    """Run an external DIMACS solver and return its verified answer.

    ``command_template`` is split shell-style; ``{cnf}`` is replaced by the
    instance path and ``{seed}`` by ``seed``. Any failure (crash, timeout,
    garbled output, a model that does not satisfy the formula) becomes UNKNOWN.
    """
    if cnf is None:
        cnf = read_dimacs(Path(dimacs_path).read_text())
    args = format_command(command_template, dimacs_path, seed)
    start = time.monotonic()
    try:
        code, out, err = _run(args, timeout)
    except FileNotFoundError as exc:
        return SolverOutcome(UNKNOWN, reason=f"cannot launch solver: {exc}")
    except subprocess.TimeoutExpired:
        return SolverOutcome(UNKNOWN, reason=f"timeout after {timeout} s")
    elapsed = time.monotonic() - start
    outcome = parse_solver_output(out, cnf.num_vars, code)
    if outcome.status == UNKNOWN and err.strip():
        tail = err.strip().splitlines()[-1]
        outcome = SolverOutcome(UNKNOWN, reason=f"{outcome.reason} (exit {code}; stderr: {tail})")
    outcome = _verify_external(cnf, outcome)
    log.info("external solver %s: %s in %.1f s", args[0], outcome.status, elapsed)
    return SolverOutcome(outcome.status, outcome.model, outcome.reason, {"seconds": elapsed, "seed": seed})


def solve_portfolio(
    dimacs_path: str | Path,
    command_template: str,
    seeds: Sequence[int],
    cnf: Cnf | None = None,
    timeout: float | None = None,
) -> SolverOutcome:
    """Race one external process per seed; the first definite verified answer wins."""
    if cnf is None:
        cnf = read_dimacs(Path(dimacs_path).read_text())
    procs: list[subprocess.Popen] = []
    lock = threading.Lock()

    def one(seed: int) -> SolverOutcome:
        args = format_command(command_template, dimacs_path, seed)
        try:
            code, out, _ = _run(args, timeout, procs, lock)
        except FileNotFoundError as exc:
            return SolverOutcome(UNKNOWN, reason=f"cannot launch solver: {exc}")
        except subprocess.TimeoutExpired:
            return SolverOutcome(UNKNOWN, reason=f"seed {seed}: timeout after {timeout} s")
        res = _verify_external(cnf, parse_solver_output(out, cnf.num_vars, code))
        return SolverOutcome(res.status, res.model, res.reason, {"seed": seed})

    reasons = []
    with ThreadPoolExecutor(max_workers=max(1, len(seeds))) as pool:
        pending = {pool.submit(one, s) for s in seeds}
        while pending:
            done, pending = wait(pending, return_when=FIRST_COMPLETED)
            for fut in done:
                res = fut.result()
                if res.status != UNKNOWN:
                    with lock:
                        for p in procs:
                            if p.poll() is None:
                                p.kill()
                    return res
                reasons.append(res.reason)
    return SolverOutcome(UNKNOWN, reason="; ".join(reasons) or "no seeds")


def enumerate_models(
    cnf: Cnf,
    projection: Iterable[int],
    max_models: int,
    solve: Callable[[Cnf], SolverOutcome] | None = None,
) -> list[Model]:
    """Collect up to ``max_models`` models that differ on the ``projection`` variables.

    After each model a clause blocking its restriction to ``projection`` is
    added to a private copy of ``cnf``.
    """
    if max_models < 1:
        raise ValueError("max_models must be at least 1")
    solve = solve or solve_builtin
    work = cnf.copy()
    proj = list(projection)
    models: list[Model] = []
    while len(models) < max_models:
        outcome = solve(work)
        if outcome.status == UNKNOWN:
            raise SolverUnknown(outcome.reason)
        if outcome.is_unsat:
            break
        models.append(outcome.model)
        if not proj:
            break
        work.add_clause([-v if outcome.model[v] else v for v in proj])
    return models
