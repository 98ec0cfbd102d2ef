"""Clause database with a monotone variable allocator and canonical DIMACS I/O.

Literals are signed integers in the usual DIMACS sense: ``v`` is the
positive literal of variable ``v`` and ``-v`` its negation.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence


class DimacsError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


class Cnf:
    """A CNF formula under construction.

    Clauses are kept in insertion order and written back exactly as added:
    no sorting, deduplication or simplification ever happens.
    """

    def __init__(self, num_vars: int = 0):
        if num_vars < 0:
            raise ValueError("num_vars must be non-negative")
        self.num_vars = num_vars
        self.clauses: list[tuple[int, ...]] = []
        self.comments: list[str] = []

    def fresh_var(self) -> int:
        self.num_vars += 1
        return self.num_vars

    def fresh_vars(self, k: int) -> list[int]:
        if k < 0:
            raise ValueError("cannot allocate a negative number of variables")
        first = self.num_vars + 1
        self.num_vars += k
        return list(range(first, first + k))

    def add_clause(self, literals: Iterable[int]) -> None:
        clause = tuple(int(lit) for lit in literals)
        if not clause:
            raise ValueError("empty clause; assert falsity with two opposing units instead")
        for lit in clause:
            if lit == 0 or abs(lit) > self.num_vars:
                raise ValueError(f"literal {lit} refers to an unallocated variable (num_vars={self.num_vars})")
        self.clauses.append(clause)

    def add_unit(self, literal: int) -> None:
        self.add_clause((literal,))

    def add_comment(self, text: str) -> None:
        if "\n" in text:
            raise ValueError("comment must be a single line")
        self.comments.append(text)

    def stats(self) -> dict[str, int]:
        return {"num_vars": self.num_vars, "num_clauses": len(self.clauses)}

    def copy(self) -> Cnf:
        other = Cnf(self.num_vars)
        other.clauses = list(self.clauses)
        other.comments = list(self.comments)
        return other

    def is_satisfied_by(self, model: Mapping[int, bool] | Sequence[bool]) -> bool:
        """True if every clause has a true literal under ``model``.

        ``model`` is either a mapping ``var -> bool`` or a sequence indexed by
        variable (index 0 unused).
        """
        return self.first_falsified(model) is None

    def first_falsified(self, model: Mapping[int, bool] | Sequence[bool]) -> int | None:
        for idx, clause in enumerate(self.clauses):
            for lit in clause:
                if model[abs(lit)] == (lit > 0):
                    break
            else:
                return idx
        return None

    def __len__(self) -> int:
        return len(self.clauses)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cnf):
            return NotImplemented
        return self.num_vars == other.num_vars and self.clauses == other.clauses

    def __repr__(self) -> str:
        return f"Cnf(num_vars={self.num_vars}, num_clauses={len(self.clauses)})"


def write_dimacs(cnf: Cnf) -> str:
    parts = [f"c {c}\n" if c else "c\n" for c in cnf.comments]
    parts.append(f"p cnf {cnf.num_vars} {len(cnf.clauses)}\n")
    parts.extend(" ".join(map(str, clause)) + " 0\n" for clause in cnf.clauses)
    return "".join(parts)


def read_dimacs(text: str) -> Cnf:
    """Parse DIMACS CNF text; clauses may span lines but must end with ``0``."""
    cnf: Cnf | None = None
    declared = 0
    pending: list[int] = []
    pending_line = 0
    comments: list[str] = []
    lineno = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line[0] == "c":
            if cnf is None or not cnf.clauses and not pending:
                comments.append(line[2:] if line.startswith("c ") else line[1:])
            continue
        if line[0] == "p":
            if cnf is not None:
                raise DimacsError("duplicate problem line", lineno)
            fields = line.split()
            if len(fields) != 4 or fields[1] != "cnf":
                raise DimacsError(f"malformed header {line!r}", lineno)
            try:
                nv, nc = int(fields[2]), int(fields[3])
            except ValueError:
                raise DimacsError(f"malformed header {line!r}", lineno) from None
            if nv < 0 or nc < 0:
                raise DimacsError(f"negative counts in header {line!r}", lineno)
            cnf = Cnf(nv)
            declared = nc
            continue
        if cnf is None:
            raise DimacsError("clause before problem line", lineno)
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsError(f"bad literal {tok!r}", lineno) from None
            if lit == 0:
                if not pending:
                    raise DimacsError("empty clause", lineno)
                cnf.clauses.append(tuple(pending))
                pending = []
                continue
            if abs(lit) > cnf.num_vars:
                raise DimacsError(f"literal {lit} exceeds declared {cnf.num_vars} variables", lineno)
            if not pending:
                pending_line = lineno
            pending.append(lit)
    if cnf is None:
        raise DimacsError("missing problem line", lineno or None)
    if pending:
        raise DimacsError("clause missing terminating 0", pending_line)
    if len(cnf.clauses) != declared:
        raise DimacsError(f"header declares {declared} clauses, found {len(cnf.clauses)}", lineno)
    cnf.comments = comments
    return cnf
