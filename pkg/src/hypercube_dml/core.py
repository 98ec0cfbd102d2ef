"""Hypercube model: adjacency, labelings, the magic-sum condition and neighbor balance.

Conventions used throughout the package:

* a vertex of Q_n is an integer ``v`` in ``[0, 2**n)``;
* the neighbor of ``v`` in direction ``i`` is ``v ^ (1 << i)``;
* the digit of a label at position ``i`` is bit ``i`` (weight ``2**i``),
  so position 0 is the least significant digit.

An 8x8 table of a Q_6 labeling is read row-major: row ``r`` holds bits 5..3
of the vertex and column ``c`` holds bits 2..0, i.e. ``v = 8*r + c``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

MAX_DIMENSION = 20


def _check_dimension(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool) or not 1 <= n <= MAX_DIMENSION:
        raise ValueError(f"dimension must be an integer in 1..{MAX_DIMENSION}, got {n!r}")


def _check_vertex(n: int, v: int) -> None:
    if not 0 <= v < (1 << n):
        raise ValueError(f"vertex {v} out of range for Q_{n} (0..{(1 << n) - 1})")


@dataclass(frozen=True)
class Labeling:
    """Labels of the vertices of Q_n, ``labels[v]`` being the label of vertex ``v``."""

    n: int
    labels: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_dimension(self.n)
        labels = tuple(int(x) for x in self.labels)
        object.__setattr__(self, "labels", labels)
        size = 1 << self.n
        if len(labels) != size:
            raise ValueError(f"Q_{self.n} needs {size} labels, got {len(labels)}")
        for v, x in enumerate(labels):
            if not 0 <= x < size:
                raise ValueError(f"label {x} of vertex {v} outside 0..{size - 1}")

    @classmethod
    def from_table(cls, rows: Sequence[Sequence[int]]) -> Labeling:
        """Build a labeling from a row-major table (rows = high bits, columns = low bits)."""
        flat = [x for row in rows for x in row]
        n = len(flat).bit_length() - 1
        if len(flat) != 1 << n:
            raise ValueError(f"table has {len(flat)} entries, not a power of two")
        return cls(n, tuple(flat))

    def table(self, columns: int | None = None) -> list[list[int]]:
        """Reshape into rows of ``columns`` labels (default: ``2**(n//2)`` low bits per row)."""
        if columns is None:
            columns = 1 << (self.n // 2)
        return [list(self.labels[i:i + columns]) for i in range(0, len(self.labels), columns)]

    def __len__(self) -> int:
        return len(self.labels)

    def __getitem__(self, v: int) -> int:
        return self.labels[v]


@dataclass(frozen=True)
class Verdict:
    """Outcome of :func:`verify_dml`.

    ``reason`` is ``None`` for a valid labeling, otherwise ``"permutation"``
    (a label repeats; ``vertex`` is the second holder of the repeated label)
    or ``"magic-sum"`` (``vertex`` has neighbor sum ``value``).
    """

    valid: bool
    reason: str | None = None
    vertex: int | None = None
    value: int | None = None
    expected: Fraction | int | None = None

    def __bool__(self) -> bool:
        return self.valid

    def describe(self) -> str:
        if self.valid:
            return f"valid, magic constant {self.expected}"
        if self.reason == "permutation":
            return f"invalid: label {self.value} repeated at vertex {self.vertex}"
        return f"invalid: neighbor sum {self.value} != {self.expected} at vertex {self.vertex}"


@dataclass(frozen=True)
class BalanceReport:
    n: int
    counts: tuple[tuple[int, ...], ...]
    witnesses: tuple[tuple[int, int], ...] = field(default=())

    @property
    def balanced(self) -> bool:
        return not self.witnesses

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "balanced": self.balanced,
            "counts": [list(row) for row in self.counts],
            "witnesses": [list(w) for w in self.witnesses],
        }


def magic_constant(n: int) -> int:
    """Common neighbor-label sum ``n * (2**n - 1) / 2`` of a DML of Q_n."""
    _check_dimension(n)
    if n % 2:
        raise ValueError(f"magic constant undefined (non-integer) for odd n={n}")
    return n * ((1 << n) - 1) // 2


def dml_exists(n: int) -> bool:
    return n % 4 == 2


def neighbors(n: int, v: int) -> list[int]:
    _check_dimension(n)
    _check_vertex(n, v)
    return [v ^ (1 << i) for i in range(n)]


def neighbor_sum(lab: Labeling, v: int) -> int:
    _check_vertex(lab.n, v)
    return sum(lab.labels[v ^ (1 << i)] for i in range(lab.n))


def verify_dml(lab: Labeling) -> Verdict:
    """Check that ``lab`` is a bijection with all neighbor sums equal to the magic constant.

    Stops at the first violation, scanning vertices in increasing order.
    """
    seen: dict[int, int] = {}
    for v, x in enumerate(lab.labels):
        if x in seen:
            return Verdict(False, "permutation", v, x)
        seen[x] = v
    n = lab.n
    target = Fraction(n * ((1 << n) - 1), 2)
    expected = int(target) if target.denominator == 1 else target
    for v in range(1 << n):
        s = neighbor_sum(lab, v)
        if s != target:
            return Verdict(False, "magic-sum", v, s, expected)
    return Verdict(True, expected=expected)


def balance_report(lab: Labeling) -> BalanceReport:
    """Count, for every vertex and digit position, the neighbors whose label has a 1 there."""
    n = lab.n
    if n % 2:
        raise ValueError(f"balance undefined for odd n={n}")
    if len(set(lab.labels)) != len(lab.labels):
        raise ValueError("balance report requires a permutation labeling")
    half = n // 2
    counts = []
    witnesses = []
    for v in range(1 << n):
        row = [0] * n
        for u in neighbors(n, v):
            x = lab.labels[u]
            for i in range(n):
                row[i] += (x >> i) & 1
        counts.append(tuple(row))
        witnesses.extend((v, i) for i, c in enumerate(row) if c != half)
    return BalanceReport(n, tuple(counts), tuple(witnesses))


class LabelingParseError(ValueError):
    def __init__(self, message: str, line: int, column: int | None = None):
        self.line = line
        self.column = column
        where = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"{where}: {message}")


def store_labeling(lab: Labeling) -> str:
    """Serialize as ``n <dim>`` followed by the labels, one table row per line."""
    width = len(str((1 << lab.n) - 1))
    lines = [f"n {lab.n}"]
    for row in lab.table():
        lines.append(" ".join(str(x).rjust(width) for x in row))
    return "\n".join(lines) + "\n"


def load_labeling(text: str) -> Labeling:
    n = None
    header_line = 0
    tokens: list[tuple[int, int, str]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0]
        if not body.strip():
            continue
        if n is None:
            parts = body.split()
            if len(parts) != 2 or parts[0] != "n":
                raise LabelingParseError("expected header 'n <dimension>'", lineno, 1)
            try:
                n = int(parts[1])
            except ValueError:
                raise LabelingParseError(f"bad dimension {parts[1]!r}", lineno, body.index(parts[1]) + 1) from None
            if not 1 <= n <= MAX_DIMENSION:
                raise LabelingParseError(f"dimension {n} outside 1..{MAX_DIMENSION}", lineno)
            header_line = lineno
            continue
        col = 0
        for tok in body.split():
            col = body.index(tok, col)
            tokens.append((lineno, col + 1, tok))
            col += len(tok)
    if n is None:
        raise LabelingParseError("missing header 'n <dimension>'", 1)
    size = 1 << n
    values = []
    for lineno, col, tok in tokens:
        try:
            x = int(tok)
        except ValueError:
            raise LabelingParseError(f"non-integer token {tok!r}", lineno, col) from None
        if not 0 <= x < size:
            raise LabelingParseError(f"label {x} outside 0..{size - 1}", lineno, col)
        values.append(x)
    if len(values) != size:
        last = tokens[-1][0] if tokens else header_line
        raise LabelingParseError(f"expected {size} labels, found {len(values)} of {size}", last)
    return Labeling(n, tuple(values))
