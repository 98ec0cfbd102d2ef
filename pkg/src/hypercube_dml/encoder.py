"""CNF encoding of the search for distance magic labelings of Q_n.

Variable layout: label bit ``i`` of vertex ``v`` is variable ``v*n + i + 1``,
so the ``n * 2**n`` primary variables come first in ``(v, i)`` order.
Distinctness gadgets and adder cells allocate their auxiliaries afterwards.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping, Sequence

from hypercube_dml.cnf import Cnf
from hypercube_dml.core import Labeling, magic_constant, neighbors
from hypercube_dml.paper_data import FIXED_NEIGHBOR_LABELS

log = logging.getLogger(__name__)

ENCODER_VERSION = "1"


@dataclass
class EncodingArtifacts:
    n: int
    cnf: Cnf
    options: dict[str, bool] = field(default_factory=dict)
    fixed_prefix: dict[int, int] | None = None

    def label_var(self, v: int, i: int) -> int:
        if not (0 <= v < (1 << self.n) and 0 <= i < self.n):
            raise IndexError(f"no label variable for vertex {v}, bit {i}")
        return v * self.n + i + 1

    def label_bits(self, v: int) -> list[int]:
        base = v * self.n + 1
        return list(range(base, base + self.n))

    @property
    def primary_vars(self) -> range:
        return range(1, self.n * (1 << self.n) + 1)


def encode_pair_distinct(cnf: Cnf, xbits: Sequence[int], ybits: Sequence[int]) -> list[int]:
    """Assert that two bit-vectors differ, using one selector per position.

    Only ``d_i -> (x_i != y_i)`` is encoded; the final clause requires some
    selector to hold. That is ``len(xbits)`` auxiliaries and ``2*len + 1`` clauses.
    """
    if len(xbits) != len(ybits):
        raise ValueError(f"bit-vector lengths differ: {len(xbits)} vs {len(ybits)}")
    if not xbits:
        raise ValueError("cannot compare empty bit-vectors")
    d = cnf.fresh_vars(len(xbits))
    for di, x, y in zip(d, xbits, ybits):
        cnf.add_clause((-di, x, y))
        cnf.add_clause((-di, -x, -y))
    cnf.add_clause(d)
    return d


def encode_all_distinct(art: EncodingArtifacts) -> None:
    for u, v in combinations(range(1 << art.n), 2):
        encode_pair_distinct(art.cnf, art.label_bits(u), art.label_bits(v))


def _half_adder(cnf: Cnf, a: int, b: int) -> tuple[int, int]:
    s, c = cnf.fresh_vars(2)
    # s <-> a xor b
    cnf.add_clause((-s, a, b))
    cnf.add_clause((-s, -a, -b))
    cnf.add_clause((s, -a, b))
    cnf.add_clause((s, a, -b))
    # c <-> a and b
    cnf.add_clause((-c, a))
    cnf.add_clause((-c, b))
    cnf.add_clause((c, -a, -b))
    return s, c


def _full_adder(cnf: Cnf, a: int, b: int, cin: int) -> tuple[int, int]:
    s, c = cnf.fresh_vars(2)
    # s <-> a xor b xor cin
    for sa in (1, -1):
        for sb in (1, -1):
            for sc in (1, -1):
                parity = (sa < 0) + (sb < 0) + (sc < 0)
                out = s if parity % 2 == 1 else -s
                cnf.add_clause((out, sa * a, sb * b, sc * cin))
    # c <-> majority(a, b, cin)
    cnf.add_clause((-c, a, b))
    cnf.add_clause((-c, a, cin))
    cnf.add_clause((-c, b, cin))
    cnf.add_clause((c, -a, -b))
    cnf.add_clause((c, -a, -cin))
    cnf.add_clause((c, -b, -cin))
    return s, c


def _ripple_add(cnf: Cnf, x: list[int], xmax: int, y: list[int], ymax: int) -> tuple[list[int], int]:
    """Add two little-endian bit-vectors; the result is trimmed to the bits ``xmax + ymax`` needs."""
    total = xmax + ymax
    width = total.bit_length()
    if len(x) < len(y):
        x, y = y, x
    out: list[int] = []
    carry = None
    for i in range(len(x)):
        if i < len(y):
            if carry is None:
                s, carry = _half_adder(cnf, x[i], y[i])
            else:
                s, carry = _full_adder(cnf, x[i], y[i], carry)
        elif carry is not None:
            s, carry = _half_adder(cnf, x[i], carry)
        else:
            s = x[i]
        out.append(s)
    if carry is not None and len(out) < width:
        out.append(carry)
    # bits beyond ``width`` are forced to zero by the operand bounds
    return out[:width], total


def encode_sum_equals(cnf: Cnf, addends: Sequence[Sequence[int]], target: int) -> list[int]:
    """Constrain ``sum(addends) == target`` with a balanced tree of ripple-carry adders.

    Each addend is a little-endian list of literals. Every adder cell gets fresh
    sum/carry variables defined by full equivalences, so with the addend bits
    fixed the output is determined; the output bits are then fixed by unit
    clauses to the binary expansion of ``target``. Returns the auxiliaries
    created, in allocation order.
    """
    bound = sum((1 << len(a)) - 1 for a in addends)
    if not 0 <= target <= bound:
        raise ValueError(f"target {target} not representable as a sum of these addends (0..{bound})")
    first = cnf.num_vars + 1
    level = [(list(a), (1 << len(a)) - 1) for a in addends if a]
    while len(level) > 1:
        nxt = []
        for j in range(0, len(level) - 1, 2):
            nxt.append(_ripple_add(cnf, *level[j], *level[j + 1]))
        if len(level) % 2:
            nxt.append(level[-1])
        level = nxt
    bits = level[0][0] if level else []
    for i, lit in enumerate(bits):
        cnf.add_unit(lit if (target >> i) & 1 else -lit)
    return list(range(first, cnf.num_vars + 1))


def encode_labeling_units(art: EncodingArtifacts, v: int, label: int) -> None:
    for i, var in enumerate(art.label_bits(v)):
        art.cnf.add_unit(var if (label >> i) & 1 else -var)


def encode_fixed_prefix(art: EncodingArtifacts) -> None:
    """Fix label 0 on vertex 0 and labels 4, 6, 36, 38, 52, 53 on its neighbors 1, 2, ..., 32."""
    if art.n != 6:
        raise ValueError(f"the fixed prefix is defined for Q_6 only, not n={art.n}")
    fixed = {0: 0}
    fixed.update({1 << i: label for i, label in enumerate(FIXED_NEIGHBOR_LABELS)})
    for v, label in fixed.items():
        encode_labeling_units(art, v, label)
    art.fixed_prefix = fixed


def build_instance(n: int, distinct: bool = True, sums: bool = True, fixed_prefix: bool = False) -> EncodingArtifacts:
    if n < 1:
        raise ValueError(f"dimension must be positive, got {n}")
    if sums and n % 2:
        raise ValueError(f"magic constant undefined (non-integer) for odd n={n}; disable sums")
    if fixed_prefix and n != 6:
        raise ValueError(f"the fixed prefix is defined for Q_6 only, not n={n}")
    cnf = Cnf()
    art = EncodingArtifacts(n, cnf, {"distinct": distinct, "sums": sums, "fixed_prefix": fixed_prefix})
    cnf.fresh_vars(n << n)
    cnf.add_comment(f"distance magic labeling of Q_{n}, encoder version {ENCODER_VERSION}")
    cnf.add_comment(f"options distinct={int(distinct)} sums={int(sums)} fixed_prefix={int(fixed_prefix)}")
    cnf.add_comment(f"label bit i of vertex v is variable v*{n}+i+1 (bit 0 least significant)")
    if distinct:
        encode_all_distinct(art)
    if sums:
        target = magic_constant(n)
        for v in range(1 << n):
            encode_sum_equals(cnf, [art.label_bits(u) for u in neighbors(n, v)], target)
    if fixed_prefix:
        encode_fixed_prefix(art)
    log.info("Q_%d instance: %d variables, %d clauses", n, cnf.num_vars, len(cnf.clauses))
    return art


def decode_model(art: EncodingArtifacts, model: Mapping[int, bool] | Sequence[bool]) -> Labeling:
    """Read labels off the primary variables; no validity check is made."""
    labels = []
    for v in range(1 << art.n):
        x = 0
        for i, var in enumerate(art.label_bits(v)):
            try:
                value = model[var]
            except (KeyError, IndexError):
                value = None
            if value is None:
                raise ValueError(f"model leaves label variable {var} (vertex {v}, bit {i}) unassigned")
            x |= int(bool(value)) << i
        labels.append(x)
    return Labeling(art.n, tuple(labels))
