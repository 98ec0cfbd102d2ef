"""Brute-force ground truth for small cases.

Deliberately independent of the encoder and of :mod:`hypercube_dml.core`:
adjacency and sums are recomputed here from the definitions.
"""

from __future__ import annotations

from typing import Iterable

from hypercube_dml.core import Labeling

MAX_BRUTE_FORCE_N = 3


def brute_force_dmls(n: int) -> list[Labeling]:
    """All distance magic labelings of Q_n, n <= 3, in lexicographic order of the label tuple.

    Labels are placed on vertices 0, 1, 2, ... in turn. A vertex's neighbor sum
    is checked as soon as its last neighbor gets a label, and partial sums
    that already exceed the target prune the branch.
    """
    if n > MAX_BRUTE_FORCE_N:
        raise ValueError(f"brute force limited to n <= {MAX_BRUTE_FORCE_N}, got {n}")
    if n < 1:
        raise ValueError(f"dimension must be positive, got {n}")
    size = 2 ** n
    twice_target = n * (size - 1)
    if twice_target % 2:
        return []
    target = twice_target // 2
    adj = [[u for u in range(size) if bin(u ^ v).count("1") == 1] for v in range(size)]
    # vertices whose neighborhood is complete once vertex ``k`` is labeled
    closes = [[v for v in range(size) if max(adj[v]) == k] for k in range(size)]
    labels = [-1] * size
    used = [False] * size
    found: list[Labeling] = []

    def partial_ok(k: int) -> bool:
        for v in range(size):
            s = sum(labels[u] for u in adj[v] if u <= k)
            if s > target:
                return False
        return all(sum(labels[u] for u in adj[v]) == target for v in closes[k])

    def place(k: int) -> None:
        if k == size:
            found.append(Labeling(n, tuple(labels)))
            return
        for x in range(size):
            if used[x]:
                continue
            labels[k] = x
            used[x] = True
            if partial_ok(k):
                place(k + 1)
            used[x] = False
            labels[k] = -1

    place(0)
    return found


def brute_force_sum_check(addends: Iterable[int], target: int) -> bool:
    return sum(addends) == target
