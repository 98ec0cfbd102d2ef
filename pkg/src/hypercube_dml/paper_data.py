"""The five Q_6 labelings published as examples of non-neighbor-balanced DMLs.

Each table is row-major with rows indexed by vertex bits 5..3 and columns by bits 2..0.
"""

from __future__ import annotations

from hypercube_dml.core import Labeling

TABLES: tuple[tuple[tuple[int, ...], ...], ...] = (
    (
        ( 0,  4,  6, 15, 36, 60, 47, 49),
        (38,  8, 61, 46, 41, 45, 28, 20),
        (52, 56, 29, 30, 40, 24, 51,  5),
        (21, 44, 32, 62,  9, 26, 13, 10),
        (53, 50, 37, 54,  1, 31, 19, 42),
        (58, 12, 39, 23, 33, 34,  7, 11),
        (43, 35, 18, 22, 17,  2, 55, 25),
        (14, 16,  3, 27, 48, 57, 59, 63),
    ),
    (
        ( 0,  4,  6, 21, 36, 62, 58, 54),
        (38, 14, 50, 55, 28, 47, 12, 19),
        (52, 32, 34, 24, 23, 15, 61, 22),
        (56, 43, 30, 45, 17, 37,  3, 10),
        (53, 60, 26, 46, 18, 33, 20,  7),
        (41,  2, 48, 40, 39, 29, 31, 11),
        (44, 51, 16, 35,  8, 13, 49, 25),
        ( 9,  5,  1, 27, 42, 57, 59, 63),
    ),
    (
        ( 0,  4,  6, 26, 36, 51, 34, 45),
        (38, 23,  8, 30, 56, 47, 46, 54),
        (52, 41, 60, 42, 35, 43, 24,  5),
        (44, 31, 49, 50,  1,  2, 15, 10),
        (53, 48, 61, 62, 13, 14, 32, 19),
        (58, 39, 20, 28, 21,  3, 22, 11),
        ( 9, 17, 16,  7, 33, 55, 40, 25),
        (18, 29, 12, 27, 37, 57, 59, 63),
    ),
    (
        ( 0,  4,  6, 41, 36, 43, 61, 49),
        (38, 35,  5, 29, 60, 48, 42,  7),
        (52, 37, 50, 46,  1, 12, 47, 19),
        (45, 54, 23, 39,  8, 31, 30, 10),
        (53, 33, 32, 55, 24, 40,  9, 18),
        (44, 16, 51, 62, 17, 13, 26, 11),
        (56, 21, 15,  3, 34, 58, 28, 25),
        (14,  2, 20, 27, 22, 57, 59, 63),
    ),
    (
        ( 0,  4,  6, 15, 36, 54, 19, 23),
        (38, 61, 60, 51, 26, 45, 49, 17),
        (52, 16, 62, 55, 58, 42, 34, 28),
        ( 7, 22, 24, 31, 13, 30, 20, 10),
        (53, 43, 33, 50, 32, 39, 41, 56),
        (35, 29, 21,  5,  8,  1, 47, 11),
        (46, 14, 18, 37, 12,  3,  2, 25),
        (40, 44,  9, 27, 48, 57, 59, 63),
    ),
)

# labels forced on the neighbors 2**i of vertex 0, indexed by direction i
FIXED_NEIGHBOR_LABELS = (4, 6, 36, 38, 52, 53)


def paper_labeling(index: int) -> Labeling:
    """Return example ``index`` (1-based, 1..5)."""
    if not 1 <= index <= len(TABLES):
        raise IndexError(f"paper labeling index must be in 1..{len(TABLES)}, got {index}")
    return Labeling.from_table(TABLES[index - 1])


def paper_labelings() -> list[Labeling]:
    return [paper_labeling(i) for i in range(1, len(TABLES) + 1)]
