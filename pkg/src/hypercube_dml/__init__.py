"""Distance magic labelings of hypercubes: SAT encoding, solving and verification."""

from hypercube_dml.core import (
    BalanceReport,
    Labeling,
    LabelingParseError,
    Verdict,
    balance_report,
    dml_exists,
    load_labeling,
    magic_constant,
    neighbor_sum,
    neighbors,
    store_labeling,
    verify_dml,
)
from hypercube_dml.cnf import Cnf, DimacsError, read_dimacs, write_dimacs

__version__ = "0.1.0"

__all__ = [
    "BalanceReport",
    "Cnf",
    "DimacsError",
    "Labeling",
    "LabelingParseError",
    "Verdict",
    "balance_report",
    "dml_exists",
    "load_labeling",
    "magic_constant",
    "neighbor_sum",
    "neighbors",
    "read_dimacs",
    "store_labeling",
    "verify_dml",
    "write_dimacs",
]
