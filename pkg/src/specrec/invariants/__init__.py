"""Correlators and free energies of a spectral curve."""

from .differential import Differential
from .recursion import TruncationError, UnstableCorrelator, branch_residues_of_omega, free_energy, omega
from .table import CorrelatorTable, clear_tables, table_for

__all__ = [
    "CorrelatorTable",
    "Differential",
    "TruncationError",
    "UnstableCorrelator",
    "branch_residues_of_omega",
    "clear_tables",
    "free_energy",
    "omega",
    "table_for",
]
