"""Exact checks of the x-y exchange properties."""

from .checks import (
    b000_rhs,
    check_a100,
    check_b000,
    check_F_symmetry,
    check_H_W_relation,
    check_phi_psi_residue,
    check_total_derivative,
    check_W_symmetry,
    check_xy_residue,
    w_check,
    w_hat,
)
from .local import residue_scan, spectator_points
from .report import BUG_NOTE, CheckReport

__all__ = [
    "BUG_NOTE",
    "CheckReport",
    "b000_rhs",
    "check_F_symmetry",
    "check_H_W_relation",
    "check_W_symmetry",
    "check_a100",
    "check_b000",
    "check_phi_psi_residue",
    "check_total_derivative",
    "check_xy_residue",
    "residue_scan",
    "spectator_points",
    "w_check",
    "w_hat",
]
