"""Mixed correlators of the two-matrix model from the triangular residue recursion."""

from .assembly import (
    CORRECTION_SIGN,
    Assembled,
    Assembler,
    ERoutes,
    H00,
    NotPolynomial,
    U00,
    H_from_h,
    Utilde00,
    assemble_E,
    assemble_U,
    assemble_Utilde,
    assembler,
    large_x_limit,
    polynomial_in,
    pole_audit_H,
)
from .recursion import (
    COMPLEXITY_BOUND,
    ComplexityBoundExceeded,
    MixedCorrelator,
    MixedKey,
    ScheduleViolation,
    dependencies,
    is_seed,
    mixed_h,
    mixed_W,
    schedule,
)
from .residues import RouteMismatch, RouteStats, reset_route_stats, route_stats

__all__ = [
    "Assembled",
    "Assembler",
    "CORRECTION_SIGN",
    "ERoutes",
    "H00",
    "H_from_h",
    "NotPolynomial",
    "U00",
    "Utilde00",
    "assemble_E",
    "assemble_U",
    "assemble_Utilde",
    "assembler",
    "large_x_limit",
    "pole_audit_H",
    "polynomial_in",
    "COMPLEXITY_BOUND",
    "ComplexityBoundExceeded",
    "MixedCorrelator",
    "MixedKey",
    "RouteMismatch",
    "RouteStats",
    "ScheduleViolation",
    "dependencies",
    "is_seed",
    "mixed_W",
    "mixed_h",
    "reset_route_stats",
    "route_stats",
    "schedule",
]
