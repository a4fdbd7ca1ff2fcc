"""Corrections to the classical spectral curve and their polynomiality."""

from .level import (
    FiberTower,
    QuantumCurveLevel,
    build_quantum_level,
    check_polynomiality,
    fiber_sum,
    function_of_x,
    holomorphic_combination,
    leading_coefficient,
    node_polynomial,
    set_partitions,
    top_coefficients,
)

__all__ = [
    "FiberTower",
    "QuantumCurveLevel",
    "build_quantum_level",
    "check_polynomiality",
    "fiber_sum",
    "function_of_x",
    "holomorphic_combination",
    "leading_coefficient",
    "node_polynomial",
    "set_partitions",
    "top_coefficients",
]
