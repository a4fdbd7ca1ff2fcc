"""Exact scalars, polynomials, series and residues."""

from .fields import QQ, Field, RationalField, as_fraction
from .mpoly import CTX, GENS, IR, IS, IX, IY, MAX_SLOTS, QZ, VAR_NAMES, MRat, gen, mrat, slot, var_index
from .numberfield import AlgebraicNumber, DegenerateConfiguration, QElem, QuotientField, numeric_roots
from .poly import Poly
from .ratfunc import RationalFunction
from .residues import (
    pole_order,
    poly_resultant,
    residue_at_infinity,
    residue_at_point,
    residue_sum_over_roots,
    series_expand,
    total_residue,
)
from .series import INFINITY, LaurentSeries, LogarithmicObstruction, taylor_shift


def series_antiderivative(s: LaurentSeries) -> LaurentSeries:
    """Term-wise antiderivative with zero constant of integration."""
    return s.antiderivative()


__all__ = [
    "AlgebraicNumber",
    "CTX",
    "DegenerateConfiguration",
    "Field",
    "GENS",
    "INFINITY",
    "IR",
    "IS",
    "IX",
    "IY",
    "LaurentSeries",
    "LogarithmicObstruction",
    "MAX_SLOTS",
    "MRat",
    "Poly",
    "QElem",
    "QQ",
    "QZ",
    "QuotientField",
    "RationalField",
    "RationalFunction",
    "VAR_NAMES",
    "as_fraction",
    "gen",
    "mrat",
    "numeric_roots",
    "pole_order",
    "poly_resultant",
    "residue_at_infinity",
    "residue_at_point",
    "residue_sum_over_roots",
    "series_antiderivative",
    "series_expand",
    "slot",
    "taylor_shift",
    "total_residue",
    "var_index",
]
