"""Local expansions of curve functions and one-point correlators."""

from __future__ import annotations

from fractions import Fraction

from ..curve import SpectralCurve, infinity_x
from ..exact_arith import INFINITY, QQ, LaurentSeries, RationalFunction, series_expand
from ..invariants import omega
from ..symmetry_checks.local import univariate

POINTS = ("infinity_x", "infinity_y", "infinity", "z=<rational>")


class SeriesRequestError(ValueError):
    """Unknown correlator name or point."""


def _infinity_y(curve: SpectralCurve):
    return infinity_x(curve.swap())


def _target(curve: SpectralCurve, of: str, g: int) -> RationalFunction:
    if of == "x":
        return curve.x
    if of == "y":
        return curve.y
    if of == "omega":
        # W_1^(g) = omega_{g,1} / dx, a function on the curve
        if g < 1:
            raise SeriesRequestError("omega needs g >= 1")
        return univariate(omega(curve, g, 1).expr) / curve.dx
    raise SeriesRequestError(f"unknown quantity {of!r}; expected x, y or omega")


def expand(curve: SpectralCurve, of: str, at: str, terms: int, g: int = 1) -> tuple[str, LaurentSeries]:
    """``(variable, series)``: ``terms`` coefficients from the leading one.

    At ``infinity_x`` the variable is ``1/x`` (``1/y`` at ``infinity_y``);
    at ``infinity`` it is ``1/z``, at ``z=c`` it is ``z - c``.
    """
    if terms < 1:
        raise SeriesRequestError("terms must be positive")
    f = _target(curve, of, g)
    if at in ("infinity_x", "infinity_y"):
        pt = infinity_x(curve) if at == "infinity_x" else _infinity_y(curve)
        u = curve.x if at == "infinity_x" else curve.y
        var = "1/x" if at == "infinity_x" else "1/y"
        # first pass finds the valuation, second gets the requested length
        s = _in_coordinate(f, u, pt, terms + 1)
        s = _in_coordinate(f, u, pt, terms + max(0, terms - (s.prec - s.val)) + abs(s.val) + 2)
        return var, s.truncate(s.val + terms)
    if at == "infinity":
        pt, var = INFINITY, "1/z"
    elif at.startswith("z="):
        try:
            pt = Fraction(at[2:])
        except (ValueError, ZeroDivisionError):
            raise SeriesRequestError(f"bad point {at!r}") from None
        var = f"z - {pt}" if pt else "z"
    else:
        raise SeriesRequestError(f"unknown point {at!r}; expected one of {', '.join(POINTS)}")
    s = series_expand(f, pt, terms + 1)
    s = series_expand(f, pt, s.val + terms)
    return var, s


def _in_coordinate(f: RationalFunction, u: RationalFunction, pt, order: int) -> LaurentSeries:
    """``f`` as a series in ``1/u`` near a simple pole of ``u``."""
    us = series_expand(u, pt, order + 1)
    if us.val != -1:
        raise SeriesRequestError("the coordinate must have a simple pole there")
    t_of_w = (1 / us).revert()  # local parameter as a series in w = 1/u
    fs = series_expand(f, pt, order)
    return fs.compose(t_of_w)


def coefficient_list(s: LaurentSeries) -> list[tuple[int, Fraction]]:
    """Every exponent from the valuation to the truncation, zeros included."""
    return [(e, QQ(s[e])) for e in range(s.val, s.prec)]
