"""Spectator points and one-variable residue scans on the z-sphere."""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Iterator

from ..curve import AlgebraicNumber, BranchPackage, CurvePoint, SpectralCurve, irreducible_factors
from ..exact_arith import INFINITY, QQ, LaurentSeries, MRat, Poly, RationalFunction, residue_at_point, series_expand, slot
from ..invariants import Differential


def _odd_primes() -> Iterator[int]:
    found: list[int] = []
    n = 3
    while True:
        if all(n % p for p in found if p * p <= n):
            found.append(n)
            yield n
        n += 2


def _candidates() -> Iterator[Fraction]:
    # 3, 5, 7, 11/2, 13/3, 17/4, ...
    for i, p in enumerate(_odd_primes()):
        yield Fraction(p, max(1, i - 1))


def _value(f: RationalFunction, z: Fraction) -> Fraction | None:
    d = f.den(z)
    return None if d == 0 else Fraction(f.num(z)) / Fraction(d)


def spectator_points(curve: SpectralCurve, n: int, avoid: tuple = ()) -> list[Fraction]:
    """The first ``n`` generic rationals of the fixed sequence.

    A candidate is skipped if it is a pole of x or y, a zero of dx or dy, in
    ``avoid``, or shares an x- or y-value with an earlier pick.
    """
    out: list[Fraction] = []
    xs, ys = set(), set()
    for z in _candidates():
        if len(out) == n:
            break
        if z in avoid:
            continue
        xv, yv = _value(curve.x, z), _value(curve.y, z)
        if xv is None or yv is None or xv in xs or yv in ys:
            continue
        if _value(curve.dx, z) == 0 or _value(curve.dy, z) == 0:
            continue
        out.append(z)
        xs.add(xv)
        ys.add(yv)
    return out


def univariate(expr: MRat, i: int = 0) -> RationalFunction:
    """A coefficient depending on slot ``i`` only, as a rational function over Q."""
    f = expr.as_univariate(slot(i))
    num = Poly([c.constant_value() for c in f.num.coeffs], QQ)
    den = Poly([c.constant_value() for c in f.den.coeffs], QQ)
    return RationalFunction(num, den)


def restrict(form: Differential, free: int, values: dict[int, Any]) -> RationalFunction:
    """Fix every slot except ``free`` and return the coefficient of ``dz_free``."""
    assert free not in values and len(values) == form.arity - 1
    return univariate(form.specialize(values).expr, 0)


# ------------------------------------------------------------------ points


def point_label(pt: Any) -> str:
    if isinstance(pt, BranchPackage):
        return str(pt.point)
    if isinstance(pt, CurvePoint):
        return str(pt)
    return "infinity" if pt is INFINITY else str(pt)


def _center(pt: Any):
    """(field, center) for a rational number, INFINITY, CurvePoint or BranchPackage."""
    if isinstance(pt, CurvePoint):
        pt = pt.z_value
    if pt is INFINITY:
        return QQ, INFINITY
    if isinstance(pt, BranchPackage):
        return pt.field()
    return QQ, Fraction(pt)


def is_infinite(pt: Any) -> bool:
    return _center(pt)[1] is INFINITY


def function_series(f: RationalFunction, pt: Any, order: int) -> tuple[Any, LaurentSeries]:
    """Local expansion of a function in ``t = z - c`` (``t = 1/z`` at infinity)."""
    F, c = _center(pt)
    return F, series_expand(f, c, order)


def form_series(f: RationalFunction, pt: Any, order: int) -> tuple[Any, LaurentSeries]:
    """Local expansion of ``f dz`` as a coefficient of ``dt``."""
    F, c = _center(pt)
    if c is INFINITY:
        s = series_expand(f, INFINITY, order + 2)
        return F, -s.shift(-2)  # dz = -dt/t^2
    return F, series_expand(f, c, order)


def pole_order(f: RationalFunction, pt: Any) -> int:
    """Pole order of the function ``f`` at a point (0 where it is regular)."""
    F, s = function_series(f, pt, 1)
    return max(0, -s.val)


def residue(f: RationalFunction, pt: Any) -> Any:
    """Residue of ``f dz`` at one point, in the point's field."""
    F, c = _center(pt)
    return residue_at_point(f, c)


def pole_points(f: RationalFunction) -> list[Any]:
    """Every pole of ``f dz`` on the sphere: one package per irreducible factor, then infinity."""
    pts: list[Any] = [BranchPackage(AlgebraicNumber(fac)) for fac, _ in irreducible_factors(f.den)]
    pts.append(CurvePoint(INFINITY))
    return pts


def residue_scan(f: RationalFunction) -> list[tuple[str, Any]]:
    """(point, residue) for every pole with a nonzero residue."""
    out = []
    for pt in pole_points(f):
        F, _ = _center(pt)
        r = residue(f, pt)
        if not F.is_zero(r):
            out.append((point_label(pt), r))
    return out


def residue_sum_at(f: RationalFunction, pts) -> Fraction:
    """Sum of residues over point packages, conjugates included."""
    total = Fraction(0)
    for pt in pts:
        F, _ = _center(pt)
        r = residue(f, pt)
        total += r if F is QQ else F.trace(r)
    return total
