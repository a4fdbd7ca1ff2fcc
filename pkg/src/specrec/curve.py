"""Genus-zero spectral curves given by a rational parametrization ``x(z), y(z)``."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any, Iterable

import flint

from .exact_arith import (
    INFINITY,
    QQ,
    AlgebraicNumber,
    DegenerateConfiguration,
    LaurentSeries,
    MRat,
    Poly,
    QElem,
    QuotientField,
    RationalFunction,
    series_expand,
)
from .exact_arith.mpoly import CTX, GENS, IR, IX, IY, slot


class DegenerateCurve(ValueError):
    """x or y constant, or the parametrization is not birational onto its image."""


class DegenerateRamification(ValueError):
    """A branch point is not simple, or critical values collide."""


class RamifiedFiber(ValueError):
    """A fiber was requested at a ramification point."""


class UnsupportedCurve(ValueError):
    """The curve is outside the supported class (e.g. a branch point at z = infinity)."""


@dataclass(frozen=True)
class CurvePoint:
    """A point of the z-sphere: a rational, an algebraic number, or ``INFINITY``."""

    z_value: Any

    @property
    def is_infinite(self) -> bool:
        return self.z_value is INFINITY

    def __str__(self) -> str:
        return str(self.z_value)


@dataclass(frozen=True)
class FiberPackage:
    base: CurvePoint
    direction: str  # "x" or "y"
    other_sheets_poly: Poly


@dataclass(frozen=True)
class BranchPackage:
    """Roots of one irreducible factor of the branch-point polynomial."""

    point: AlgebraicNumber

    @property
    def minimal_polynomial(self) -> Poly:
        return self.point.minimal_polynomial

    @property
    def degree(self) -> int:
        return self.point.degree

    @property
    def is_rational(self) -> bool:
        return self.point.is_rational()

    def field(self):
        """Coefficient field of expansions at this branch point and the center in it."""
        if self.is_rational:
            return QQ, self.point.rational_value()
        F = self.point.field
        return F, F.gen


def _to_fmpq_poly(p: Poly) -> flint.fmpq_poly:
    return flint.fmpq_poly([flint.fmpq(c.numerator, c.denominator) for c in p.coeffs])


def _from_fmpq_poly(p: flint.fmpq_poly) -> Poly:
    return Poly([Fraction(int(c.p), int(c.q)) for c in p.coeffs()], QQ)


def irreducible_factors(p: Poly) -> list[tuple[Poly, int]]:
    """Monic irreducible factors over Q with multiplicities, in a canonical order."""
    if p.degree < 1:
        return []
    _, facs = _to_fmpq_poly(p).factor()
    out = [(_from_fmpq_poly(f).monic(), m) for f, m in facs]
    return sorted(out, key=lambda fm: (fm[0].degree, [str(c) for c in fm[0].coeffs]))


def _finite_zero_packages(p: Poly) -> tuple[list[BranchPackage], list[int]]:
    packs, mults = [], []
    for f, m in irreducible_factors(p):
        packs.append(BranchPackage(AlgebraicNumber(f)))
        mults.append(m)
    return packs, mults


def _pole_order_at_infinity(f: RationalFunction) -> int:
    return f.num.degree - f.den.degree


class SpectralCurve:
    """Rational spectral curve with derived ramification and fiber data.

    ``x`` and ``y`` are univariate rational functions over Q in the uniformizer
    ``z``.  Construction validates simple ramification of ``x`` (and of ``y``
    unless ``check_y=False``) and birationality of the parametrization.
    """

    def __init__(self, x: RationalFunction, y: RationalFunction, name: str = "", check_y: bool = True):
        self.x = x
        self.y = y
        self.name = name
        if x.is_constant() or y.is_constant():
            raise DegenerateCurve("x or y is constant")
        self.genus = 0
        self.classical_poly = self._classical_poly()
        self.d2 = x.degree() - 1
        self.d1 = y.degree() - 1
        degs = self.classical_poly.degrees()
        if degs[IY] != self.d2 + 1 or degs[IX] != self.d1 + 1:
            raise DegenerateCurve("classical polynomial degrees do not match the map degrees")
        self.branch_points_x = self._branch_packages(x, y, "x", strict=True)
        self._check_y = check_y
        if check_y:
            self.branch_points_y = self._branch_packages(y, x, "y", strict=True)
        self.infinite_points = self._infinite_points()

    # construction helpers

    def _classical_poly(self):
        r = GENS[IR]
        X, Y = GENS[IX], GENS[IY]
        ax = MRat.from_univariate(self.x.num, IR).num - X * MRat.from_univariate(self.x.den, IR).num
        ay = MRat.from_univariate(self.y.num, IR).num - Y * MRat.from_univariate(self.y.den, IR).num
        res = ax.resultant(ay, "r")
        if res.is_zero():
            raise DegenerateCurve("x and y are functionally dependent")
        const, facs = res.factor()
        if len(facs) != 1 or facs[0][1] != 1:
            raise DegenerateCurve("parametrization is not birational onto an irreducible curve")
        e = facs[0][0]
        # primitive integer coefficients, positive leading coefficient in Y
        coeffs = list(e.to_dict().items())
        den = 1
        for _, c in coeffs:
            den = _lcm(den, int(c.q))
        e = e * den
        g = 0
        for _, c in e.to_dict().items():
            g = _gcd(g, int(c.p))
        e = e / g
        lead = max(e.to_dict().items(), key=lambda kv: (kv[0][IY], kv[0]))
        if lead[1] < 0:
            e = -e
        return e

    def _branch_packages(self, f: RationalFunction, other: RationalFunction, label: str, strict: bool):
        df = f.derivative()
        packs, mults = _finite_zero_packages(df.num)
        for pk, m in zip(packs, mults):
            if m != 1:
                raise DegenerateRamification(f"d{label} has a multiple zero at a root of {pk.minimal_polynomial.to_str('z')}")
            # the other coordinate must not have a pole there
            fac = pk.minimal_polynomial
            if other.den.gcd(fac).degree > 0:
                raise DegenerateRamification(f"{'y' if label == 'x' else 'x'} has a pole at a branch point of {label}")
        # zeros of df at infinity: f regular at infinity and f(1/w) - f(inf) vanishing to order >= 2
        if _pole_order_at_infinity(f) <= 0:
            s = series_expand(f, INFINITY, 3)
            if s[1] == 0:
                raise UnsupportedCurve(f"d{label} vanishes at z = infinity; apply a Moebius change of z")
        if strict and packs:
            self._check_critical_values(f, packs)
        return tuple(packs)

    @staticmethod
    def _check_critical_values(f: RationalFunction, packs: list[BranchPackage]) -> None:
        crit = Poly.constant(1)
        for pk in packs:
            m = pk.minimal_polynomial
            # polynomial whose roots are f(a) for a root of m
            X = GENS[IX]
            a = MRat.from_univariate(m, IR).num
            b = MRat.from_univariate(f.num, IR).num - X * MRat.from_univariate(f.den, IR).num
            res = a.resultant(b, "r")
            d = res.to_dict()
            n = max(e[IX] for e in d)
            cs = [Fraction(0)] * (n + 1)
            for e, c in d.items():
                cs[e[IX]] += Fraction(int(c.p), int(c.q))
            crit = crit * Poly(cs)
        if not crit.is_squarefree():
            raise DegenerateRamification("two branch points share a critical value")

    def _infinite_points(self) -> tuple[CurvePoint | BranchPackage, ...]:
        pts: list = []
        seen = set()
        for f in (self.x, self.y):
            for fac, _ in irreducible_factors(f.den):
                key = tuple(fac.coeffs)
                if key not in seen:
                    seen.add(key)
                    pts.append(BranchPackage(AlgebraicNumber(fac)))
        if _pole_order_at_infinity(self.x) > 0 or _pole_order_at_infinity(self.y) > 0:
            pts.append(CurvePoint(INFINITY))
        return tuple(pts)

    # derived data

    @cached_property
    def dx(self) -> RationalFunction:
        return self.x.derivative()

    @cached_property
    def dy(self) -> RationalFunction:
        return self.y.derivative()

    def x_in(self, v: int) -> MRat:
        """x as a rational function of the ring variable with index ``v``."""
        return _cached_embed(self, "x", v)

    def y_in(self, v: int) -> MRat:
        return _cached_embed(self, "y", v)

    def dx_in(self, v: int) -> MRat:
        return _cached_embed(self, "dx", v)

    def dy_in(self, v: int) -> MRat:
        return _cached_embed(self, "dy", v)

    def E(self, X: MRat, Y: MRat) -> MRat:
        """The classical polynomial evaluated at rational functions ``X``, ``Y``."""
        return _eval_bivariate(self.classical_poly, X, Y)

    @property
    def branch_polynomial_x(self) -> Poly:
        return self.dx.num.monic()

    @property
    def branch_polynomial_y(self) -> Poly:
        return self.dy.num.monic()

    def swap(self) -> "SpectralCurve":
        return swap(self)

    def describe(self) -> dict:
        return {
            "name": self.name,
            "x": self.x.to_str("z"),
            "y": self.y.to_str("z"),
            "d1": self.d1,
            "d2": self.d2,
            "classical_poly": str(self.classical_poly),
        }

    def __repr__(self) -> str:
        return f"SpectralCurve(x={self.x.to_str('z')}, y={self.y.to_str('z')})"

    def key(self) -> tuple:
        return (str(self.x), str(self.y))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SpectralCurve) and self.x == other.x and self.y == other.y

    def __hash__(self) -> int:
        return hash(self.key())


def _gcd(a: int, b: int) -> int:
    from math import gcd

    return gcd(a, b)


def _lcm(a: int, b: int) -> int:
    from math import lcm

    return lcm(a, b)


_EMBED_CACHE: dict = {}


def _cached_embed(curve: SpectralCurve, what: str, v: int) -> MRat:
    key = (curve.key(), what, v)
    hit = _EMBED_CACHE.get(key)
    if hit is None:
        f = {"x": curve.x, "y": curve.y, "dx": curve.dx, "dy": curve.dy}[what]
        hit = MRat.from_univariate(f, v)
        _EMBED_CACHE[key] = hit
    return hit


def _eval_bivariate(e, X: MRat, Y: MRat) -> MRat:
    d = e.to_dict()
    acc = MRat(0)
    xp: dict[int, MRat] = {}
    yp: dict[int, MRat] = {}
    for exps, c in d.items():
        i, j = exps[IX], exps[IY]
        if i not in xp:
            xp[i] = X**i
        if j not in yp:
            yp[j] = Y**j
        acc = acc + xp[i] * yp[j] * Fraction(int(c.p), int(c.q))
    return acc


def new_curve(x_expr: str | RationalFunction, y_expr: str | RationalFunction, name: str = "", check_y: bool = True) -> SpectralCurve:
    """Build a curve from expressions in ``z`` (strings are parsed) or rational functions."""
    if isinstance(x_expr, str) or isinstance(y_expr, str):
        from .cli.parser import parse_rational_function

        x = parse_rational_function(x_expr) if isinstance(x_expr, str) else x_expr
        y = parse_rational_function(y_expr) if isinstance(y_expr, str) else y_expr
    else:
        x, y = x_expr, y_expr
    return SpectralCurve(x, y, name=name, check_y=check_y)


def swap(curve: SpectralCurve) -> SpectralCurve:
    """The curve with x and y exchanged."""
    name = curve.name[:-5] if curve.name.endswith(".swap") else (curve.name + ".swap" if curve.name else "")
    return SpectralCurve(curve.y, curve.x, name=name)


def fiber(curve: SpectralCurve, point: CurvePoint, direction: str = "x") -> FiberPackage:
    """Companions of ``point`` in the x-fiber (``direction="x"``) or the y-fiber."""
    f = curve.x if direction == "x" else curve.y
    if point.is_infinite:
        raise RamifiedFiber("fiber over an infinite point is not supported")
    z0 = point.z_value
    F = z0.parent if isinstance(z0, QElem) else QQ
    num = Poly([F(c) for c in f.num.coeffs], F)
    den = Poly([F(c) for c in f.den.coeffs], F)
    d0 = den(F(z0))
    if F.is_zero(d0):
        raise RamifiedFiber("point is a pole of the projection")
    val = num(F(z0)) / d0
    P = num - den * val
    q, rem = divmod(P, Poly([-F(z0), F.one], F))
    if rem:
        raise ArithmeticError("base point is not on its own fiber")
    if F.is_zero(q(F(z0))):
        raise RamifiedFiber("point is a ramification point")
    return FiberPackage(point, direction, q)


def fiber_poly_symbolic(curve: SpectralCurve, direction: str, w: int, base: int):
    """Flint polynomial in variables ``w`` and ``base`` whose roots in ``w`` are the other sheets."""
    f = curve.x if direction == "x" else curve.y
    W, B = GENS[w], GENS[base]
    nw = MRat.from_univariate(f.num, w).num
    dw = MRat.from_univariate(f.den, w).num
    nb = MRat.from_univariate(f.num, base).num
    db = MRat.from_univariate(f.den, base).num
    P = nw * db - nb * dw
    q, rem = divmod(P, W - B)
    if not rem.is_zero():
        raise ArithmeticError("fiber polynomial is not divisible by w - base")
    return q


def bergman(p: int, q: int) -> MRat:
    """``dz(p) dz(q) / (z(p) - z(q))^2`` on ring variables ``p``, ``q``."""
    return MRat(GENS[p] - GENS[q]) ** -2


def third_kind(s: Any, o: Any, p: int) -> MRat:
    """``dS_{s,o}(p) = (1/(z(p)-z(s)) - 1/(z(p)-z(o))) dz(p)`` in ring variable ``p``.

    ``s`` and ``o`` are :class:`MRat` values (e.g. another variable), numbers,
    or ``INFINITY``, whose term drops out.
    """
    zp = MRat(GENS[p])

    def term(a):
        if a is INFINITY:
            return MRat(0)
        return (zp - a).inverse()

    return term(s) - term(o)


def local_involution_series(curve: SpectralCurve, a: BranchPackage, order: int) -> LaurentSeries:
    """``sigma(a + t) - a`` to ``O(t^order)``, with coefficients in the field of ``a``.

    Solved by Newton iteration for ``u`` in ``sigma = a + t u(t)``, ``u(0) = -1``.
    """
    if order < 1:
        raise ValueError("order must be at least 1")
    return _involution(curve, a, order)


_INV_CACHE: dict = {}


def _involution(curve: SpectralCurve, a: BranchPackage, order: int) -> LaurentSeries:
    key = (curve.key(), tuple(a.minimal_polynomial.coeffs), order)
    hit = _INV_CACHE.get(key)
    if hit is not None:
        return hit
    F, center = a.field()
    n = order + 2
    xs = series_expand(curve.x, center, n + 1)  # coefficients c_k of x(a+u)
    c = [xs[k] for k in range(n + 1)]
    if not F.is_zero(c[1]):
        raise DegenerateRamification("not a zero of dx")
    if F.is_zero(c[2]):
        raise DegenerateRamification("branch point is not simple")
    rel = order  # relative precision needed for u (s = t*u)

    def G(u: LaurentSeries, prec: int) -> tuple[LaurentSeries, LaurentSeries]:
        # G(u) = sum_{k>=2} c_k t^{k-2} (1 + u + ... + u^{k-1}), and dG/du
        g = LaurentSeries(F, prec, [], prec)
        dg = LaurentSeries(F, prec, [], prec)
        upow = [LaurentSeries.constant(F, F.one, prec)]
        for _ in range(1, n + 1):
            upow.append((upow[-1] * u).truncate(prec))
        for k in range(2, min(n, prec + 2) + 1):
            if F.is_zero(c[k]):
                continue
            h = LaurentSeries(F, prec, [], prec)
            dh = LaurentSeries(F, prec, [], prec)
            for i in range(k):
                h = h + upow[i]
                if i:
                    dh = dh + upow[i - 1] * F(i)
            tk = LaurentSeries.monomial(F, k - 2, prec, c[k])
            g = g + tk * h
            dg = dg + tk * dh
        return g.truncate(prec), dg.truncate(prec)

    u = LaurentSeries.constant(F, F(-1), 1)
    prec = 1
    while prec < rel:
        prec = min(2 * prec, rel)
        u = LaurentSeries(F, u.val, u.coeffs, prec)
        g, dg = G(u, prec)
        u = (u - g / dg).truncate(prec)
    s = u.shift(1).truncate(order)
    # x(a + s) - x(a + t) must vanish to the requested order
    t = LaurentSeries.monomial(F, 1, order)
    diff = LaurentSeries(F, order, [], order)
    sk, tk = LaurentSeries.constant(F, F.one, order), LaurentSeries.constant(F, F.one, order)
    for k in range(1, min(order, n) + 1):
        sk, tk = (sk * s).truncate(order), (tk * t).truncate(order)
        if not F.is_zero(c[k]):
            diff = diff + (sk - tk) * c[k]
    if not diff.is_zero():
        raise ArithmeticError("involution series failed its defining identity")
    _INV_CACHE[key] = s
    return s


def infinity_x(curve: SpectralCurve) -> Any:
    """The point where x has a simple pole and y the lowest pole order (preferring z = infinity)."""
    cands = []
    if _pole_order_at_infinity(curve.x) == 1:
        cands.append((max(0, _pole_order_at_infinity(curve.y)), 0, INFINITY))
    for fac, m in irreducible_factors(curve.x.den):
        if m == 1 and fac.degree == 1:
            a = -fac[0]
            my, _ = curve.y.den.multiplicity(fac)
            cands.append((my, 1, a))
    if not cands:
        raise UnsupportedCurve("x has no simple pole")
    cands.sort(key=lambda c: (c[0], c[1]))
    return cands[0][2]
