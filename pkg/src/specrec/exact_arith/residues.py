"""Residues and local expansions of univariate rational functions.

All residues are those of the one-form ``f(z) dz``.  The point at infinity is
reached through ``z = 1/w``, ``dz = -dw/w^2``.
"""

from __future__ import annotations

from typing import Any

from .numberfield import DegenerateConfiguration, QElem, QuotientField
from .poly import Poly
from .ratfunc import RationalFunction
from .series import INFINITY, LaurentSeries, taylor_shift


def _field_of(center: Any, default):
    if isinstance(center, QElem):
        return center.parent
    return default


def pole_order(f: RationalFunction, center: Any) -> int:
    """Order of the pole of the function ``f`` at ``center`` (0 if regular)."""
    if center is INFINITY:
        return max(0, f.num.degree - f.den.degree)
    L = _field_of(center, f.field)
    den = taylor_shift(f.den, L(center), L)
    v = 0
    while v < len(den) and L.is_zero(den[v]):
        v += 1
    return v


def series_expand(f: RationalFunction, center: Any, order: int) -> LaurentSeries:
    """Laurent expansion of the function ``f`` at ``center`` up to exponent ``order - 1``.

    At infinity the local coordinate is ``w = 1/z`` and the expansion is that
    of the function ``f(1/w)`` (no Jacobian).
    """
    if center is INFINITY:
        L = f.field
        n = max(f.num.degree, f.den.degree)
        num = f.num.reverse(n)
        den = f.den.reverse(n)
        return _quotient_series(list(num.coeffs), list(den.coeffs), L, order, INFINITY)
    L = _field_of(center, f.field)
    c = L(center)
    return _quotient_series(taylor_shift(f.num, c, L), taylor_shift(f.den, c, L), L, order, center)


def _quotient_series(num: list, den: list, L, order: int, center) -> LaurentSeries:
    v = 0
    while v < len(den) and L.is_zero(den[v]):
        v += 1
    if v == len(den):
        raise ZeroDivisionError("denominator vanishes identically")
    rel = order + v  # precision needed for num/(den/t^v)
    n = LaurentSeries(L, 0, [L(a) for a in num] + [L.zero] * max(0, rel - len(num)), max(rel, 0), center)
    d = LaurentSeries(L, 0, [L(a) for a in den[v:]] + [L.zero] * max(0, rel - len(den) + v), max(rel, 1), center)
    return (n * d.inverse()).shift(-v).truncate(order)


def residue_at_point(f: RationalFunction, center: Any) -> Any:
    """Residue of ``f(z) dz`` at a finite point or at infinity."""
    if center is INFINITY:
        return residue_at_infinity(f)
    v = pole_order(f, center)
    L = _field_of(center, f.field)
    if v == 0:
        return L.zero
    return series_expand(f, center, 0).residue()


def residue_at_infinity(f: RationalFunction) -> Any:
    """Residue of ``f(z) dz`` at ``z = infinity``."""
    F = f.field
    dn, dd = f.num.degree, f.den.degree
    if dn - dd <= -2:
        return F.zero
    # f(1/w) = w^(dd-dn) num_rev/den_rev; Res_inf f dz = -[coefficient of z^-1] = -[w^1 of f(1/w)]
    k = 1 - (dd - dn)
    s = _quotient_series(list(f.num.reverse().coeffs), list(f.den.reverse().coeffs), F, k + 1, INFINITY)
    return -s[k]


def residue_sum_over_roots(f: RationalFunction, D: Poly, method: str = "auto") -> Any:
    """Sum of the residues of ``f(z) dz`` over the roots of ``D``.

    Methods: ``"trace"`` (simple poles, quotient-ring trace), ``"series"``
    (local expansion at a generic root, then trace; any pole order),
    ``"complement"`` (partial fractions; equivalently minus the residues at
    every other pole including infinity), ``"auto"`` (trace if the poles are
    simple, series otherwise).
    """
    D = D.monic()
    if D.degree < 1:
        return f.field.zero
    if not D.is_squarefree():
        raise DegenerateConfiguration("root set polynomial is not squarefree")
    m, rest = f.den.multiplicity(D)
    if m == 0:
        # f might still have poles at some roots of D
        g = f.den.gcd(D)
        if g.degree == 0:
            return f.field.zero
        return residue_sum_over_roots(f, g, method)
    if f.den.gcd(D).degree != D.degree or rest.gcd(D).degree > 0:
        # only part of D divides the denominator, or mixed multiplicities; split D
        return _split_sum(f, D, method)
    if method == "auto":
        method = "trace" if m == 1 else "series"
    if method == "trace":
        if m != 1:
            raise ValueError("trace route requires simple poles")
        return _trace_route(f, D)
    if method == "series":
        return _series_route(f, D)
    if method == "complement":
        return _complement_route(f, D, m, rest)
    raise ValueError(f"unknown method {method!r}")


def _split_sum(f: RationalFunction, D: Poly, method: str) -> Any:
    """Group the roots of ``D`` by their pole multiplicity and sum each group."""
    total = f.field.zero
    prev = Poly.constant(f.field.one, f.field)
    layers = []
    k = 1
    while True:
        cur = f.den.gcd(D**k)
        s_k = cur.exact_div(prev)  # roots with multiplicity >= k
        if s_k.degree == 0:
            break
        layers.append(s_k)
        prev = cur
        k += 1
    for i, s_k in enumerate(layers):
        exact = s_k if i + 1 == len(layers) else s_k.exact_div(layers[i + 1])
        if exact.degree > 0:
            total = total + residue_sum_over_roots(f, exact, method)
    return total


def _trace_route(f: RationalFunction, D: Poly) -> Any:
    L = QuotientField(D)
    rho = L.gen
    cof = f.den.exact_div(D)
    val = f.num(rho) / (cof(rho) * D.derivative()(rho))
    return L.trace(val)


def _series_route(f: RationalFunction, D: Poly) -> Any:
    L = QuotientField(D)
    return L.trace(series_expand(f, L.gen, 0).residue())


def _complement_route(f: RationalFunction, D: Poly, m: int, rest: Poly) -> Any:
    Dm = D**m
    s, t, g = rest.gcdex(Dm)
    if g.degree != 0:
        raise DegenerateConfiguration("root set shares roots with the remaining poles")
    # 1 = s*rest + t*Dm  =>  f = num*s/Dm + num*t/rest
    c = (f.num * s) % Dm
    if c.degree == Dm.degree - 1:
        return c.lc / Dm.lc
    return f.field.zero


def total_residue(f: RationalFunction) -> Any:
    """Sum of residues at all poles including infinity (zero by the residue theorem)."""
    at_inf = residue_at_infinity(f)
    if f.den.degree == 0:
        return at_inf
    return residue_sum_over_roots(f, f.den.squarefree_part()) + at_inf


def poly_resultant(a, b, eliminated_variable=None):
    """Resultant of two polynomials.

    Univariate :class:`Poly` inputs give a field element; multivariate flint
    polynomials are eliminated along ``eliminated_variable``.
    """
    if isinstance(a, Poly):
        if a.is_zero() or b.is_zero():
            raise ValueError("resultant of a zero polynomial")
        return a.resultant(b)
    if a.is_zero() or b.is_zero():
        raise ValueError("resultant of a zero polynomial")
    return a.resultant(b, eliminated_variable)
