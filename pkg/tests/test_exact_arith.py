from __future__ import annotations

from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from specrec.exact_arith import (
    INFINITY,
    QQ,
    LaurentSeries,
    LogarithmicObstruction,
    Poly,
    QuotientField,
    RationalFunction,
    residue_at_point,
    residue_sum_over_roots,
    series_expand,
    total_residue,
)

zs = sp.Symbol("z")
small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def poly(cs):
    return Poly([QQ(c) for c in cs], QQ)


def to_sp(p: Poly):
    return sum(sp.Rational(c.numerator, c.denominator) * zs**i for i, c in enumerate(p.coeffs))


polys = st.lists(small, min_size=1, max_size=5).map(poly)
nonzero_polys = polys.filter(lambda p: not p.is_zero())


@given(nonzero_polys, nonzero_polys)
@settings(max_examples=60, deadline=None)
def test_gcdex_bezout(a, b):
    s, t, g = a.gcdex(b)
    assert s * a + t * b == g
    assert (a % g).is_zero() and (b % g).is_zero()


@given(polys, nonzero_polys)
@settings(max_examples=60, deadline=None)
def test_residue_theorem(n, d):
    d = d * poly([1, 0, 1])  # at least one finite pole
    f = RationalFunction(n, d)
    assert total_residue(f) == 0


@given(polys, st.lists(small, min_size=1, max_size=3, unique=True), st.integers(1, 3))
@settings(max_examples=40, deadline=None)
def test_residues_match_sympy(n, roots, mult):
    d = Poly.from_roots([QQ(r) for r in roots], QQ) ** mult
    f = RationalFunction(n, d)
    expr = to_sp(n) / to_sp(d)
    for r in roots:
        assert residue_at_point(f, QQ(r)) == sp.residue(expr, zs, sp.Rational(r.numerator, r.denominator))


def test_residue_sum_routes_agree():
    # poles at the roots of z^2 - 2 (irrational), double, plus a simple one at 1
    D = poly([-2, 0, 1])
    f = RationalFunction(poly([1, 3, 0, 1]), D * D * poly([-1, 1]))
    a = residue_sum_over_roots(f, D, "series")
    b = residue_sum_over_roots(f, D, "complement")
    assert a == b
    assert a + residue_at_point(f, QQ(1)) + residue_at_point(f, INFINITY) == 0


def test_trace_in_quadratic_field():
    L = QuotientField(poly([-2, 0, 1]))
    r = L.gen
    assert L.trace(r) == 0
    assert L.trace(r * r) == 4
    assert L.norm(r + 1) == -1
    assert (r + 1) * (r + 1).inverse() == L.one


@given(st.lists(small, min_size=2, max_size=3))
@settings(max_examples=40, deadline=None)
def test_trace_is_linear(cs):
    L = QuotientField(poly([-3, 1, 0, 1]))  # irreducible cubic
    a = L(poly(cs))
    b = L(poly(list(reversed(cs))))
    assert L.trace(a + b) == L.trace(a) + L.trace(b)
    assert L.trace(a * 3) == 3 * L.trace(a)


def test_series_expand_matches_sympy():
    f = RationalFunction(poly([1, 0, 2]), poly([0, 1, -1]))  # (1 + 2z^2)/(z - z^2)
    s = series_expand(f, QQ(0), 5)
    ref = sp.series((1 + 2 * zs**2) / (zs - zs**2), zs, 0, 5).removeO()
    for e in range(-1, 5):
        assert s[e] == ref.coeff(zs, e)


def test_series_at_infinity_uses_inverse_coordinate():
    f = RationalFunction(poly([0, 0, 1]), poly([1, 1]))  # z^2/(1+z) = 1/w - 1 + w - ...
    s = series_expand(f, INFINITY, 3)
    assert [s[e] for e in (-1, 0, 1, 2)] == [1, -1, 1, -1]


@given(st.lists(small, min_size=1, max_size=6), st.fractions(min_value=1, max_value=4, max_denominator=3))
@settings(max_examples=40, deadline=None)
def test_revert_is_compositional_inverse(rest, a1):
    s = LaurentSeries(QQ, 1, [QQ(a1)] + [QQ(c) for c in rest], 8)
    r = s.revert()
    u = LaurentSeries.monomial(QQ, 1, 8)
    d = s.compose(r) - u
    assert d.is_zero() and d.prec == 8


def test_antiderivative_refuses_logarithm():
    s = LaurentSeries(QQ, -1, [Fraction(1)], 3)
    with pytest.raises(LogarithmicObstruction):
        s.antiderivative()
