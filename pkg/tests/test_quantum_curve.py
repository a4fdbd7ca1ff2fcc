from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy import bell

from specrec.exact_arith import GENS, IX, IY, MRat, slot
from specrec.invariants import Differential, omega
from specrec.quantum_curve import (
    build_quantum_level,
    check_polynomiality,
    function_of_x,
    holomorphic_combination,
    node_polynomial,
    set_partitions,
    top_coefficients,
)
from specrec.quantum_curve.level import univariate_poly

X, Y = MRat(GENS[IX]), MRat(GENS[IY])


@pytest.fixture(scope="module")
def levels(curves):
    return {(n, g): build_quantum_level(curves[n], g) for n in curves for g in (0, 1)}


@given(st.integers(min_value=0, max_value=7))
def test_set_partitions_count(n):
    parts = list(set_partitions(list(range(n))))
    assert len(parts) == bell(n)
    assert len({tuple(map(tuple, p)) for p in parts}) == len(parts)
    for p in parts:
        assert sorted(sum(p, [])) == list(range(n))


@pytest.mark.parametrize("name", ["airy", "gaussian", "ising"])
def test_level_zero_is_the_classical_polynomial(curves, levels, name):
    c = curves[name]
    lv = levels[(name, 0)]
    assert lv.defect.is_zero()
    assert lv.coefficients == c.E(X, Y)


@pytest.mark.parametrize("name", ["airy", "gaussian"])
def test_genus_one_correction_vanishes(levels, name):
    lv = levels[(name, 1)]
    assert lv.full.is_zero()


def test_ising_genus_one_correction(levels):
    lv = levels[("ising", 1)]
    assert lv.defect.is_zero()
    want = (MRat(219704913) / 581042000) * X + (MRat(116915157) / 581042000) * Y - MRat(686801223) / 29645000
    assert lv.coefficients == want
    assert check_polynomiality(lv).passed


@pytest.mark.parametrize("name", ["airy", "gaussian", "ising"])
def test_top_two_coefficients_vanish(levels, name):
    assert all(c.is_zero() for c in top_coefficients(levels[(name, 1)]))


@pytest.mark.parametrize("name,defect", [("gaussian", 1 / (X**4 - 8 * X**2 + 16)), ("airy", (MRat(1) / 16) / X**2)])
def test_wrong_correlator_breaks_polynomiality(curves, name, defect):
    c = curves[name]
    w = omega(c, 1, 1)
    lv = build_quantum_level(c, 1, {(1, 1): Differential(1, w.expr * 2)})
    assert not check_polynomiality(lv).passed
    assert lv.defect == defect


@pytest.mark.parametrize("name", ["airy", "gaussian"])
def test_holomorphic_combination_on_smooth_models(levels, name):
    assert holomorphic_combination(levels[(name, 1)]).is_zero()


def test_holomorphic_combination_poles_at_nodes(curves, levels):
    # the plane model of this curve has nodes; the combination picks up poles there
    c = curves["ising"]
    nodes = node_polynomial(c)
    assert nodes.degree == 6
    h = holomorphic_combination(levels[("ising", 1)])
    assert univariate_poly(MRat(h.den)).monic() == nodes


def test_smooth_models_have_no_nodes(curves):
    assert node_polynomial(curves["airy"]).degree == 0
    assert node_polynomial(curves["gaussian"]).degree == 0


def test_function_of_x(gaussian):
    xz = gaussian.x_in(slot(0))
    assert function_of_x(gaussian, xz**2 + 1) == X**2 + 1
    with pytest.raises(ArithmeticError):
        function_of_x(gaussian, gaussian.y_in(slot(0)))
