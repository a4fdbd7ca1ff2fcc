from __future__ import annotations

import pytest

from specrec.exact_arith import GENS, IX, IY, MRat, slot
from specrec.mixed import (
    CORRECTION_SIGN,
    U00,
    NotPolynomial,
    Utilde00,
    assemble_E,
    assemble_U,
    assemble_Utilde,
    polynomial_in,
)


def test_closed_forms(ising):
    X, Y = MRat(GENS[IX]), MRat(GENS[IY])
    c = ising
    assert Utilde00(c) == c.E(X, c.y_in(slot(1))) / (X - c.x_in(slot(1)))
    assert U00(c) == c.E(c.x_in(slot(0)), Y) / (Y - c.y_in(slot(0)))


def test_classical_level(curves):
    for c in curves.values():
        e = assemble_E(c, 0)
        assert e.agree
        E = c.E(c.x_in(slot(0)), c.y_in(slot(1)))
        assert e.loop1.expr == E


def test_utilde00_degree_on_ising(ising):
    a = assemble_Utilde(ising, 0)
    assert a.polynomial and a.degree == (ising.d1,)


@pytest.mark.parametrize("name", ["airy", "gaussian", "ising"])
def test_genus_one_polynomiality(curves, name):
    c = curves[name]
    ut, u, e = assemble_Utilde(c, 1), assemble_U(c, 1), assemble_E(c, 1)
    assert ut.ok, ut.failure
    assert u.ok, u.failure
    assert e.agree and e.ok


@pytest.mark.parametrize("key", [(0, 1, 0), (0, 0, 1)])
def test_boundary_polynomiality_ising(ising, key):
    assert assemble_Utilde(ising, *key).ok
    assert assemble_U(ising, *key).ok


def test_swap_duality(gaussian):
    # U of the swapped curve is U-tilde of the curve with p and q exchanged
    u = assemble_U(gaussian.swap(), 0).expr
    ut = assemble_Utilde(gaussian, 0).expr
    swapped = u.rename({slot(0): slot(1), slot(1): slot(0), IY: IX})
    # the classical polynomial is only fixed up to a constant factor
    ratio = swapped / ut
    assert ratio.variables() == set() and not ratio.is_zero()


def test_correction_sign_is_pinned():
    assert CORRECTION_SIGN == -1


def test_polynomial_in_rejects_non_polynomials(airy):
    with pytest.raises(NotPolynomial):
        polynomial_in(airy, MRat(GENS[slot(0)]), slot(0), "x")
    cs = polynomial_in(airy, MRat(GENS[slot(0)]) ** 4 + 1, slot(0), "x")
    assert cs == [1, 0, 1]
