from __future__ import annotations

import pytest
import sympy as sp

from oracle import to_sympy, z
from specrec.curve import DegenerateCurve, fiber_poly_symbolic, new_curve
from specrec.exact_arith import GENS, IR, MRat, slot

X, Y = sp.symbols("X Y")

PARAMS = {
    "airy": (z**2, z),
    "gaussian": (z + 1 / z, 1 / z),
    "ising": (z + 7 / z - 3 / z**2, 1 / z + 19 * z - 15 * z**2),
}


@pytest.mark.parametrize("name", sorted(PARAMS))
def test_classical_polynomial_is_the_resultant(curves, name):
    x, y = PARAMS[name]
    nx, dx = sp.fraction(sp.together(x))
    ny, dy = sp.fraction(sp.together(y))
    ref = sp.factor_list(sp.resultant(nx - X * dx, ny - Y * dy, z))[1]
    ref = [f for f, _ in ref if f.free_symbols >= {X, Y}]
    assert len(ref) == 1
    got = to_sympy(curves[name].classical_poly)
    ratio = sp.cancel(got / ref[0])
    assert ratio.free_symbols == set()


@pytest.mark.parametrize("name, d1, d2", [("airy", 0, 1), ("gaussian", 0, 1), ("ising", 2, 2)])
def test_degrees(curves, name, d1, d2):
    c = curves[name]
    assert (c.d1, c.d2) == (d1, d2)


def test_classical_polynomial_vanishes_on_the_curve(curves):
    for c in curves.values():
        assert c.E(c.x_in(slot(0)), c.y_in(slot(0))).is_zero()


def test_swap_exchanges_coordinates(gaussian):
    s = gaussian.swap()
    assert s.x == gaussian.y and s.y == gaussian.x
    assert s.swap() == gaussian


def test_fiber_polynomial_roots_are_the_other_sheets(gaussian):
    q = MRat(fiber_poly_symbolic(gaussian, "x", IR, slot(0)))
    # x = z + 1/z: the other sheet is 1/z
    assert q.substitute({IR: MRat(GENS[slot(0)]).inverse()}).is_zero()


def test_rejects_non_birational():
    with pytest.raises(DegenerateCurve):
        new_curve("z^2", "z^2")


def test_rejects_constant():
    with pytest.raises(DegenerateCurve):
        new_curve("z", "3")


def test_branch_points(curves):
    assert len(curves["airy"].branch_points_x) == 1
    # gaussian: dx = 0 at z = 1 and z = -1, one package each
    pts = sorted(str(p.point) for p in curves["gaussian"].branch_points_x)
    assert len(pts) == 2
