from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest
import sympy as sp

from oracle import EO, Z, to_sympy, z
from specrec.curve import bergman
from specrec.exact_arith import slot
from specrec.invariants import UnstableCorrelator, free_energy, omega
from specrec.invariants.bigfloat import BigFloatEngine, bigfloat_free_energy


@pytest.fixture(scope="module")
def eo():
    return {"airy": EO(z**2, z), "gaussian": EO(z + 1 / z, 1 / z)}


@pytest.mark.parametrize("name", ["airy", "gaussian"])
def test_omega_11_against_residue_oracle(curves, eo, name):
    got = to_sympy(omega(curves[name], 1, 1).expr)
    assert sp.cancel(got - eo[name].w11(Z[0])) == 0


@pytest.mark.parametrize("name", ["airy", "gaussian"])
def test_omega_03_against_residue_oracle(curves, eo, name):
    got = to_sympy(omega(curves[name], 0, 3).expr)
    assert sp.cancel(got - eo[name].w03(Z[0], Z[1], Z[2])) == 0


def test_airy_closed_forms(airy):
    assert str(omega(airy, 1, 1).expr) == "(-1/16)/(z0^4)"
    assert omega(airy, 0, 3).evaluate(1, 1, 1) == Fraction(-1, 2)


def test_unstable_initial_data(curves):
    for c in curves.values():
        assert omega(c, 0, 1).is_zero()
        assert omega(c, 0, 2).expr == bergman(slot(0), slot(1))
    with pytest.raises(UnstableCorrelator):
        omega(curves["airy"], 0, 0)


@pytest.mark.parametrize("name", ["airy", "gaussian", "ising"])
def test_symmetric_in_all_slots(curves, name):
    c = curves[name]
    assert omega(c, 0, 3).is_symmetric()
    assert omega(c, 1, 2).is_symmetric()


def test_omega_04_symmetric(gaussian):
    assert omega(gaussian, 0, 4).is_symmetric()


def test_gaussian_free_energy():
    # orbifold Euler characteristic of M_2, the GUE genus-two free energy
    from conftest import bundled

    assert free_energy(bundled("gaussian"), 2) == Fraction(-1, 240)


def test_airy_free_energy_vanishes(airy):
    # z -> lambda z rescales y dx by lambda^3 and F_g by lambda^(6-6g)
    assert free_energy(airy, 2) == 0
    assert free_energy(airy, 3) == 0


def test_free_energy_ignores_the_integration_constant(gaussian):
    assert free_energy(gaussian, 2, phi_constant=7) == free_energy(gaussian, 2)


def test_no_residues_at_branch_points(curves):
    from specrec.invariants import branch_residues_of_omega

    for c in curves.values():
        assert all(r == 0 for r in branch_residues_of_omega(c, 2))


def test_free_energy_needs_g_two(airy):
    with pytest.raises(UnstableCorrelator):
        free_energy(airy, 1)


def test_bigfloat_free_energy_gaussian():
    from conftest import bundled

    v = bigfloat_free_energy(bundled("gaussian"), 2, 256)
    mpmath.mp.prec = 256
    assert abs(v - mpmath.mpf(-1) / 240) < mpmath.mpf(10) ** -60


def test_bigfloat_evaluation_matches_exact(gaussian):
    eng = BigFloatEngine(gaussian, 128)
    pts = [Fraction(3), Fraction(5), Fraction(7)]
    exact = omega(gaussian, 0, 3).evaluate(*pts)
    got = eng.evaluate(0, 3, pts)
    mpmath.mp.prec = 128
    assert abs(got - mpmath.mpf(exact.numerator) / exact.denominator) < mpmath.mpf(10) ** -30


def test_base_point_dependence_disappears(ising):
    a = omega(ising, 1, 1, base_point=Fraction(11, 3))
    assert a == omega(ising, 1, 1)
