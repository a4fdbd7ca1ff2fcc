from __future__ import annotations

import json
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from oracle import to_sympy, z
from specrec.curve import new_curve
from specrec.invariants import omega
from specrec.symmetry_checks import (
    CheckReport,
    check_a100,
    check_b000,
    check_H_W_relation,
    check_phi_psi_residue,
    check_total_derivative,
    check_W_symmetry,
    check_xy_residue,
    spectator_points,
)


def test_report_json_shape():
    r = CheckReport("xy-residue", "airy", {"g": 1, "k": 0, "l": 0}, "fail", "1/16")
    d = json.loads(r.to_json())
    assert d["verdict"] == "fail" and d["witness"] == "1/16" and "note" in d
    ok = json.loads(CheckReport("a100", "airy", {}, "pass").to_json())
    assert "note" not in ok and ok["witness"] is None
    with pytest.raises(ValueError):
        CheckReport("a100", "airy", {}, "maybe")


@pytest.mark.parametrize("name", ["airy", "gaussian", "ising"])
@pytest.mark.parametrize("key", [(0, 1, 1), (0, 2, 1), (0, 1, 2), (1, 1, 0), (1, 0, 1)])
def test_w_symmetry(curves, name, key):
    assert check_W_symmetry(curves[name], *key).passed


@pytest.mark.parametrize("name", ["airy", "gaussian", "ising"])
def test_total_derivative(curves, name):
    for key in [(1, 0, 0), (0, 1, 0), (0, 0, 1)]:
        r = check_total_derivative(curves[name], *key)
        assert r.passed, r.witness


@pytest.mark.parametrize("name", ["airy", "gaussian", "ising"])
def test_exact_identities(curves, name):
    assert check_a100(curves[name]).passed
    assert check_b000(curves[name]).passed


@pytest.mark.parametrize("name", ["airy", "gaussian", "ising"])
@pytest.mark.parametrize("key", [(0, 1, 0), (0, 0, 1), (1, 0, 0)])
def test_h_w_relation(curves, name, key):
    r = check_H_W_relation(curves[name], *key)
    assert r.passed, r.witness


# ------------------------------------------------------------------ frozen residue values

def _xy_residue_oracle(x, y, w):
    f = sp.cancel(x * y * w)
    poles = set(sp.roots(sp.denom(sp.together(x)), z)) | set(sp.roots(sp.denom(sp.together(y)), z))
    tot = sum(sp.residue(f, z, a) for a in poles)
    return tot - sp.residue(f.subs(z, 1 / z) / z**2, z, 0)


@pytest.mark.parametrize("name,x,y", [("airy", z**2, z), ("gaussian", z + 1 / z, 1 / z)])
def test_xy_residue_genus_one_against_sympy(curves, name, x, y):
    w = to_sympy(omega(curves[name], 1, 1).expr).subs(sp.Symbol("z0"), z)
    want = _xy_residue_oracle(x, y, w)
    r = check_xy_residue(curves[name], 1, 0, 0)
    got = Fraction(0) if r.passed else Fraction(r.witness)
    assert got == Fraction(str(want))


@pytest.mark.parametrize(
    "name,key,value",
    [
        ("airy", (1, 0, 0), "1/16"),
        ("gaussian", (1, 0, 0), None),
        ("airy", (0, 2, 0), None),
        ("gaussian", (0, 2, 0), "5/288"),
        ("airy", (0, 1, 1), "3/2"),
        ("gaussian", (0, 1, 1), "7/64"),
        ("ising", (0, 1, 1), "17101183/10732176"),
    ],
)
def test_xy_residue_values(curves, name, key, value):
    r = check_xy_residue(curves[name], *key)
    assert (r.witness if not r.passed else None) == value


@pytest.mark.parametrize(
    "name,key,phi,psi",
    [
        ("airy", (1, 0, 0), "-1/24", "0"),
        ("airy", (0, 1, 0), "0", "-9"),
        ("airy", (0, 0, 1), "-18", "0"),
        ("gaussian", (1, 0, 0), "-1/12", "0"),
        ("gaussian", (0, 1, 0), "0", "10/27"),
        ("gaussian", (0, 0, 1), "-8/27", "0"),
        ("ising", (1, 0, 0), "-1/8", "-1/8"),
        ("ising", (0, 1, 0), "0", "3200/9"),
        ("ising", (0, 0, 1), "932/27", "0"),
    ],
)
def test_potential_residues(curves, name, key, phi, psi):
    r = check_phi_psi_residue(curves[name], *key)
    assert not r.passed
    assert r.witness == {"phi": phi, "psi": psi}


def test_potential_residue_airy_against_sympy():
    # Phi = 2 z^3 / 3 from y dx = 2 z^2 dz, paired with omega_{1,1} at z = 0
    w = -1 / (16 * z**4)
    assert sp.residue(sp.Rational(2, 3) * z**3 * w, z, 0) == sp.Rational(-1, 24)


def test_potential_residue_needs_unit_level(airy):
    with pytest.raises(ValueError):
        check_phi_psi_residue(airy, 1, 1, 0)


# ------------------------------------------------------------------ spectators

_poly_curve = new_curve("z^2 - z", "z^3 + 2*z", name="poly")


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=1, max_value=6))
def test_spectators_are_generic(n):
    c = _poly_curve
    pts = spectator_points(c, n)
    assert len(pts) == n
    xs = {c.x.num(p) / c.x.den(p) for p in pts}
    ys = {c.y.num(p) / c.y.den(p) for p in pts}
    assert len(xs) == n and len(ys) == n
    assert all(c.dx.num(p) != 0 and c.dy.num(p) != 0 for p in pts)
    assert spectator_points(c, n) == pts
