from __future__ import annotations

import pytest
import sympy as sp

from oracle import Z, to_sympy

from specrec.curve import bergman, new_curve
from specrec.exact_arith import GENS, MRat, slot
from specrec.invariants import omega
from specrec.mixed import (
    COMPLEXITY_BOUND,
    H00,
    ComplexityBoundExceeded,
    MixedKey,
    RouteMismatch,
    dependencies,
    is_seed,
    large_x_limit,
    mixed_h,
    mixed_W,
    pole_audit_H,
    route_stats,
    schedule,
)
from specrec.mixed import residues as residues_mod
from specrec.symmetry_checks import b000_rhs


def test_h00_airy(airy):
    zp, zq = MRat(GENS[slot(0)]), MRat(GENS[slot(1)])
    assert H00(airy) == -1 / (zp - zq)


def test_seeds(curves):
    for c in curves.values():
        assert mixed_h(c, 0, 0, 0).form.expr == 1
        assert mixed_W(c, 0, 0, 1).form.is_zero()
        assert mixed_W(c, 0, 0, 2).form.expr == bergman(slot(0), slot(1))
        assert mixed_W(c, 0, 3, 0).form == omega(c, 0, 3)


@pytest.mark.parametrize("name", ["airy", "gaussian", "ising"])
def test_a100(curves, name):
    assert mixed_W(curves[name], 0, 1, 1).form.expr == -bergman(slot(0), slot(1))


@pytest.mark.parametrize("name", ["airy", "gaussian", "ising"])
def test_b000(curves, name):
    c = curves[name]
    s = mixed_h(c, 0, 1, 0).form.expr + mixed_h(c, 0, 0, 1).form.expr
    assert s == b000_rhs(c)


def test_w21_symmetric_in_the_first_block(curves):
    for c in curves.values():
        w = mixed_W(c, 0, 2, 1).form
        assert w.placed([slot(1), slot(0), slot(2)]) == w.expr


def test_complexity_bound(airy):
    assert COMPLEXITY_BOUND == 6
    with pytest.raises(ComplexityBoundExceeded):
        mixed_W(airy, 3, 4, 4)
    with pytest.raises(ComplexityBoundExceeded):
        mixed_h(airy, 2, 2, 1)


def test_schedule_is_causal():
    order = schedule(MixedKey("W", 1, 0, 2))
    pos = {k: i for i, k in enumerate(order)}
    for k in order:
        for d in dependencies(k):
            assert is_seed(d) or pos[d] < pos[k]
    # second index is the outer induction
    assert [k.l for k in order] == sorted(k.l for k in order)


def test_bad_keys():
    with pytest.raises(ValueError):
        MixedKey("W", 0, 0, 0)
    with pytest.raises(ValueError):
        MixedKey("x", 0, 1, 0)


def test_routes_agree_in_a_full_run(gaussian):
    mixed_W(gaussian, 0, 2, 1)
    st = route_stats()
    assert st.comparisons > 0 and st.mismatches == 0


def test_route_mismatch_is_raised(monkeypatch):
    fresh = new_curve("z^2", "z + z^3/5", name="fresh")
    real = residues_mod._factor_sum

    def corrupted(*args, **kw):
        return real(*args, **kw) + 1

    monkeypatch.setattr(residues_mod, "_factor_sum", corrupted)
    with pytest.raises(RouteMismatch):
        mixed_h(fresh, 0, 1, 0)


def test_h10_matches_the_explicit_residue_formula(airy):
    # Res over r -> p, p_1 (no other y-sheets of q on this curve)
    r = sp.Symbol("r")
    p, q, p1 = Z[0], Z[1], Z[2]
    F = 1 / (r - p1) ** 2 / ((p**2 - r**2) * (r - q))
    want = sp.residue(F, r, p) + sp.residue(F, r, p1)
    got = to_sympy(mixed_h(airy, 0, 1, 0).form.expr)
    assert sp.cancel(got - want) == 0


@pytest.mark.parametrize("key", [(0, 0, 1), (1, 0, 0), (1, 0, 1)])
def test_pole_audit_without_p_block(airy, key):
    assert pole_audit_H(airy, *key).ok


def _other_sheets(curve, i):
    """Factors of x(p) - x(p_i) other than z_p - z_{p_i}."""
    v, w = slot(0), slot(i)
    d = (curve.x_in(v) - curve.x_in(w)).num
    _, facs = d.factor()
    return {str(P) for P, _ in facs if P != GENS[v] - GENS[w] and P != GENS[w] - GENS[v] and P.degrees()[v] > 0
            and P.degrees()[w] > 0}


@pytest.mark.parametrize("name,key", [("airy", (0, 1, 0)), ("gaussian", (0, 1, 0)), ("airy", (0, 2, 1)),
                                      ("airy", (1, 1, 0))])
def test_extra_poles_sit_on_other_sheets_of_the_p_block(curves, name, key):
    c = curves[name]
    g, k, l = key
    a = pole_audit_H(c, g, k, l)
    sheets = set().union(*(_other_sheets(c, 2 + i) for i in range(k)))
    assert set(a.extra) == sheets


@pytest.mark.xfail(strict=True, reason="H_{1,0} has poles at p -> other x-sheets of p_1; see the decisions ledger")
def test_h10_pole_locus_only_a_and_q(airy):
    assert pole_audit_H(airy, 0, 1, 0).ok


LIMIT_KEYS = [(0, 1, 0), (0, 0, 1), (1, 0, 0), (0, 1, 1)]


@pytest.mark.parametrize("key", LIMIT_KEYS)
def test_large_x_limit(gaussian, key):
    ok, limit, expected = large_x_limit(gaussian, *key)
    assert ok, (limit, expected)


@pytest.mark.parametrize("key", LIMIT_KEYS)
def test_large_x_limit_where_y_also_blows_up(ising, key):
    # z = infinity is a simple pole of x and a double pole of y: sign flips
    ok, limit, expected = large_x_limit(ising, *key)
    assert limit == -expected and not expected.is_zero()


@pytest.mark.xfail(strict=True, reason="the pole of x is also a pole of y; see the decisions ledger")
def test_large_x_limit_literal_on_ising(ising):
    assert large_x_limit(ising, 0, 1, 0)[0]


@pytest.mark.xfail(strict=True, reason="infinity_x is a branch point of x on this curve; see the decisions ledger")
def test_large_x_limit_at_a_ramified_pole(airy):
    assert large_x_limit(airy, 0, 1, 0)[0]
