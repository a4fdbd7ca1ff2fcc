"""Exact checks of the x-y exchange properties on computed correlators.

Two representations of the same objects are compared throughout:

* ``w_hat``: the mixed recursion run on the curve, seeded by its own
  correlators;
* ``w_check``: the mixed recursion run on the swapped curve, with its two
  blocks relabeled back.

Both are returned in the layout ``[p_1 .. p_k, q_1 .. q_l]``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from ..curve import SpectralCurve, bergman
from ..exact_arith import QQ, LogarithmicObstruction, MRat, RationalFunction, slot
from ..invariants import Differential, free_energy, omega
from ..mixed import mixed_h, mixed_W
from .local import (
    form_series,
    function_series,
    is_infinite,
    point_label,
    pole_order,
    residue,
    residue_scan,
    residue_sum_at,
    restrict,
    spectator_points,
    univariate,
)
from .report import CheckReport, verdict

# ------------------------------------------------------------------ the two representations


def w_hat(curve: SpectralCurve, g: int, k: int, l: int) -> Differential:
    if l == 0:
        return omega(curve, g, k)
    return mixed_W(curve, g, k, l).form


def w_check(curve: SpectralCurve, g: int, k: int, l: int) -> Differential:
    s = curve.swap()
    w = omega(s, g, l) if k == 0 else mixed_W(s, g, l, k).form
    # swapped layout is [q_L, p_K]
    return Differential(k + l, w.placed([slot(k + b) for b in range(l)] + [slot(a) for a in range(k)]))


def _name(curve: SpectralCurve) -> str:
    return curve.name or repr(curve)


def _params(g, k=None, l=None) -> dict:
    d = {"g": g}
    if k is not None:
        d.update(k=k, l=l)
    return d


# ------------------------------------------------------------------ checks


def check_W_symmetry(curve: SpectralCurve, g: int, k: int, l: int) -> CheckReport:
    """``W_{k,l}`` from the curve equals ``W_{l,k}`` from the swapped curve."""
    a, b = w_hat(curve, g, k, l), w_check(curve, g, k, l)
    ok = a == b
    return CheckReport("w-symmetry", _name(curve), _params(g, k, l), verdict(ok), None if ok else str(a - b))


def check_F_symmetry(curve: SpectralCurve, g: int) -> CheckReport:
    if g < 2:
        raise ValueError("free energies are compared for g >= 2")
    f1, f2 = free_energy(curve, g), free_energy(curve.swap(), g)
    ok = f1 == f2
    return CheckReport(
        "f-symmetry", _name(curve), _params(g), verdict(ok), None if ok else str(f1 - f2),
        details={"F": str(f1), "F_swapped": str(f2)},
    )


def _sum_form(curve: SpectralCurve, g: int, k: int, l: int, pts: list) -> RationalFunction:
    """``W-hat_{k+1,l}(p, p_K|q_L) + W-check_{k,l+1}(p_K|q_L, p)`` as a function of ``p``."""
    a = restrict(w_hat(curve, g, k + 1, l), 0, {1 + i: v for i, v in enumerate(pts)})
    b = restrict(w_check(curve, g, k, l + 1), k + l, dict(enumerate(pts)))
    return a + b


def check_total_derivative(curve: SpectralCurve, g: int, k: int, l: int) -> CheckReport:
    """The mixed sum has no residues, and its antiderivative times ``dx dy`` has at most double poles at the poles of x and y."""
    pts = spectator_points(curve, k + l)
    S = _sum_form(curve, g, k, l, pts)
    bad = residue_scan(S)
    orders = {}
    for pt in curve.infinite_points:
        F, xs = function_series(curve.x, pt, 16)
        _, ys = function_series(curve.y, pt, 16)
        dxy = xs.derivative() * ys.derivative()
        _, s = form_series(S, pt, max(0, -dxy.val) + 2)
        try:
            A = s.antiderivative() * dxy
        except LogarithmicObstruction:
            orders[point_label(pt)] = "log"
            continue
        orders[point_label(pt)] = A.val if not A.is_zero() else None
    low = {p: o for p, o in orders.items() if o == "log" or (o is not None and o < -2)}
    ok = not bad and not low
    witness = None if ok else {"residues": bad, "pole_orders": low}
    return CheckReport(
        "total-derivative", _name(curve), _params(g, k, l), verdict(ok), witness,
        details={"spectators": pts, "orders": orders},
    )


def check_xy_residue(curve: SpectralCurve, g: int, k: int, l: int) -> CheckReport:
    """``sum over poles of x and y of Res x y W-hat_{k+1,l}`` vanishes."""
    pts = spectator_points(curve, k + l)
    w = restrict(w_hat(curve, g, k + 1, l), 0, {1 + i: v for i, v in enumerate(pts)})
    f = curve.x * curve.y * w
    r = residue_sum_at(f, curve.infinite_points)
    ok = r == 0
    return CheckReport("xy-residue", _name(curve), _params(g, k, l), verdict(ok), None if ok else str(r),
                       details={"spectators": pts})


def _bare_w20(curve: SpectralCurve, which: str) -> MRat:
    """``B - df df/(f - f)^2``: the two-point form before the pole of ``f`` at coincident values is removed."""
    p, q = slot(0), slot(1)
    f = curve.x_in if which == "x" else curve.y_in
    df = curve.dx_in if which == "x" else curve.dy_in
    return bergman(p, q) - df(p) * df(q) / (f(p) - f(q)) ** 2


def _hw_side(curve: SpectralCurve, g: int, k: int, l: int, mirrored: bool, pts: list) -> dict:
    """Residues of ``h dy(q)`` at each pole against ``-ord(y) W-hat / dx(p)`` (or the mirror image)."""
    h = mixed_h(curve, g, k, l).form
    fixed = pts[0]
    rest = pts[1:]
    spect = {2 + i: v for i, v in enumerate(rest)}
    if not mirrored:
        # q free, p = fixed
        f = restrict(h, 1, {0: fixed, **spect}) * curve.dy
        if (g, k, l) == (0, 1, 0):
            W = Differential(2, _bare_w20(curve, "x"))
        else:
            W = w_hat(curve, g, k + 1, l)
        wv = W.evaluate(fixed, *rest) if W.arity else Fraction(0)
        target = wv / _at(curve.dx, fixed)
        order_of = curve.y
    else:
        f = restrict(h, 0, {1: fixed, **spect}) * curve.dx
        if (g, k, l) == (0, 0, 1):
            W = Differential(2, _bare_w20(curve, "y"))
        else:
            W = w_check(curve, g, k, l + 1)
        wv = W.evaluate(*rest, fixed) if W.arity else Fraction(0)
        target = wv / _at(curve.dy, fixed)
        order_of = curve.x
    out = {}
    for pt in curve.infinite_points:
        F, _ = function_series(order_of, pt, 1)
        m = pole_order(order_of, pt)
        r = residue(f, pt)
        expect = F(-m * Fraction(target))
        out[point_label(pt)] = (r, expect, F.is_zero(r - expect))
    return out


def _at(f: RationalFunction, z) -> Fraction:
    return Fraction(f.num(z)) / Fraction(f.den(z))


def check_H_W_relation(curve: SpectralCurve, g: int, k: int, l: int) -> CheckReport:
    """At every pole of y, ``Res_q h dy(q) = -ord(y) W-hat_{k+1,l}/dx(p)``; mirrored with x and ``W-check``."""
    pts = spectator_points(curve, 1 + k + l)
    direct = _hw_side(curve, g, k, l, False, pts)
    mirror = _hw_side(curve, g, k, l, True, pts)
    ok = all(v[2] for v in direct.values()) and all(v[2] for v in mirror.values())
    witness = None
    if not ok:
        witness = {
            "dy": {p: [str(v[0]), str(v[1])] for p, v in direct.items() if not v[2]},
            "dx": {p: [str(v[0]), str(v[1])] for p, v in mirror.items() if not v[2]},
        }
    return CheckReport("h-w-relation", _name(curve), _params(g, k, l), verdict(ok), witness,
                       details={"spectators": pts})


def check_a100(curve: SpectralCurve) -> CheckReport:
    """``W_{2,0} + W_{1,1} = 0`` at genus zero."""
    s = omega(curve, 0, 2) + mixed_W(curve, 0, 1, 1).form
    return CheckReport("a100", _name(curve), _params(0, 1, 1), verdict(s.is_zero()), None if s.is_zero() else str(s))


def b000_rhs(curve: SpectralCurve) -> MRat:
    """``d_{p_1} 1/((x(p) - x(p_1))(y(p_1) - y(q)))`` in the h layout ``[p, q, p_1]``."""
    p, q, p1 = slot(0), slot(1), slot(2)
    return (MRat(1) / ((curve.x_in(p) - curve.x_in(p1)) * (curve.y_in(p1) - curve.y_in(q)))).derivative(p1)


def check_b000(curve: SpectralCurve) -> CheckReport:
    """``h_{1,0} + h_{0,1}`` against the explicit total derivative."""
    lhs = mixed_h(curve, 0, 1, 0).form.expr + mixed_h(curve, 0, 0, 1).form.expr
    d = lhs - b000_rhs(curve)
    return CheckReport("b000", _name(curve), _params(0, 1, 0), verdict(d.is_zero()), None if d.is_zero() else str(d))


# ------------------------------------------------------------------ potentials


def _local_potential(curve: SpectralCurve, pt: Any, order: int, which: str):
    """Antiderivative of ``y dx`` (``which="phi"``) or ``x dy`` near a point, zero constant."""
    if which == "phi":
        f = curve.y * curve.dx
    else:
        f = curve.x * curve.dy
    F, s = form_series(f, pt, order)
    return F, s.antiderivative()


def check_phi_psi_residue(curve: SpectralCurve, g: int, k: int, l: int) -> CheckReport:
    """Residues of the potentials against W-hat and W-check, for ``g + k + l = 1``.

    Both residue sums are compared with ``(2 - 2g - k - l) W-hat_{k,l}``,
    which vanishes in every supported case.
    """
    if g + k + l != 1:
        raise ValueError("only g + k + l = 1 is supported")
    pts = spectator_points(curve, k + l)
    pk, ql = pts[:k], pts[k:]
    rhs = Fraction(0)
    sides = {}
    for which in ("phi", "psi"):
        if which == "phi":
            form = restrict(w_hat(curve, g, k + 1, l), 0, {1 + i: v for i, v in enumerate(pts)})
            centers = list(curve.branch_points_x) + list(ql)
        else:
            form = restrict(w_check(curve, g, k, l + 1), k + l, dict(enumerate(pts)))
            centers = list(curve.branch_points_y) + list(pk)
        total = Fraction(0)
        for pt in centers:
            F, s = form_series(form, pt, 1)
            _, pot = _local_potential(curve, pt, max(1, -s.val + 1), which)
            r = (pot * s).residue()
            total += r if F is QQ else F.trace(r)
        sides[which] = total
    ok = sides["phi"] == rhs and sides["psi"] == rhs
    witness = None if ok else {k_: str(v) for k_, v in sides.items()}
    return CheckReport("phi-psi-residue", _name(curve), _params(g, k, l), verdict(ok), witness,
                       details={"spectators": pts})
