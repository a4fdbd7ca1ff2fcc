"""Exact correlators ``omega_{g,n}`` and free energies by residues at the zeros of dx."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Any

from ..curve import BranchPackage, SpectralCurve, bergman, local_involution_series, third_kind
from ..exact_arith import (
    INFINITY,
    IR,
    IS,
    QQ,
    LaurentSeries,
    MRat,
    Poly,
    RationalFunction,
    gen,
    series_expand,
    slot,
)
from ..exact_arith.local import LocalField, expand, point_series
from .differential import Differential
from .table import CorrelatorTable, table_for

# extra relative precision of the confirming pass
TRUNCATION_MARGIN = 6
VERIFY_TRUNCATION = True


class UnstableCorrelator(ValueError):
    """Requested (g, n) is neither stable nor one of the base cases."""


class TruncationError(ArithmeticError):
    """A residue changed when the truncation order was raised."""


def omega(curve: SpectralCurve, g: int, n: int, base_point: Any = None) -> Differential:
    """``omega_{g,n}`` of ``curve`` as an n-slot differential.

    ``base_point`` (a rational number or ``INFINITY``) selects the kernel
    ``dS_{z,o}(z0) / ((y(z) - y(sigma z)) dx(z))``; by default the symmetric
    kernel ``dS_{z,sigma z}(z0) / (2 (y(z) - y(sigma z)) dx(z))`` is used.
    """
    if g < 0 or n < 1:
        raise UnstableCorrelator(f"no correlator for (g, n) = ({g}, {n})")
    if (g, n) == (0, 1):
        return Differential.zero(1)
    if (g, n) == (0, 2):
        return Differential(2, bergman(slot(0), slot(1)))
    if 2 * g - 2 + n < 1:
        raise UnstableCorrelator(f"(g, n) = ({g}, {n}) is unstable")
    if base_point is not None:
        _check_base_point(curve, base_point)
    table = table_for(curve, ("omega", _bp_key(base_point)))
    return _omega(curve, g, n, base_point, table)


def _bp_key(o: Any):
    return None if o is None else ("inf" if o is INFINITY else Fraction(o))


def _check_base_point(curve: SpectralCurve, o: Any) -> None:
    if o is INFINITY:
        return
    o = QQ(o)
    for pack in curve.branch_points_x:
        if pack.minimal_polynomial(o) == 0:
            raise ValueError("base point coincides with a branch point")


def _omega(curve: SpectralCurve, g: int, n: int, base_point: Any, table: CorrelatorTable) -> Differential:
    if (g, n) == (0, 1):
        return Differential.zero(1)
    if (g, n) == (0, 2):
        return Differential(2, bergman(slot(0), slot(1)))
    return table.fetch(("omega", g, n), lambda: _compute(curve, g, n, base_point, table))


def _compute(curve, g, n, base_point, table) -> Differential:
    total = MRat(0)
    for pack in curve.branch_points_x:
        r0 = _branch_residue(curve, pack, g, n, base_point, table, 0)
        if VERIFY_TRUNCATION:
            r1 = _branch_residue(curve, pack, g, n, base_point, table, TRUNCATION_MARGIN)
            if r0 != r1:
                raise TruncationError(f"omega_{g},{n}: residue at {pack} not stable under truncation")
        total = total + r0
    return Differential(n, total)


class _Lazy:
    """Expansion of a rational function at the branch point, refined on demand."""

    def __init__(self, F: MRat, subs: dict, lf: LocalField):
        self.F, self.subs, self.lf = F, subs, lf
        self._val = None

    @property
    def val(self) -> int:
        if self._val is None:
            self._val = expand(self.F, self.subs, self.lf, 1).val
        return self._val

    def upto(self, prec: int) -> LaurentSeries:
        """Series known at least up to (excluding) ``t^prec``."""
        return expand(self.F, self.subs, self.lf, max(1, prec - self.val))


def _branch_residue(curve, pack: BranchPackage, g: int, n: int, base_point, table, extra: int) -> MRat:
    F0, center = pack.field()
    lf = LocalField(F0)

    def t_series(prec: int) -> LaurentSeries:
        return point_series(center, F0, max(prec, 2))

    def s_series(prec: int) -> LaurentSeries:
        return local_involution_series(curve, pack, max(prec, 1)) + F0(center)

    sub_r = {IR: t_series}
    sub_s = {IS: s_series}
    sub_rs = {IR: t_series, IS: s_series}
    J = [slot(1 + i) for i in range(n - 1)]

    # kernel
    r, s = gen(IR), gen(IS)
    yr, ys = curve.y_in(IR), curve.y_in(IS)
    if base_point is None:
        K = third_kind(r, s, slot(0)) / (2 * (yr - ys) * curve.dx_in(IR))
    else:
        o = base_point if base_point is INFINITY else MRat(QQ(base_point))
        K = third_kind(r, o, slot(0)) / ((yr - ys) * curve.dx_in(IR))
    kernel = _Lazy(K, sub_rs, lf)

    pairs: list[_Lazy] = []
    products: list[tuple[_Lazy, _Lazy]] = []
    if g >= 1:
        w = _omega(curve, g - 1, n + 1, base_point, table)
        pairs.append(_Lazy(w.placed([IR, IS] + J), sub_rs, lf))
    for h in range(g + 1):
        for m in range(n):
            for I in combinations(range(n - 1), m):
                rest = [i for i in range(n - 1) if i not in I]
                if (h, m) == (0, 0) or (g - h, len(rest)) == (0, 0):
                    continue  # omega_{0,1} = 0
                a = _omega(curve, h, 1 + m, base_point, table)
                b = _omega(curve, g - h, 1 + len(rest), base_point, table)
                A = a.placed([IR] + [J[i] for i in I])
                B = b.placed([IS] + [J[i] for i in rest])
                if A.is_zero() or B.is_zero():
                    continue
                products.append((_Lazy(A, sub_r, lf), _Lazy(B, sub_s, lf)))
    if not pairs and not products:
        return MRat(0)

    vals = [p.val for p in pairs] + [a.val + b.val for a, b in products]
    v_rec = min(vals)
    P = -kernel.val + extra  # precision the recursion kernel needs from the bracket
    L = lf.L
    rec = LaurentSeries(L, P, [], P)
    for p in pairs:
        rec = rec + p.upto(P)
    for a, b in products:
        rec = rec + a.upto(P - b.val) * b.upto(P - a.val)
    ds = lf.lift_series(s_series(P - v_rec + 2).derivative())
    rec = rec * ds.truncate(P - v_rec)
    full = kernel.upto(-v_rec + extra) * rec
    return lf.trace(full.residue())


# ---------------------------------------------------------------- free energy


def _univariate_over_q(f) -> RationalFunction:
    num = Poly([c.constant_value() for c in f.num.coeffs], QQ)
    den = Poly([c.constant_value() for c in f.den.coeffs], QQ)
    return RationalFunction(num, den)


def branch_residues_of_omega(curve: SpectralCurve, g: int) -> list[Any]:
    """``Res_{z->a} omega_{g,1}`` for each branch point package (in its number field)."""
    w = _univariate_over_q(omega(curve, g, 1).slice(0))
    out = []
    for pack in curve.branch_points_x:
        F0, center = pack.field()
        out.append(series_expand(w, center, 0).residue())
    return out


def free_energy(curve: SpectralCurve, g: int, phi_constant: Any = 0) -> Fraction:
    """``F_g = 1/(2-2g) sum_a Res_{z->a} Phi_a(z) omega_{g,1}(z)`` with ``dPhi_a = y dx`` near ``a``.

    ``phi_constant`` is added to every local antiderivative; the result does
    not depend on it because ``omega_{g,1}`` has no residues.
    """
    if g < 2:
        raise UnstableCorrelator("free energies are provided for g >= 2 only")
    w = _univariate_over_q(omega(curve, g, 1).slice(0))
    ydx = curve.y * curve.dx
    total = Fraction(0)
    for pack in curve.branch_points_x:
        F0, center = pack.field()
        ws = series_expand(w, center, 0)
        if not F0.is_zero(ws.residue()):
            raise ArithmeticError(f"omega_{g},1 has a nonzero residue at {pack}")
        phi = series_expand(ydx, center, max(1, -ws.val)).antiderivative() + F0(phi_constant)
        res = (phi * ws).residue()
        total += res if F0 is QQ else F0.trace(res)
    return total / (2 - 2 * g)
