"""Local expansions of multivariate rational functions at a point of the sphere.

Some ring variables are replaced by power series ``c + s(t)`` whose
coefficients live in ``Q`` or in a number field ``Q(a)``; the remaining
variables stay symbolic.  Results are Laurent series in ``t`` over

* ``QZ`` (rational functions in the symbolic variables) when the center is
  rational, or
* ``QZ[a]/(m)`` when the center is an algebraic number with minimal
  polynomial ``m``; sums over the conjugates are taken by the trace.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Callable, Mapping

import flint

from .fields import QQ
from .mpoly import CTX, QZ, MRat
from .numberfield import QElem, QuotientField
from .poly import Poly
from .series import LaurentSeries


class LocalField:
    """The pair (scalar field of the center, coefficient field of expansions)."""

    def __init__(self, base: Any):
        # base is QQ or a QuotientField over QQ
        self.base = base
        if base is QQ:
            self.L = QZ
            self.degree = 1
        else:
            m = base.modulus
            self.L = QuotientField(Poly([QZ(c) for c in m.coeffs], QZ))
            self.degree = m.degree

    def lift(self, x: Any) -> Any:
        """Embed a base scalar into the expansion field."""
        if self.base is QQ:
            return QZ(x)
        if isinstance(x, QElem):
            return self.L(Poly([QZ(c) for c in x.poly.coeffs], QZ))
        return self.L(QZ(x))

    def lift_series(self, s: LaurentSeries) -> LaurentSeries:
        return LaurentSeries(self.L, s.val, [self.lift(c) for c in s.coeffs], s.prec)

    def trace(self, x: Any) -> MRat:
        if self.base is QQ:
            return x
        return self.L.trace(x)

    def base_components(self, c: Any) -> list[Fraction]:
        """Coordinates of a base scalar in the power basis of the number field."""
        if self.base is QQ:
            return [c]
        return [c.poly[i] for i in range(self.degree)]

    def assemble(self, parts: list[Any]) -> Any:
        """Expansion-field element from flint polynomials, one per power-basis coordinate."""
        if self.base is QQ:
            return MRat(parts[0])
        return self.L(Poly([MRat(p) for p in parts], QZ))


def _group(poly, idx: tuple[int, ...]) -> dict[tuple[int, ...], Any]:
    """Split ``poly`` by the exponents of the variables ``idx``."""
    buckets: dict[tuple[int, ...], dict] = {}
    for exps, c in poly.to_dict().items():
        key = tuple(exps[i] for i in idx)
        rest = list(exps)
        for i in idx:
            rest[i] = 0
        buckets.setdefault(key, {})[tuple(rest)] = c
    return {k: CTX.from_dict(v) for k, v in buckets.items()}


class _PowerCache:
    """Truncated powers of a substituted series, refined on demand."""

    def __init__(self, source: "LaurentSeries | Callable[[int], LaurentSeries]"):
        self.source = source if callable(source) else (lambda prec, _s=source: _s)
        self.pows: dict[tuple[int, int], LaurentSeries] = {}

    def get(self, e: int, prec: int) -> LaurentSeries:
        key = (e, prec)
        hit = self.pows.get(key)
        if hit is None:
            base = self.source(prec)
            if base.prec < prec:
                raise ValueError("substituted series is not known to the required order")
            base = base.truncate(prec)
            if e == 0:
                hit = LaurentSeries.constant(base.field, base.field.one, prec)
            else:
                hit = (self.get(e - 1, prec) * base).truncate(prec)
            self.pows[key] = hit
        return hit


def _poly_series(poly, idx, caches, lf: LocalField, prec: int) -> LaurentSeries:
    """Series of a polynomial after substituting the series for the variables ``idx``."""
    groups = _group(poly, idx)
    acc: list[list[Any]] = [[None] * lf.degree for _ in range(prec)]
    for key, coef in groups.items():
        ser = None
        for var_pos, e in enumerate(key):
            pw = caches[var_pos].get(e, prec)
            ser = pw if ser is None else (ser * pw).truncate(prec)
        if ser is None:
            ser = LaurentSeries.constant(lf.base, lf.base.one, prec)
        for k in range(ser.val, min(prec, ser.prec)):
            c = ser[k]
            if c == 0:
                continue
            for j, cj in enumerate(lf.base_components(c)):
                if cj == 0:
                    continue
                term = coef * flint.fmpq(cj.numerator, cj.denominator)
                slot = acc[k]
                slot[j] = term if slot[j] is None else slot[j] + term
    zero = CTX.from_dict({})
    coeffs = [lf.assemble([p if p is not None else zero for p in row]) for row in acc]
    return LaurentSeries(lf.L, 0, coeffs, prec)


def expand(F: MRat, subs: Mapping[int, LaurentSeries], lf: LocalField, rel: int) -> LaurentSeries:
    """Laurent series of ``F`` after ``v -> subs[v](t)`` for each key, to relative precision ``rel``.

    Each ``subs[v]`` is a power series over ``lf.base`` (the full value
    ``c + s(t)``, including the constant term), or a function returning it
    to a requested absolute precision.
    """
    idx = tuple(sorted(subs))
    caches = [_PowerCache(subs[i]) for i in idx]
    num = _valued_series(F.num, idx, caches, lf, rel)
    den = _valued_series(F.den, idx, caches, lf, rel)
    return num * den.inverse()


def _valued_series(poly, idx, caches, lf: LocalField, rel: int) -> LaurentSeries:
    prec = max(rel, 1) + 2
    while True:
        s = _poly_series(poly, idx, caches, lf, prec)
        if not s.is_zero():
            if s.val + rel <= prec:
                return s.truncate(s.val + rel)
            prec = s.val + rel
            continue
        if prec > 4096:
            raise ZeroDivisionError("expression vanishes identically at the expansion point")
        prec *= 2


def point_series(center: Any, field: Any, prec: int) -> LaurentSeries:
    """The series ``center + t``."""
    return LaurentSeries(field, 0, [field(center), field.one] + [field.zero] * max(0, prec - 2), prec)
