"""Multi-differentials ``f(z_0, ..., z_{n-1}) dz_0 ... dz_{n-1}`` on the z-sphere."""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from typing import Any, Sequence

from ..exact_arith import (
    INFINITY,
    QZ,
    LaurentSeries,
    MRat,
    Poly,
    residue_at_point,
    residue_sum_over_roots,
    series_expand,
    slot,
)


class Differential:
    """An n-variable differential; the coefficient lives in slots ``z0..z{n-1}``.

    Equality is equality of the canonical (reduced) coefficient.
    """

    __slots__ = ("arity", "expr")

    def __init__(self, arity: int, expr: Any):
        if arity < 0:
            raise ValueError("arity must be nonnegative")
        self.arity = arity
        self.expr = expr if isinstance(expr, MRat) else MRat(expr)
        stray = {v for v in self.expr.variables() if not slot(0) <= v < slot(0) + arity}
        if stray:
            raise ValueError("coefficient depends on variables outside its slots")

    @classmethod
    def zero(cls, arity: int) -> "Differential":
        return cls(arity, MRat(0))

    def is_zero(self) -> bool:
        return self.expr.is_zero()

    # arithmetic (same arity, or scaling by functions of the slots)

    def _other(self, other: Any) -> MRat:
        if isinstance(other, Differential):
            if other.arity != self.arity:
                raise ValueError("arity mismatch")
            return other.expr
        return MRat(other) if not isinstance(other, MRat) else other

    def __add__(self, other: Any) -> "Differential":
        return Differential(self.arity, self.expr + self._other(other))

    def __sub__(self, other: Any) -> "Differential":
        return Differential(self.arity, self.expr - self._other(other))

    def __neg__(self) -> "Differential":
        return Differential(self.arity, -self.expr)

    def __mul__(self, f: Any) -> "Differential":
        if isinstance(f, Differential):
            raise TypeError("product of differentials changes the tensor type; multiply the coefficients")
        return Differential(self.arity, self.expr * f)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Differential):
            return NotImplemented
        return self.arity == other.arity and self.expr == other.expr

    def __hash__(self) -> int:
        return hash((self.arity, self.expr))

    # variable bookkeeping

    def placed(self, targets: Sequence[int]) -> MRat:
        """The coefficient with slot ``i`` moved to ring variable ``targets[i]``."""
        if len(targets) != self.arity:
            raise ValueError("one target per slot is required")
        mapping = {slot(i): t for i, t in enumerate(targets) if slot(i) != t}
        return self.expr.rename(mapping)  # simultaneous substitution

    def permuted(self, perm: Sequence[int]) -> "Differential":
        """``(sigma . w)(z_0..) = w(z_perm[0], ...)``."""
        return Differential(self.arity, self.placed([slot(p) for p in perm]))

    def is_symmetric(self) -> bool:
        base = self.expr
        for perm in permutations(range(self.arity)):
            if self.placed([slot(p) for p in perm]) != base:
                return False
        return True

    # evaluation, residues and series

    def evaluate(self, *points: Any) -> Any:
        if len(points) != self.arity:
            raise ValueError("one point per slot is required")
        return self.expr.substitute({slot(i): p for i, p in enumerate(points)}).constant_value()

    def specialize(self, values: dict[int, Any]) -> "Differential":
        """Fix some slots to numbers and renumber the remaining ones in order."""
        e = self.expr.substitute({slot(i): v for i, v in values.items()})
        rest = [i for i in range(self.arity) if i not in values]
        return Differential(len(rest), _compress(e, rest))

    def slice(self, i: int):
        """Coefficient as a rational function of slot ``i`` over the field of the others."""
        return self.expr.as_univariate(slot(i))

    def residue(self, i: int, point: Any) -> "Differential":
        """Residue in slot ``i`` at a rational point or ``INFINITY``."""
        f = self.slice(i)
        c = point if point is INFINITY else QZ(point)
        r = residue_at_point(f, c)
        rest = [j for j in range(self.arity) if j != i]
        return Differential(self.arity - 1, _compress(r, rest))

    def residue_over_roots(self, i: int, D: Poly, method: str = "auto") -> "Differential":
        """Sum of the slot-``i`` residues over the roots of ``D`` (a polynomial over Q)."""
        f = self.slice(i)
        DQ = Poly([QZ(c) for c in D.coeffs], QZ)
        r = residue_sum_over_roots(f, DQ, method)
        rest = [j for j in range(self.arity) if j != i]
        return Differential(self.arity - 1, _compress(r, rest))

    def series(self, i: int, center: Any, order: int) -> LaurentSeries:
        """Laurent series in slot ``i`` (coordinate ``1/z`` at infinity, without the Jacobian)."""
        c = center if center is INFINITY else QZ(center)
        return series_expand(self.slice(i), c, order)

    def __str__(self) -> str:
        return str(self.expr)

    def __repr__(self) -> str:
        return f"Differential({self.arity}, {self.expr})"


def _compress(e: MRat, kept: list[int]) -> MRat:
    """Move slots ``kept[j]`` to slot ``j``."""
    mapping = {slot(k): slot(j) for j, k in enumerate(kept) if k != j}
    return e.rename(mapping)


def as_rational(x: Any) -> Fraction:
    """Exact rational value of a constant coefficient."""
    if isinstance(x, MRat):
        return x.constant_value()
    return Fraction(x)
