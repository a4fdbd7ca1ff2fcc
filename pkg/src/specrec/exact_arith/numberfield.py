"""Simple algebraic extensions ``K[w]/(m)`` of a base field.

The same class serves two purposes: number fields ``Q(a)`` housing branch
points, and the fiber rings ``K[r]/(f)`` over a field of rational functions
used to sum residues over the roots of ``f`` without naming them.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Any

from .fields import QQ, Field
from .poly import Poly


class DegenerateConfiguration(ValueError):
    """Raised when a root set is not squarefree or an expansion point collides."""


class QuotientField:
    """``K[w]/(m)`` with ``m`` squarefree; a field when ``m`` is irreducible."""

    def __init__(self, modulus: Poly, check: bool = True):
        if modulus.degree < 1:
            raise ValueError("modulus must have positive degree")
        if check and not modulus.is_squarefree():
            raise DegenerateConfiguration("modulus is not squarefree")
        self.modulus = modulus.monic()
        self.base: Field = modulus.field
        self.degree = self.modulus.degree
        self.zero = QElem(Poly((), self.base), self)
        self.one = QElem(Poly.constant(self.base.one, self.base), self)

    @cached_property
    def gen(self) -> "QElem":
        return self(Poly.gen(self.base))

    def __call__(self, value: Any) -> "QElem":
        if isinstance(value, QElem):
            if value.parent is self:
                return value
            raise TypeError("element of a different quotient field")
        if isinstance(value, Poly):
            return QElem(value % self.modulus, self)
        return QElem(Poly((self.base(value),), self.base), self)

    def is_zero(self, value: "QElem") -> bool:
        return not value.poly

    @cached_property
    def _power_traces(self) -> list[Any]:
        """``Tr(w^i)`` for ``0 <= i < 2*deg`` via Newton's identities."""
        F, m, d = self.base, self.modulus, self.degree
        c = [m[i] for i in range(d + 1)]
        p: list[Any] = [F(d)]
        for k in range(1, 2 * d):
            acc = F.zero
            for j in range(1, min(k, d) + 1):
                if j < k:
                    acc = acc + c[d - j] * p[k - j]
                else:
                    acc = acc + c[d - j] * F(k)
            p.append(-acc)
        return p

    def trace(self, x: "QElem") -> Any:
        x = self(x)
        tr = self._power_traces
        acc = self.base.zero
        for i, c in enumerate(x.poly.coeffs):
            acc = acc + c * tr[i]
        return acc

    def norm(self, x: "QElem") -> Any:
        x = self(x)
        if not x.poly:
            return self.base.zero
        return self.modulus.resultant(x.poly)

    def __repr__(self) -> str:
        return f"QuotientField({self.modulus!r})"


class QElem:
    """Residue class of a polynomial modulo the parent's modulus."""

    __slots__ = ("poly", "parent")

    def __init__(self, poly: Poly, parent: QuotientField):
        self.poly = poly
        self.parent = parent

    def _c(self, other: Any) -> "QElem":
        return self.parent(other)

    def __add__(self, other: Any) -> "QElem":
        return QElem(self.poly + self._c(other).poly, self.parent)

    __radd__ = __add__

    def __neg__(self) -> "QElem":
        return QElem(-self.poly, self.parent)

    def __sub__(self, other: Any) -> "QElem":
        return QElem(self.poly - self._c(other).poly, self.parent)

    def __rsub__(self, other: Any) -> "QElem":
        return self._c(other) - self

    def __mul__(self, other: Any) -> "QElem":
        if isinstance(other, QElem):
            return QElem((self.poly * other.poly) % self.parent.modulus, self.parent)
        return QElem(self.poly * self.parent.base(other), self.parent)

    __rmul__ = __mul__

    def inverse(self) -> "QElem":
        if not self.poly:
            raise ZeroDivisionError("inverse of zero in a quotient field")
        return QElem(self.poly.invmod(self.parent.modulus), self.parent)

    def __truediv__(self, other: Any) -> "QElem":
        if isinstance(other, QElem):
            return self * other.inverse()
        return QElem(self.poly * (self.parent.base.one / self.parent.base(other)), self.parent)

    def __rtruediv__(self, other: Any) -> "QElem":
        return self._c(other) * self.inverse()

    def __pow__(self, n: int) -> "QElem":
        if n < 0:
            return self.inverse() ** (-n)
        out, base = self.parent.one, self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __eq__(self, other: object) -> bool:
        try:
            o = self._c(other)
        except TypeError:
            return NotImplemented
        return self.poly == o.poly

    def __hash__(self) -> int:
        return hash(self.poly)

    def trace(self) -> Any:
        return self.parent.trace(self)

    def norm(self) -> Any:
        return self.parent.norm(self)

    def is_rational(self) -> bool:
        return self.poly.degree <= 0

    def __repr__(self) -> str:
        return f"[{self.poly.to_str('a')} mod {self.parent.modulus.to_str('a')}]"


@dataclass(frozen=True)
class AlgebraicNumber:
    """A root of a squarefree polynomial over Q, kept symbolically.

    ``value`` is the element of ``Q[a]/(minimal_polynomial)`` that the number
    equals (the generator for a branch-point package); ``root_index`` picks an
    embedding among the numerically sorted complex roots when one is needed.
    """

    minimal_polynomial: Poly
    root_index: int | None = None

    @cached_property
    def field(self) -> QuotientField:
        return QuotientField(self.minimal_polynomial)

    @property
    def value(self) -> QElem:
        return self.field.gen

    @property
    def degree(self) -> int:
        return self.minimal_polynomial.degree

    def is_rational(self) -> bool:
        return self.minimal_polynomial.degree == 1

    def rational_value(self):
        if not self.is_rational():
            raise ValueError("not a rational number")
        m = self.minimal_polynomial.monic()
        return -m[0]

    def numeric_roots(self, prec: int = 53) -> list:
        return numeric_roots(self.minimal_polynomial, prec)

    def numeric(self, prec: int = 53):
        roots = self.numeric_roots(prec)
        return roots[self.root_index or 0]

    def __str__(self) -> str:
        if self.is_rational():
            return str(self.rational_value())
        return f"RootOf({self.minimal_polynomial.to_str('a')})"


def numeric_roots(p: Poly, prec: int = 53) -> list:
    """Complex roots of a rational polynomial at ``prec`` bits, in a canonical order."""
    import mpmath

    with mpmath.workprec(prec + 32):
        coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(p.coeffs)]
        if p.degree == 1:
            roots = [-coeffs[1] / coeffs[0]]
        else:
            roots = mpmath.polyroots(coeffs, maxsteps=200, extraprec=prec + 64)
        roots = [mpmath.mpc(r) for r in roots]
    return sorted(roots, key=lambda r: (float(r.real), float(r.imag)))


def qq_field_of(p: Poly) -> QuotientField:
    if p.field is not QQ:
        raise TypeError("expected a polynomial over QQ")
    return QuotientField(p)
