"""Univariate rational functions in canonical form."""

from __future__ import annotations

from typing import Any

from .fields import QQ, Field
from .poly import Poly


class RationalFunction:
    """``num/den`` with ``gcd(num, den) = 1`` and ``den`` monic."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly | Any, den: Poly | Any = None, field: Field | None = None):
        if not isinstance(num, Poly):
            field = field or QQ
            num = Poly((num,), field)
        field = num.field
        if den is None:
            den = Poly.constant(field.one, field)
        elif not isinstance(den, Poly):
            den = Poly((den,), field)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            self.num, self.den = num, Poly.constant(field.one, field)
            return
        g = num.gcd(den)
        if g.degree > 0:
            num, den = num.exact_div(g), den.exact_div(g)
        inv = field.one / den.lc
        self.num, self.den = num * inv, den * inv

    @classmethod
    def gen(cls, field: Field = QQ) -> "RationalFunction":
        return cls(Poly.gen(field))

    @property
    def field(self) -> Field:
        return self.num.field

    def _coerce(self, other: Any) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Poly):
            return RationalFunction(other)
        return RationalFunction(Poly((self.field(other),), self.field))

    def __eq__(self, other: object) -> bool:
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def is_zero(self) -> bool:
        return not self.num

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def __add__(self, other: Any) -> "RationalFunction":
        o = self._coerce(other)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other: Any) -> "RationalFunction":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Any) -> "RationalFunction":
        return self._coerce(other) - self

    def __mul__(self, other: Any) -> "RationalFunction":
        o = self._coerce(other)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "RationalFunction":
        o = self._coerce(other)
        if not o.num:
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other: Any) -> "RationalFunction":
        return self._coerce(other) / self

    def __pow__(self, n: int) -> "RationalFunction":
        if n >= 0:
            return RationalFunction(self.num**n, self.den**n)
        return RationalFunction(self.den ** (-n), self.num ** (-n))

    def derivative(self) -> "RationalFunction":
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(), self.den * self.den
        )

    def __call__(self, x: Any) -> Any:
        d = self.den(x)
        return self.num(x) / d

    def compose(self, other: "RationalFunction") -> "RationalFunction":
        """``self(other(w))`` as a rational function of ``w``."""
        o = self._coerce(other)
        n = max(self.num.degree, self.den.degree)
        # homogenize: p(a/b) * b^n
        def hom(p: Poly) -> Poly:
            acc = Poly((), self.field)
            for i, c in enumerate(p.coeffs):
                acc = acc + (o.num**i) * (o.den ** (n - i)) * c
            return acc

        return RationalFunction(hom(self.num), hom(self.den))

    def degree(self) -> int:
        """Degree as a map of the sphere: ``max(deg num, deg den)``."""
        return max(self.num.degree, self.den.degree)

    def pole_order_at_infinity(self) -> int:
        return self.num.degree - self.den.degree

    def to_str(self, var: str = "z") -> str:
        n = self.num.to_str(var)
        if self.den.degree == 0:
            return n
        return f"({n})/({self.den.to_str(var)})"

    __str__ = to_str

    def __repr__(self) -> str:
        return f"RationalFunction({self.to_str()})"
