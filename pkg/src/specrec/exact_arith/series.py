"""Truncated Laurent series over an arbitrary field."""

from __future__ import annotations

from typing import Any, Sequence

from .fields import Field
from .poly import Poly


class LogarithmicObstruction(ArithmeticError):
    """Term-wise integration met a nonzero ``t^-1`` coefficient."""


class _Infinity:
    """The point at infinity of the z-sphere."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "infinity"

    __str__ = __repr__

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()


class LaurentSeries:
    """``sum_{i} coeffs[i] t^(val+i) + O(t^prec)``.

    ``prec`` is absolute: every coefficient with exponent below ``prec`` is
    known.  ``val`` is the exponent of the first stored coefficient, which is
    nonzero unless the series is an exact zero up to ``prec``.
    """

    __slots__ = ("field", "val", "coeffs", "prec", "center")

    def __init__(self, field: Field, val: int, coeffs: Sequence[Any], prec: int, center: Any = None):
        cs = list(coeffs[: max(0, prec - val)])
        k = 0
        while k < len(cs) and field.is_zero(cs[k]):
            k += 1
        cs = cs[k:]
        val += k
        if not cs:
            val = prec
        self.field = field
        self.val = val
        self.coeffs = cs
        self.prec = prec
        self.center = center

    @classmethod
    def from_poly(cls, p: Poly, prec: int, center: Any = None) -> "LaurentSeries":
        return cls(p.field, 0, list(p.coeffs) + [p.field.zero] * max(0, prec - len(p.coeffs)), prec, center)

    @classmethod
    def constant(cls, field: Field, c: Any, prec: int) -> "LaurentSeries":
        return cls(field, 0, [field(c)] + [field.zero] * max(0, prec - 1), prec)

    @classmethod
    def monomial(cls, field: Field, e: int, prec: int, c: Any = None) -> "LaurentSeries":
        c = field.one if c is None else field(c)
        return cls(field, e, [c] + [field.zero] * max(0, prec - e - 1), prec)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, e: int) -> Any:
        if e >= self.prec:
            raise IndexError(f"coefficient t^{e} beyond truncation order {self.prec}")
        i = e - self.val
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero

    coefficient = __getitem__

    def residue(self) -> Any:
        return self[-1]

    def items(self):
        for i, c in enumerate(self.coeffs):
            if not self.field.is_zero(c):
                yield self.val + i, c

    def _coerce(self, other: Any) -> "LaurentSeries":
        if isinstance(other, LaurentSeries):
            return other
        return LaurentSeries.constant(self.field, other, self.prec)

    def __add__(self, other: Any) -> "LaurentSeries":
        o = self._coerce(other)
        prec = min(self.prec, o.prec)
        lo = min(self.val, o.val)
        out = [self.field.zero] * max(0, prec - lo)
        for e, c in zip(range(self.val, prec), self.coeffs):
            out[e - lo] = c
        for e, c in zip(range(o.val, prec), o.coeffs):
            out[e - lo] = out[e - lo] + c
        return LaurentSeries(self.field, lo, out, prec, self.center)

    __radd__ = __add__

    def __neg__(self) -> "LaurentSeries":
        return LaurentSeries(self.field, self.val, [-c for c in self.coeffs], self.prec, self.center)

    def __sub__(self, other: Any) -> "LaurentSeries":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Any) -> "LaurentSeries":
        return self._coerce(other) - self

    def __mul__(self, other: Any) -> "LaurentSeries":
        if not isinstance(other, LaurentSeries):
            c = self.field(other)
            return LaurentSeries(self.field, self.val, [a * c for a in self.coeffs], self.prec, self.center)
        o = other
        val = self.val + o.val
        prec = min(self.val + o.prec, o.val + self.prec)
        n = max(0, prec - val)
        dot = getattr(self.field, "dot", None)
        if dot is not None:
            A, B = self.coeffs[:n], o.coeffs[:n]
            out = []
            for k in range(n):
                lo, hi = max(0, k - len(B) + 1), min(k, len(A) - 1)
                out.append(dot(A[lo : hi + 1], [B[k - i] for i in range(lo, hi + 1)]))
            return LaurentSeries(self.field, val, out, prec, self.center)
        out = [self.field.zero] * n
        for i, a in enumerate(self.coeffs[:n]):
            if self.field.is_zero(a):
                continue
            for j, b in enumerate(o.coeffs[: n - i]):
                out[i + j] = out[i + j] + a * b
        return LaurentSeries(self.field, val, out, prec, self.center)

    __rmul__ = __mul__

    def inverse(self) -> "LaurentSeries":
        if not self.coeffs:
            raise ZeroDivisionError("inverse of a series that vanishes to its truncation order")
        n = self.prec - self.val  # relative precision
        a = self.coeffs
        inv0 = self.field.one / a[0]
        b = [inv0]
        for m in range(1, n):
            acc = self.field.zero
            for k in range(1, min(m, len(a) - 1) + 1):
                acc = acc + a[k] * b[m - k]
            b.append(-acc * inv0)
        return LaurentSeries(self.field, -self.val, b, -self.val + n, self.center)

    def __truediv__(self, other: Any) -> "LaurentSeries":
        if isinstance(other, LaurentSeries):
            return self * other.inverse()
        return self * (self.field.one / self.field(other))

    def __rtruediv__(self, other: Any) -> "LaurentSeries":
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "LaurentSeries":
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return LaurentSeries.constant(self.field, self.field.one, max(self.prec - self.val, 1))
        out, base = None, self
        while n:
            if n & 1:
                out = base if out is None else out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by ``t^k``."""
        return LaurentSeries(self.field, self.val + k, self.coeffs, self.prec + k, self.center)

    def truncate(self, prec: int) -> "LaurentSeries":
        return LaurentSeries(self.field, self.val, self.coeffs, min(prec, self.prec), self.center)

    def derivative(self) -> "LaurentSeries":
        out = [c * (self.val + i) for i, c in enumerate(self.coeffs)]
        return LaurentSeries(self.field, self.val - 1, out, self.prec - 1, self.center)

    def antiderivative(self) -> "LaurentSeries":
        """Term-wise integral with zero constant of integration."""
        F = self.field
        out = []
        for i, c in enumerate(self.coeffs):
            e = self.val + i
            if e == -1:
                if not F.is_zero(c):
                    raise LogarithmicObstruction("series has a nonzero residue term")
                out.append(F.zero)
                continue
            out.append(c / F(e + 1))
        return LaurentSeries(F, self.val + 1, out, self.prec + 1, self.center)

    def compose(self, s: "LaurentSeries") -> "LaurentSeries":
        """``self(s(t))`` for a power series ``s`` with ``s(0) = 0`` and ``s'(0) != 0``."""
        if s.val != 1:
            raise ValueError("inner series must have valuation exactly 1")
        # relative precision of the result equals the relative precision of self
        rel = self.prec - self.val
        si = s.truncate(1 + rel)
        out = None
        pw = si ** self.val if self.val >= 0 else si.inverse() ** (-self.val)
        for i, c in enumerate(self.coeffs):
            term = pw * c
            out = term if out is None else out + term
            pw = pw * si
        if out is None:
            return LaurentSeries(self.field, self.prec, [], self.prec, self.center)
        return out.truncate(self.prec)

    def revert(self) -> "LaurentSeries":
        """The compositional inverse ``r`` with ``self(r(u)) = u``, to the same precision."""
        if self.val != 1:
            raise ValueError("only series of valuation exactly 1 can be reverted")
        F = self.field
        a1 = self.coeffs[0]
        u = LaurentSeries.monomial(F, 1, self.prec)
        r = u / a1
        for _ in range(self.prec):
            err = self.compose(r) - u
            if err.is_zero():
                break
            r = r - err / a1
        return r

    def to_poly_part(self) -> dict[int, Any]:
        return dict(self.items())

    def __repr__(self) -> str:
        terms = [f"({c})*t^{e}" for e, c in self.items()]
        return " + ".join(terms + [f"O(t^{self.prec})"])


def taylor_shift(p: Poly, c: Any, field: Field) -> list[Any]:
    """Coefficients of ``p(c + t)`` in ``t`` over ``field`` (``c`` an element of ``field``)."""
    out: list[Any] = []
    for a in reversed(p.coeffs):
        # out <- out*(c + t) + a
        new = [field.zero] * (len(out) + 1)
        for i, b in enumerate(out):
            new[i] = new[i] + b * c
            new[i + 1] = new[i + 1] + b
        new[0] = new[0] + field(a)
        out = new
    while out and field.is_zero(out[-1]):
        out.pop()
    return out
