"""Dense univariate polynomials over an arbitrary field."""

from __future__ import annotations

from typing import Any, Iterable, Sequence

from .fields import QQ, Field


class Poly:
    """Polynomial ``c[0] + c[1] w + ... + c[n] w^n`` over ``field``.

    Coefficients are stored as a tuple with a nonzero last entry; the zero
    polynomial has no coefficients.
    """

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs: Iterable[Any] = (), field: Field = QQ):
        cs = [field(c) for c in coeffs]
        while cs and field.is_zero(cs[-1]):
            cs.pop()
        self.coeffs = tuple(cs)
        self.field = field

    @classmethod
    def _raw(cls, coeffs: Sequence[Any], field: Field) -> "Poly":
        p = object.__new__(cls)
        cs = list(coeffs)
        while cs and field.is_zero(cs[-1]):
            cs.pop()
        p.coeffs = tuple(cs)
        p.field = field
        return p

    @classmethod
    def constant(cls, c: Any, field: Field = QQ) -> "Poly":
        return cls((c,), field)

    @classmethod
    def gen(cls, field: Field = QQ) -> "Poly":
        return cls((field.zero, field.one), field)

    @classmethod
    def from_roots(cls, roots: Iterable[Any], field: Field = QQ) -> "Poly":
        p = cls.constant(field.one, field)
        for a in roots:
            p = p * cls((-field(a), field.one), field)
        return p

    # basic accessors

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Any:
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def __getitem__(self, i: int) -> Any:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def _coerce(self, other: Any) -> "Poly":
        if isinstance(other, Poly):
            if other.field is self.field:
                return other
            return Poly(other.coeffs, self.field)
        return Poly._raw((self.field(other),), self.field)

    def __eq__(self, other: object) -> bool:
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self.coeffs == o.coeffs

    # ring operations

    def __add__(self, other: Any) -> "Poly":
        o = self._coerce(other)
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly._raw(out, self.field)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw([-c for c in self.coeffs], self.field)

    def __sub__(self, other: Any) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Any) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other: Any) -> "Poly":
        if not isinstance(other, Poly):
            c = self.field(other)
            if self.field.is_zero(c):
                return Poly._raw((), self.field)
            return Poly._raw([a * c for a in self.coeffs], self.field)
        o = self._coerce(other)
        if not self.coeffs or not o.coeffs:
            return Poly._raw((), self.field)
        out = [self.field.zero] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if self.field.is_zero(a):
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly._raw(out, self.field)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Poly.constant(self.field.one, self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c: Any) -> "Poly":
        return self * c

    def __divmod__(self, other: Any) -> tuple["Poly", "Poly"]:
        o = self._coerce(other)
        if not o.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(o.coeffs)
        if dq < 0:
            return Poly._raw((), self.field), self
        inv_lc = self.field.one / o.lc
        quo = [self.field.zero] * (dq + 1)
        do = len(o.coeffs) - 1
        for i in range(dq, -1, -1):
            c = rem[i + do]
            if self.field.is_zero(c):
                continue
            c = c * inv_lc
            quo[i] = c
            for j, b in enumerate(o.coeffs):
                rem[i + j] = rem[i + j] - c * b
        return Poly._raw(quo, self.field), Poly._raw(rem[:do], self.field)

    def __floordiv__(self, other: Any) -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: Any) -> "Poly":
        return divmod(self, other)[1]

    def exact_div(self, other: Any) -> "Poly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        return self * (self.field.one / self.lc)

    # calculus and evaluation

    def derivative(self) -> "Poly":
        return Poly._raw([c * i for i, c in enumerate(self.coeffs)][1:], self.field)

    def __call__(self, x: Any) -> Any:
        """Horner evaluation; ``x`` may be any ring element compatible with the coefficients."""
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        if acc is None:
            return self.field.zero
        return acc

    def compose(self, other: "Poly") -> "Poly":
        o = self._coerce(other)
        acc = Poly._raw((), self.field)
        for c in reversed(self.coeffs):
            acc = acc * o + c
        return acc

    def shift(self, c: Any) -> "Poly":
        """The polynomial ``p(w + c)``."""
        return self.compose(Poly._raw((self.field(c), self.field.one), self.field))

    def reverse(self, n: int | None = None) -> "Poly":
        """``w^n p(1/w)`` with ``n`` defaulting to the degree."""
        n = self.degree if n is None else n
        cs = list(self.coeffs) + [self.field.zero] * (n + 1 - len(self.coeffs))
        return Poly._raw(cs[: n + 1][::-1], self.field)

    def map(self, fn, field: Field) -> "Poly":
        return Poly([fn(c) for c in self.coeffs], field)

    # gcd machinery

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, self._coerce(other)
        while b:
            a, b = b, a % b
        return a.monic()

    def gcdex(self, other: "Poly") -> tuple["Poly", "Poly", "Poly"]:
        """Return ``(s, t, g)`` with ``s*self + t*other = g`` and ``g`` monic."""
        F = self.field
        r0, r1 = self, self._coerce(other)
        s0, s1 = Poly.constant(F.one, F), Poly._raw((), F)
        t0, t1 = Poly._raw((), F), Poly.constant(F.one, F)
        while r1:
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if not r0:
            return s0, t0, r0
        inv = F.one / r0.lc
        return s0 * inv, t0 * inv, r0 * inv

    def invmod(self, modulus: "Poly") -> "Poly":
        s, _, g = self.gcdex(modulus)
        if g.degree != 0:
            raise ZeroDivisionError("element is not invertible modulo the given polynomial")
        return s % modulus

    def is_squarefree(self) -> bool:
        if self.degree <= 0:
            return True
        return self.gcd(self.derivative()).degree == 0

    def squarefree_part(self) -> "Poly":
        if self.degree <= 0:
            return self
        return self.exact_div(self.gcd(self.derivative())).monic()

    def multiplicity(self, factor: "Poly") -> tuple[int, "Poly"]:
        """Largest ``m`` with ``factor^m | self``, together with the cofactor."""
        m, rest = 0, self
        while True:
            q, r = divmod(rest, factor)
            if r:
                return m, rest
            m, rest = m + 1, q

    def resultant(self, other: "Poly") -> Any:
        """Resultant with the convention ``res(a, b) = lc(a)^deg(b) prod_{a(t)=0} b(t)``."""
        F = self.field
        a, b = self, self._coerce(other)
        if not a or not b:
            raise ValueError("resultant of a zero polynomial")
        acc = F.one
        while True:
            m, n = a.degree, b.degree
            if n == 0:
                return acc * _pow(b.lc, m, F)
            r = a % b
            if not r:
                return F.zero
            if (m * n) % 2:
                acc = -acc
            acc = acc * _pow(b.lc, m - r.degree, F)
            a, b = b, r

    def discriminant(self) -> Any:
        n = self.degree
        d = self.derivative()
        res = self.resultant(d)
        sign = -1 if (n * (n - 1) // 2) % 2 else 1
        return res * sign / self.lc

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)!r})"

    def to_str(self, var: str = "z") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if self.field.is_zero(c):
                continue
            cs = str(c)
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if not mono:
                parts.append(f"({cs})" if _needs_parens(cs) else cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"({cs})*{mono}" if _needs_parens(cs) else f"{cs}*{mono}")
        out = " + ".join(parts)
        return out.replace("+ -", "- ")

    __str__ = to_str


def _needs_parens(s: str) -> bool:
    body = s[1:] if s.startswith("-") else s
    return any(ch in body for ch in "+-*") or ("/" in body and not body.replace("/", "").isdigit())


def _pow(c: Any, n: int, F: Field) -> Any:
    out = F.one
    for _ in range(n):
        out = out * c
    return out
