"""Multivariate rational functions over Q, backed by FLINT polynomials.

Every quantity with several curve variables (correlators, integrands,
bivariate polynomials) is an :class:`MRat` in one fixed polynomial ring whose
generators are

* ``X``, ``Y``: the coordinates of the plane curve,
* ``r``, ``s``: integration variables,
* ``z0 .. z{MAX_SLOTS-1}``: positional slots for the points a multi-differential
  depends on.

Canonical form: numerator and denominator coprime, denominator with leading
coefficient 1 in the lexicographic order of the ring.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Iterable, Mapping

import flint

from .fields import QQ
from .poly import Poly
from .ratfunc import RationalFunction

MAX_SLOTS = 12
VAR_NAMES: tuple[str, ...] = ("X", "Y", "r", "s") + tuple(f"z{i}" for i in range(MAX_SLOTS))
CTX = flint.fmpq_mpoly_ctx.get(VAR_NAMES, "lex")
GENS = CTX.gens()
NVARS = len(VAR_NAMES)
IX, IY, IR, IS = 0, 1, 2, 3
SLOT0 = 4

_ONE = CTX.from_dict({(0,) * NVARS: 1})
_ZERO = CTX.from_dict({})


def var_index(name: str | int) -> int:
    if isinstance(name, int):
        return name
    return VAR_NAMES.index(name)


def slot(i: int) -> int:
    """Index of positional slot ``z{i}``."""
    if not 0 <= i < MAX_SLOTS:
        raise ValueError(f"slot {i} outside the supported range 0..{MAX_SLOTS - 1}")
    return SLOT0 + i


def gen(name: str | int) -> "MRat":
    return MRat(GENS[var_index(name)], _reduced=True)


def _q(c: Any) -> flint.fmpq:
    if isinstance(c, flint.fmpq):
        return c
    c = QQ(c)
    return flint.fmpq(c.numerator, c.denominator)


def _const(c: Any):
    return _ONE * _q(c)


class _Foreign(Exception):
    pass


def _binop(fn):
    def wrapped(self, other):
        try:
            return fn(self, other)
        except _Foreign:
            return NotImplemented

    wrapped.__name__ = fn.__name__
    wrapped.__doc__ = fn.__doc__
    return wrapped


class MRat:
    """Element of ``Q(X, Y, r, s, z0, ...)`` in canonical form."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, _reduced: bool = False):
        if not isinstance(num, flint.fmpq_mpoly):
            num = _const(num)
        if den is None:
            den = _ONE
            _reduced = True
        elif not isinstance(den, flint.fmpq_mpoly):
            den = _const(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = _ZERO, _ONE
        elif not _reduced:
            if not den.is_constant():
                g = num.gcd(den)
                if not g.is_constant():
                    num = num / g
                    den = den / g
        lc = den.leading_coefficient()
        if lc != 1:
            num = num / lc
            den = den / lc
        self.num = num
        self.den = den
        self._hash = None

    # construction helpers

    @classmethod
    def from_poly(cls, p) -> "MRat":
        return cls(p, None)

    @classmethod
    def from_univariate(cls, f: RationalFunction | Poly, name: str | int) -> "MRat":
        """Embed a univariate rational function over Q in the variable ``name``."""
        v = GENS[var_index(name)]
        if isinstance(f, Poly):
            return cls(_poly_in(f, v))
        return cls(_poly_in(f.num, v), _poly_in(f.den, v), _reduced=True)

    # predicates

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.den.is_one() and self.num.is_one()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant")
        if self.num.is_zero():
            return Fraction(0)
        c = self.num.leading_coefficient() / self.den.leading_coefficient()
        return Fraction(int(c.p), int(c.q))

    def variables(self) -> set[int]:
        used = set()
        for p in (self.num, self.den):
            for i, d in enumerate(p.degrees()):
                if d > 0:
                    used.add(i)
        return used

    def degree_in(self, v: str | int) -> tuple[int, int]:
        i = var_index(v)
        return (max(0, self.num.degrees()[i]) if not self.num.is_zero() else 0, self.den.degrees()[i])

    # arithmetic

    def _c(self, other: Any) -> "MRat":
        if isinstance(other, MRat):
            return other
        if isinstance(other, (int, Fraction, flint.fmpq, flint.fmpz)):
            return MRat(_const(other), None)
        raise _Foreign

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MRat):
            try:
                other = self._c(other)
            except (_Foreign, TypeError, ValueError):
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((str(self.num), str(self.den)))
        return self._hash

    @_binop
    def __add__(self, other: Any) -> "MRat":
        o = self._c(other)
        if self.num.is_zero():
            return o
        if o.num.is_zero():
            return self
        if self.den == o.den:
            if self.den.is_one():
                return MRat(self.num + o.num, None)
            return MRat(self.num + o.num, self.den)
        if self.den.is_one():
            return MRat(self.num * o.den + o.num, o.den, _reduced=True)
        if o.den.is_one():
            return MRat(self.num + o.num * self.den, self.den, _reduced=True)
        g = self.den.gcd(o.den)
        if g.is_constant():
            return MRat(self.num * o.den + o.num * self.den, self.den * o.den, _reduced=True)
        d1 = self.den / g
        d2 = o.den / g
        return MRat(self.num * d2 + o.num * d1, d1 * o.den)

    __radd__ = __add__

    def __neg__(self) -> "MRat":
        return MRat(-self.num, self.den, _reduced=True)

    @_binop
    def __sub__(self, other: Any) -> "MRat":
        return self + (-self._c(other))

    @_binop
    def __rsub__(self, other: Any) -> "MRat":
        return self._c(other) - self

    @_binop
    def __mul__(self, other: Any) -> "MRat":
        o = self._c(other)
        if self.num.is_zero() or o.num.is_zero():
            return MRat(_ZERO)
        if self.den.is_one() and o.den.is_one():
            return MRat(self.num * o.num, None)
        n1, d1, n2, d2 = self.num, self.den, o.num, o.den
        if not d2.is_one():
            g = n1.gcd(d2)
            if not g.is_constant():
                n1, d2 = n1 / g, d2 / g
        if not d1.is_one():
            g = n2.gcd(d1)
            if not g.is_constant():
                n2, d1 = n2 / g, d1 / g
        return MRat(n1 * n2, d1 * d2, _reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "MRat":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return MRat(self.den, self.num, _reduced=True)

    @_binop
    def __truediv__(self, other: Any) -> "MRat":
        return self * self._c(other).inverse()

    @_binop
    def __rtruediv__(self, other: Any) -> "MRat":
        return self._c(other) * self.inverse()

    def __pow__(self, n: int) -> "MRat":
        if n < 0:
            return self.inverse() ** (-n)
        return MRat(self.num**n, self.den**n, _reduced=True)

    # calculus and substitution

    def derivative(self, v: str | int) -> "MRat":
        i = var_index(v)
        n, d = self.num, self.den
        if d.is_constant():
            return MRat(n.derivative(i), d, _reduced=True)
        return MRat(n.derivative(i) * d - n * d.derivative(i), d * d)

    def rename(self, mapping: Mapping[int, int]) -> "MRat":
        """Substitute generators by generators (``mapping`` on variable indices)."""
        if not mapping:
            return self
        args = [GENS[mapping.get(i, i)] for i in range(NVARS)]
        num = self.num.compose(*args, ctx=CTX)
        den = self.den.compose(*args, ctx=CTX)
        if den.is_zero():
            raise ZeroDivisionError("substitution annihilates the denominator")
        return MRat(num, den)

    def substitute(self, mapping: Mapping[int, "MRat | Any"]) -> "MRat":
        """Substitute variables by rational functions or numbers."""
        numeric = {}
        other = {}
        for k, v in mapping.items():
            if isinstance(v, MRat):
                if v.is_constant():
                    numeric[k] = v.constant_value()
                else:
                    other[k] = v
            else:
                numeric[k] = v
        out = self
        if numeric:
            d = {VAR_NAMES[k]: _q(v) for k, v in numeric.items()}
            num = out.num.subs(d)
            den = out.den.subs(d)
            if den.is_zero():
                raise ZeroDivisionError("substitution annihilates the denominator")
            out = MRat(num, den)
        if other:
            out = _compose_rational(out, other)
        return out

    # univariate views

    def as_univariate(self, v: str | int) -> RationalFunction:
        """View as a rational function of ``v`` with coefficients in the field of the other variables."""
        i = var_index(v)
        num = _split(self.num, i)
        den = _split(self.den, i)
        return _raw_rf(num, den)

    @classmethod
    def from_univariate_over_field(cls, f: RationalFunction | Poly, v: str | int) -> "MRat":
        x = GENS[var_index(v)]
        if isinstance(f, Poly):
            return _poly_over_field(f, x)
        return _poly_over_field(f.num, x) / _poly_over_field(f.den, x)

    # output

    def __str__(self) -> str:
        n = _fmt(self.num)
        if self.den.is_one():
            return n
        return f"({n})/({_fmt(self.den)})"

    def __repr__(self) -> str:
        return f"MRat({self})"

    def size(self) -> int:
        return len(self.num) + len(self.den)


class RationalFunctionField:
    """The field of :class:`MRat` elements (coefficients of univariate views)."""

    def __init__(self):
        self.zero = MRat(_ZERO)
        self.one = MRat(_ONE)

    def __call__(self, value: Any) -> MRat:
        if isinstance(value, MRat):
            return value
        if isinstance(value, flint.fmpq_mpoly):
            return MRat(value)
        return MRat(_const(value))

    def is_zero(self, value: MRat) -> bool:
        return value.num.is_zero()

    def dot(self, xs: Iterable[MRat], ys: Iterable[MRat]) -> MRat:
        """``sum x_i y_i`` with one reduction per distinct denominator."""
        groups: list[list] = []  # [denominator, numerator sum]
        for a, b in zip(xs, ys):
            if a.num.is_zero() or b.num.is_zero():
                continue
            d = a.den * b.den
            n = a.num * b.num
            for grp in groups:
                if grp[0] == d:
                    grp[1] = grp[1] + n
                    break
            else:
                groups.append([d, n])
        total = self.zero
        for d, n in groups:
            total = total + MRat(n, d)
        return total

    def __repr__(self) -> str:
        return "QQ(X,Y,r,s,z...)"


QZ = RationalFunctionField()


def _poly_in(p: Poly, v) -> Any:
    acc = _ZERO
    for c in reversed(p.coeffs):
        acc = acc * v + _q(c)
    return acc


def _poly_over_field(p: Poly, v) -> MRat:
    acc = QZ.zero
    x = MRat(v)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def _split(p, i: int) -> Poly:
    """Coefficients of ``p`` with respect to generator ``i``, as a Poly over QZ."""
    buckets: dict[int, dict] = {}
    for exps, c in p.to_dict().items():
        e = exps[i]
        key = exps[:i] + (0,) + exps[i + 1 :]
        buckets.setdefault(e, {})[key] = c
    if not buckets:
        return Poly((), QZ)
    n = max(buckets)
    coeffs = [MRat(CTX.from_dict(buckets[e]), None) if e in buckets else QZ.zero for e in range(n + 1)]
    return Poly._raw(coeffs, QZ)


def _raw_rf(num: Poly, den: Poly) -> RationalFunction:
    """Build a univariate view without a gcd pass (inputs are already coprime)."""
    rf = object.__new__(RationalFunction)
    inv = QZ.one / den.lc
    rf.num = num * inv
    rf.den = den * inv
    return rf


def _compose_rational(f: MRat, mapping: Mapping[int, MRat]) -> MRat:
    """Substitute variables by rational functions (homogenized per variable)."""
    out = f
    for k, v in mapping.items():
        uni = out.as_univariate(k)
        out = _eval_univariate_at(uni, v)
    return out


def _eval_univariate_at(f: RationalFunction, val: MRat) -> MRat:
    def ev(p: Poly) -> MRat:
        acc = QZ.zero
        for c in reversed(p.coeffs):
            acc = acc * val + c
        return acc

    d = ev(f.den)
    if d.is_zero():
        raise ZeroDivisionError("substitution annihilates the denominator")
    return ev(f.num) / d



def _fmt(p) -> str:
    s = str(p)
    return s if s else "0"


def mrat(value: Any) -> MRat:
    return QZ(value)


def poly_from_terms(terms: Iterable[tuple[tuple[int, ...], Any]]):
    return CTX.from_dict({e: _q(c) for e, c in terms})
