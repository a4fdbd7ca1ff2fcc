"""Coefficient fields.

A field object knows its zero and one, coerces foreign values into itself and
tests for zero.  Elements are plain Python objects supporting ``+ - * /`` and
``==``; the generic polynomial, series and quotient-field code only relies on
that protocol.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Protocol


class Field(Protocol):
    zero: Any
    one: Any

    def __call__(self, value: Any) -> Any: ...

    def is_zero(self, value: Any) -> bool: ...


class RationalField:
    """The rationals, with :class:`fractions.Fraction` elements."""

    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, value: Any) -> Fraction:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, (int, str)):
            return Fraction(value)
        if hasattr(value, "p") and hasattr(value, "q"):  # flint.fmpq, fmpz-like
            return Fraction(int(value.p), int(value.q))
        if hasattr(value, "numerator") and hasattr(value, "denominator"):
            return Fraction(value.numerator, value.denominator)
        raise TypeError(f"cannot coerce {value!r} into QQ")

    def is_zero(self, value: Any) -> bool:
        return value == 0

    def __repr__(self) -> str:
        return "QQ"


QQ = RationalField()


def as_fraction(value: Any) -> Fraction:
    return QQ(value)
