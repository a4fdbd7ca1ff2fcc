"""Rational-expression grammar shared by curve files and emitted payloads.

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" INT | "^" "(" INT ")")?
    atom   := INT | NAME | "(" expr ")"

``^`` binds tighter than unary minus, so ``-z^2`` is ``-(z^2)``.  Exponents
are nonnegative integer literals.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Any, Callable, Mapping

from ..exact_arith import QQ, MRat, RationalFunction, VAR_NAMES, gen


class ParseError(ValueError):
    """Syntax or semantic error at a position of the input."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.reason = message


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


@dataclass
class _Tok:
    kind: str  # "int", "name", "op", "end"
    text: str
    pos: int


def _tokenize(text: str, line: int = 1, col0: int = 0) -> list[_Tok]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        if m.group(1) is not None:
            out.append(_Tok("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            out.append(_Tok("name", m.group(2), m.start(2)))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", line, col0 + m.start(3) + 1)
            out.append(_Tok("op", ch, m.start(3)))
        pos = m.end()
    out.append(_Tok("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, symbols: Mapping[str, Any], const: Callable[[int], Any], line: int, col0: int):
        self.toks = _tokenize(text, line, col0)
        self.i = 0
        self.symbols = symbols
        self.const = const
        self.line = line
        self.col0 = col0

    def err(self, msg: str, tok: _Tok | None = None) -> ParseError:
        tok = tok or self.toks[self.i]
        return ParseError(msg, self.line, self.col0 + tok.pos + 1)

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def accept(self, op: str) -> bool:
        t = self.peek()
        if t.kind == "op" and t.text == op:
            self.i += 1
            return True
        return False

    def parse(self):
        if self.peek().kind == "end":
            raise self.err("empty expression")
        v = self.expr()
        if self.peek().kind != "end":
            raise self.err(f"unexpected {self.peek().text!r}")
        return v

    def expr(self):
        v = self.term()
        while True:
            if self.accept("+"):
                v = v + self.term()
            elif self.accept("-"):
                v = v - self.term()
            else:
                return v

    def term(self):
        v = self.unary()
        while True:
            if self.accept("*"):
                v = v * self.unary()
            elif self.accept("/"):
                tok = self.peek()
                d = self.unary()
                try:
                    v = v / d
                except ZeroDivisionError:
                    raise self.err("division by zero", tok) from None
            else:
                return v

    def unary(self):
        if self.accept("-"):
            return -self.unary()
        if self.accept("+"):
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if not self.accept("^"):
            return base
        tok = self.peek()
        if tok.kind == "int":
            self.take()
            n = int(tok.text)
        elif tok.kind == "op" and tok.text == "(":
            self.take()
            inner = self.peek()
            if inner.kind != "int":
                raise self.err("exponent must be a nonnegative integer", inner)
            self.take()
            if not self.accept(")"):
                raise self.err("exponent must be a nonnegative integer", self.peek())
            n = int(inner.text)
        elif tok.kind == "op" and tok.text == "-":
            raise self.err("exponent must be a nonnegative integer", tok)
        else:
            raise self.err("exponent must be a nonnegative integer", tok)
        if self.peek().kind == "op" and self.peek().text == "^":
            raise self.err("chained exponents need parentheses")
        return base**n

    def atom(self):
        tok = self.take()
        if tok.kind == "int":
            return self.const(int(tok.text))
        if tok.kind == "name":
            if tok.text not in self.symbols:
                raise self.err(f"unknown symbol {tok.text!r}", tok)
            return self.symbols[tok.text]
        if tok.kind == "op" and tok.text == "(":
            v = self.expr()
            if not self.accept(")"):
                raise self.err("expected ')'")
            return v
        if tok.kind == "end":
            raise self.err("unexpected end of expression", tok)
        raise self.err(f"unexpected {tok.text!r}", tok)


def parse_rational_function(text: str, symbol: str = "z", line: int = 1, column: int = 1) -> RationalFunction:
    """Parse a rational expression in the single symbol ``symbol`` over Q."""
    z = RationalFunction.gen(QQ)
    return _Parser(text, {symbol: z}, lambda n: RationalFunction(QQ(n)), line, column - 1).parse()


def parse_expression(text: str, names: tuple[str, ...] = VAR_NAMES) -> MRat:
    """Parse a payload expression in the ring variables (``z0``..., ``X``, ``Y``, ``r``, ``s``)."""
    symbols = {n: gen(n) for n in names}
    return _Parser(text, symbols, MRat, 1, 0).parse()


@dataclass
class CurveSpecFile:
    """A parsed curve description."""

    name: str
    x: str
    y: str
    backend: str = "exact"
    precision: int = 256
    truncation: int | None = None

    def build(self):
        from ..curve import new_curve

        return new_curve(self.x, self.y, name=self.name)


_KEYS = {"name", "x", "y", "backend", "precision", "truncation"}


def parse_curve(text: str) -> CurveSpecFile:
    """Parse the ``key = value`` curve format; ``#`` starts a comment."""
    values: dict[str, tuple[str, int, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        if "=" not in body:
            col = len(body) - len(body.lstrip()) + 1
            raise ParseError("expected 'key = value'", lineno, col)
        key, value = body.split("=", 1)
        k = key.strip()
        kcol = len(key) - len(key.lstrip()) + 1
        if k not in _KEYS:
            raise ParseError(f"unknown key {k!r}", lineno, kcol)
        if k in values:
            raise ParseError(f"duplicate key {k!r}", lineno, kcol)
        vcol = len(key) + 2 + (len(value) - len(value.lstrip()))
        values[k] = (value.strip(), lineno, vcol)
    for k in ("x", "y"):
        if k not in values:
            raise ParseError(f"missing key {k!r}", max(1, len(text.splitlines())), 1)
    # validate the expressions where they appear
    for k in ("x", "y"):
        v, ln, col = values[k]
        f = parse_rational_function(v, line=ln, column=col)
        if f.num.degree <= 0 and f.den.degree <= 0:
            raise ParseError(f"{k} is constant", ln, col)
    spec = CurveSpecFile(name=values.get("name", ("curve", 0, 0))[0], x=values["x"][0], y=values["y"][0])
    if "backend" in values:
        v, ln, col = values["backend"]
        if v not in ("exact", "bigfloat"):
            raise ParseError(f"backend must be 'exact' or 'bigfloat', got {v!r}", ln, col)
        spec.backend = v
    for k in ("precision", "truncation"):
        if k in values:
            v, ln, col = values[k]
            if not v.isdigit() or int(v) < 1:
                raise ParseError(f"{k} must be a positive integer", ln, col)
            setattr(spec, k, int(v))
    return spec
