from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from specrec.cli.parser import ParseError, parse_curve, parse_expression, parse_rational_function
from specrec.exact_arith import GENS, MRat, slot


def test_valid_specs():
    s = parse_curve("x = z^2\ny = z")
    assert (s.x, s.y, s.backend, s.precision) == ("z^2", "z", "exact", 256)
    s = parse_curve("x = z + 1/z\ny = 1/z")
    assert s.build().d2 == 1


def test_options_and_comments():
    s = parse_curve("# comment\nname = g\nx = z + 1/z  # trailing\ny = 1/z\nbackend = bigfloat\nprecision = 512\n")
    assert s.name == "g" and s.backend == "bigfloat" and s.precision == 512


@pytest.mark.parametrize(
    "text,line,column,reason",
    [
        ("x = z^(1/2)\ny = z", 1, 9, "exponent must be a nonnegative integer"),
        ("x = z^2\ny = z +* 1", 2, 8, "unexpected '*'"),
        ("x = w^2\ny = z", 1, 5, "unknown symbol 'w'"),
        ("x = 3\ny = z", 1, 5, "x is constant"),
        ("x = z\ny = z\nfoo = 1", 3, 1, "unknown key 'foo'"),
        ("x = z\nx = z^2\ny = z", 2, 1, "duplicate key 'x'"),
        ("x = z", 1, 1, "missing key 'y'"),
        ("x = z\ny = z\nbackend = gpu", 3, 11, "backend must be 'exact' or 'bigfloat', got 'gpu'"),
        ("x = z\ny = z\nprecision = -4", 3, 13, "precision must be a positive integer"),
    ],
)
def test_rejections(text, line, column, reason):
    with pytest.raises(ParseError) as e:
        parse_curve(text)
    assert (e.value.line, e.value.column, e.value.reason) == (line, column, reason)


def test_precedence():
    z = parse_rational_function("z")
    assert parse_rational_function("-z^2") == -(z * z)
    assert parse_rational_function("2^3*z/4") == z * 2
    assert parse_rational_function("1/z/z") == 1 / (z * z)
    assert parse_rational_function("z^(3)") == z * z * z


# random expression trees in the ring variables
_leaf = st.one_of(
    st.integers(min_value=-9, max_value=9).map(MRat),
    st.sampled_from([slot(0), slot(1)]).map(lambda v: MRat(GENS[v])),
)


def _combine(children):
    return st.one_of(
        st.tuples(children, children).map(lambda ab: ab[0] + ab[1]),
        st.tuples(children, children).map(lambda ab: ab[0] * ab[1]),
        st.tuples(children, children).filter(lambda ab: not ab[1].is_zero()).map(lambda ab: ab[0] / ab[1]),
        st.tuples(children, st.integers(min_value=0, max_value=3)).map(lambda ab: ab[0] ** ab[1]),
    )


exprs = st.recursive(_leaf, _combine, max_leaves=8)


@settings(max_examples=60, deadline=None)
@given(exprs)
def test_payload_round_trip(e):
    text = str(e)
    back = parse_expression(text)
    assert back == e
    assert str(back) == text
