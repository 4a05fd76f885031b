from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from legdga.laurent import GF2, Field, LaurentPoly, parse_laurent

VARS = ("mu", "lambda")


def test_field_parse():
    assert Field.parse("f2").p == 2
    assert Field.parse("fp:5").p == 5
    assert Field.parse("q").p == 0
    with pytest.raises(ValueError):
        Field.parse("fp:6")


def test_keyword_variable_names_parse():
    p = parse_laurent("1 + lambda*(1 + mu)^2", GF2, VARS)
    assert str(p) == "1 + lambda + mu^2*lambda"


def test_unknown_name_rejected():
    with pytest.raises(ValueError):
        parse_laurent("1 + x", GF2, VARS)


def test_inverse_of_monomial(gf5):
    m = parse_laurent("3*mu^2*lambda^-1", gf5, VARS)
    assert m * m.inverse() == LaurentPoly.constant(gf5, VARS, 1)


def test_equal_up_to_unit(qq):
    p = parse_laurent("1 + lambda*(1 + mu)", qq, VARS)
    q = parse_laurent("-2*mu^-3*lambda^2", qq, VARS) * p
    assert p.equal_up_to_unit(q)
    assert not p.equal_up_to_unit(p + 1)


def test_json_round_trip(qq):
    p = parse_laurent("1/2*mu - 3*lambda^-2", qq, VARS)
    assert LaurentPoly.from_json(qq, VARS, p.to_json()) == p


def test_evaluate_rational_point(qq):
    p = parse_laurent("1 + lambda*(1 + mu)", qq, VARS)
    assert p.evaluate({"mu": 1, "lambda": Fraction(-1, 2)}) == 0


terms = st.lists(
    st.tuples(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), st.integers(-4, 4)),
    max_size=5,
)


@settings(max_examples=60, deadline=None)
@given(terms, terms, terms)
def test_ring_axioms(a, b, c):
    f = Field.parse("fp:7")
    A, B, C = (LaurentPoly(f, VARS, t) for t in (a, b, c))
    assert A * (B + C) == A * B + A * C
    assert (A * B) * C == A * (B * C)
    assert A * B == B * A
    assert A - A == LaurentPoly(f, VARS, [])
