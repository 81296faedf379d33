from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from curvecomp.errors import NotDivisible, ParseError
from curvecomp.poly import Poly, exact_divide, gcd, parse, rational_roots, resultant, to_string

X, Y, Z = Poly.var("x"), Poly.var("y"), Poly.var("z")

small = st.integers(-4, 4)


@st.composite
def polys(draw, max_deg=3):
    terms = {}
    for _ in range(draw(st.integers(1, 5))):
        i = draw(st.integers(0, max_deg))
        j = draw(st.integers(0, max_deg - i))
        terms[(i, j, max_deg - i - j)] = draw(small)
    return Poly(terms)


def test_parse_and_print():
    p = parse("(x*z + y^2)^2 - 3/2*x^2*y*z")
    assert to_string(p) == "-3/2*x^2*y*z + x^2*z^2 + 2*x*y^2*z + y^4"
    assert parse(to_string(p)) == p
    assert parse("x**2") == X * X


def test_parse_errors():
    with pytest.raises(ParseError):
        parse("x + * y")
    with pytest.raises(ParseError):
        parse("(x + y")


def test_gcd_and_division():
    a = (X + Y) * (X - Z) ** 2
    b = (X - Z) * (Y + Z * 3)
    assert gcd(a, b).primitive() == (X - Z).primitive()
    assert exact_divide(a, X - Z) == (X + Y) * (X - Z)
    with pytest.raises(NotDivisible):
        exact_divide(a, Y + Z * 3)


def test_resultant_of_linear_forms():
    # Res_y(y - x, y - 2x) = x up to sign
    xy = ("x", "y")
    r = resultant(parse("y - x", xy), parse("y - 2*x", xy), "y")
    assert r in (parse("x", xy), parse("-x", xy))


def test_rational_roots_with_multiplicity():
    p = parse("(2*x - 1)^2*(x + 3)*(x^2 + 1)", ("x",))
    assert rational_roots(p, "x") == {Fraction(1, 2): 2, Fraction(-3): 1}


@settings(max_examples=150, deadline=None)
@given(polys(), polys())
def test_ring_axioms(a, b):
    assert a * b == b * a
    assert (a + b) - b == a
    if b.terms:
        assert exact_divide(a * b, b) == a


@settings(max_examples=100, deadline=None)
@given(polys(2), polys(2), polys(1))
def test_gcd_contains_common_factor(a, b, c):
    if not (a.terms and b.terms and c.terms):
        return
    g = gcd(a * c, b * c)
    assert exact_divide(g, c.primitive()) is not None


@settings(max_examples=100, deadline=None)
@given(polys())
def test_print_parse_round_trip(p):
    assert parse(to_string(p)) == p
