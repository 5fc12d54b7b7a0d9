import os
import sys
from fractions import Fraction

import pytest

# Add the src directory to the path so we can import the package
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "../src"))

from relideal.errors import PolynomialParseError
from relideal.exactring import GF, QQ
from relideal.multipoly import MultiPoly
from relideal.polytext import format_poly, parse_poly, parse_unipoly
from relideal.unipoly import UniPoly


def test_parse_and_format_mixed_coefficients():
    p = parse_poly("T2^4 + 2/13*T1^4*T2^3 - T1 + 5")
    assert p.nvars == 2
    assert p.coefficient((4, 3)) == Fraction(2, 13)
    assert format_poly(p) == "T2^4 + 2/13*T1^4*T2^3 - T1 + 5"


def test_terms_print_in_descending_lex_order():
    p = parse_poly("1 + T1 + T2 + T1*T2 + T1^2")
    assert format_poly(p) == "T1*T2 + T2 + T1^2 + T1 + 1"


def test_leading_negative_and_unit_coefficients():
    assert format_poly(parse_poly("2 - T1^2", 1)) == "-T1^2 + 2"
    assert format_poly(parse_poly("-T1*T2 - 1/2*T1", 2)) == "-T1*T2 - 1/2*T1"
    assert format_poly(MultiPoly.zero(QQ, 3)) == "0"


def test_expansion_and_star_star_power():
    p = parse_poly("(T1 + 1)**2 - T1^2", 1)
    assert format_poly(p) == "2*T1 + 1"


def test_explicit_arity():
    p = parse_poly("T1 + T3", 4)
    assert p.nvars == 4
    with pytest.raises(PolynomialParseError):
        parse_poly("T5", 4)


def test_parse_into_prime_field():
    p = parse_poly("T1^2 - 2", 1, GF(7))
    assert p.ring == GF(7)
    assert format_poly(p) == "T1^2 + 5"


@pytest.mark.parametrize(
    "text",
    ["", "   ", "T1 +", "x + 1", "T0 + 1", "T1 / T2", "sqrt(T1)", "T1; import os", "T1.real"],
)
def test_rejects_bad_input(text):
    with pytest.raises(PolynomialParseError):
        parse_poly(text)


def test_parse_unipoly():
    f = parse_unipoly("Z^3 - 3*Z + 1")
    assert f == UniPoly([1, -3, 0, 1])
    assert parse_unipoly("x^2 - 2") == UniPoly([-2, 0, 1])
    assert parse_unipoly("7") == UniPoly([7])


@pytest.mark.parametrize("text", ["x*y + 1", "Z^-1 + 1", "_x + 1"])
def test_parse_unipoly_rejects(text):
    with pytest.raises(PolynomialParseError):
        parse_unipoly(text)
