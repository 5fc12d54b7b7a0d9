import os
import sys
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

# Add the src directory to the path so we can import the package
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "../src"))

from relideal.errors import ArityMismatch, InvalidBasis, RingMismatch
from relideal.exactring import GF, QQ
from relideal.multipoly import MultiPoly, OrderIdeal, TriangularBasis, normal_form, poly_arith
from relideal.polytext import parse_poly
from relideal.unipoly import UniPoly

from tests.known_fields import C5, PURE_CUBIC


def basis_of(field):
    n = len(field.degrees)
    return TriangularBasis(tuple(parse_poly(g, n) for g in field.basis))


monomials3 = st.tuples(*[st.integers(min_value=0, max_value=4)] * 3)
polys3 = st.dictionaries(monomials3, st.integers(min_value=-5, max_value=5), max_size=6).map(
    lambda terms: MultiPoly(QQ, 3, terms)
)


def test_arithmetic():
    t1 = MultiPoly.variable(QQ, 2, 1)
    t2 = MultiPoly.variable(QQ, 2, 2)
    p = (t1 + t2) ** 2
    assert p == t1 * t1 + t2 * t2 + t1 * t2 * 2
    assert p - p == 0
    assert poly_arith("sub", p, t1 * t1) == t2 * t2 + t1 * t2 * 2
    with pytest.raises(ValueError):
        poly_arith("div", p, p)


def test_mismatches():
    with pytest.raises(ArityMismatch):
        MultiPoly.variable(QQ, 2, 1) + MultiPoly.variable(QQ, 3, 1)
    with pytest.raises(RingMismatch):
        MultiPoly.variable(QQ, 2, 1) + MultiPoly.variable(GF(7), 2, 1)


def test_degrees_and_leading_term():
    p = parse_poly("T2^2*T1 + 3*T1^4 - 1", 2)
    assert p.degree(1) == 4
    assert p.degree(2) == 2
    assert p.leading_monomial() == (1, 2)
    assert p.main_variable() == 2
    assert MultiPoly.zero(QQ, 2).degree(1) == -1


def test_evaluate():
    p = parse_poly("T1^2 + T1*T2 - 3", 2)
    assert p.evaluate((Fraction(1), Fraction(2))) == 0
    F = GF(7)
    assert p.change_ring(F).evaluate((F(3), F(1))) == F(9)


def test_staircase_order_ideal():
    O = OrderIdeal.staircase((3, 2))
    assert len(O) == 6
    assert O.is_downward_closed()
    assert list(O)[:3] == [(0, 0), (1, 0), (2, 0)]
    assert O.corners() == [(3, 0), (0, 2)]


def test_triangular_basis_shape():
    B = basis_of(PURE_CUBIC)
    assert B.degrees == (3, 2, 1)
    assert B.dimension() == 6
    assert B.is_complete
    assert len(B.order_ideal()) == 6
    assert B.truncate(2).degrees == (3, 2)
    assert not B.truncate(2).is_complete


@pytest.mark.parametrize(
    "polys",
    [
        ("T1^2 - 2", "2*T2 + T1"),
        ("T1^2 - 2", "T2 + T1^2"),
        ("T1^2 - 2", "T1 + 1"),
        ("T2 + T1", "T1^2 - 2"),
    ],
)
def test_triangular_basis_rejects_malformed(polys):
    with pytest.raises(InvalidBasis):
        TriangularBasis(tuple(parse_poly(g, 2) for g in polys))


def test_normal_form_in_cyclic_quintic():
    B = basis_of(C5)
    t1 = MultiPoly.variable(QQ, 5, 1)
    assert B.normal_form(t1 ** 5) == parse_poly("T1^4 + 4*T1^3 - 3*T1^2 - 3*T1 + 1", 5)
    assert B.normal_form(MultiPoly.variable(QQ, 5, 2)) == parse_poly("-T1^2 + 2", 5)
    assert B.contains(B[3])
    assert not B.contains(t1)


def test_relation_membership():
    B = basis_of(PURE_CUBIC)
    # x1 x2 x3 = 2 and x1^2 + x2^2 + x3^2 = 0 for Z^3 - 2
    assert B.contains(parse_poly("T1*T2*T3 - 2", 3))
    assert B.contains(parse_poly("T1^2 + T2^2 + T3^2", 3))
    assert not B.contains(parse_poly("T1*T2 - 2", 3))


def test_reduce_univariate():
    B = basis_of(PURE_CUBIC)
    f = UniPoly([-2, 0, 0, 1])
    for i in (1, 2, 3):
        assert B.reduce_univariate(f, i).is_zero()


def test_normal_form_accepts_fewer_variables():
    B = basis_of(PURE_CUBIC)
    assert B.normal_form(parse_poly("T1^3", 1)) == 2
    with pytest.raises(ArityMismatch):
        B.normal_form(parse_poly("T4", 4))


@settings(max_examples=50, deadline=None)
@given(polys3)
def test_normal_form_is_idempotent_and_reduced(p):
    B = basis_of(PURE_CUBIC)
    r = B.normal_form(p)
    assert B.normal_form(r) == r
    O = B.order_ideal()
    assert all(m in O for m in r.terms)
    assert B.contains(p - r)


@settings(max_examples=50, deadline=None)
@given(polys3, st.permutations([1, 2, 3]))
def test_normal_form_is_order_independent(p, order):
    B = basis_of(PURE_CUBIC)
    assert normal_form(p, B, order) == normal_form(p, B)


@settings(max_examples=50, deadline=None)
@given(polys3, polys3)
def test_normal_form_is_a_ring_homomorphism(a, b):
    B = basis_of(PURE_CUBIC)
    assert B.normal_form(a * b) == B.normal_form(B.normal_form(a) * B.normal_form(b))
    assert B.normal_form(a + b) == B.normal_form(a) + B.normal_form(b)
