"""Arithmetic in QQ[T]/I for a complete triangular basis of a maximal ideal."""

import logging
from typing import List, Sequence, Union

from .errors import FieldDivisionByZero, InvalidBasis, RingMismatch
from .exactring import ModRingElem
from .linalg import EchelonBasis, SingularSystem, solve
from .multipoly import Monomial, MultiPoly, TriangularBasis
from .unipoly import UniPoly

logger = logging.getLogger(__name__)


class SplittingField:
    """
    The residue ring of a triangular basis. It is a field exactly when the ideal
    is maximal, which holds for a relation ideal of an irreducible polynomial;
    a non-invertible nonzero element exposes a basis that is not.
    """

    def __init__(self, basis: TriangularBasis):
        if not basis.is_complete:
            raise InvalidBasis(f"{len(basis)} generators for {basis.nvars} variables")
        self.basis = basis
        self.ring = basis.ring
        self._monomials: List[Monomial] = list(basis.order_ideal())
        self._index = {m: k for k, m in enumerate(self._monomials)}

    @property
    def nvars(self) -> int:
        return self.basis.nvars

    @property
    def degree(self) -> int:
        return len(self._monomials)

    def monomial_basis(self) -> List[Monomial]:
        return list(self._monomials)

    def __call__(self, value) -> "FieldElem":
        if isinstance(value, FieldElem):
            if value.field is not self:
                raise RingMismatch("element of a different field")
            return value
        if isinstance(value, MultiPoly):
            return FieldElem(self, self.basis.normal_form(value))
        return FieldElem(self, MultiPoly.constant(self.ring, self.nvars, value))

    def gen(self, i: int) -> "FieldElem":
        """Class of T_i, i.e. the root x_i."""
        return FieldElem(self, self.basis.normal_form(MultiPoly.variable(self.ring, self.nvars, i)))

    @property
    def zero(self) -> "FieldElem":
        return self(0)

    @property
    def one(self) -> "FieldElem":
        return self(1)

    def coordinates(self, a: "FieldElem") -> List:
        vec = [self.ring.zero] * self.degree
        for m, c in a.poly.terms.items():
            vec[self._index[m]] = c
        return vec

    def from_coordinates(self, vec: Sequence) -> "FieldElem":
        terms = {m: c for m, c in zip(self._monomials, vec) if c}
        return FieldElem(self, MultiPoly(self.ring, self.nvars, terms))

    def multiplication_matrix(self, a: "FieldElem") -> List[List]:
        """Column k holds the coordinates of a * m_k."""
        cols = [
            self.coordinates(field_mul(a, FieldElem(self, MultiPoly.monomial(self.ring, m))))
            for m in self._monomials
        ]
        return [list(row) for row in zip(*cols)]


class FieldElem:
    __slots__ = ("field", "poly")

    def __init__(self, field: SplittingField, poly: MultiPoly):
        self.field = field
        self.poly = poly

    def _coerce(self, other) -> "FieldElem":
        return self.field(other)

    def __add__(self, other):
        return FieldElem(self.field, self.poly + self._coerce(other).poly)

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElem(self.field, self.poly - self._coerce(other).poly)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return FieldElem(self.field, -self.poly)

    def __mul__(self, other):
        return field_mul(self, self._coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return field_mul(self, field_inv(self._coerce(other)))

    def __rtruediv__(self, other):
        return field_mul(self._coerce(other), field_inv(self))

    def __pow__(self, k: int):
        return field_pow(self, k)

    def __eq__(self, other):
        try:
            return self.poly == self._coerce(other).poly
        except RingMismatch:
            return False

    def __hash__(self):
        return hash(self.poly)

    def __bool__(self):
        return not self.poly.is_zero()

    def inverse(self) -> "FieldElem":
        return field_inv(self)

    def minimal_poly(self) -> UniPoly:
        return minimal_poly_of(self)

    def __repr__(self):
        return f"FieldElem({self.poly})"

    def __str__(self):
        return str(self.poly)


def _check_same(a: FieldElem, b: FieldElem):
    if a.field is not b.field:
        raise RingMismatch("elements of different fields")


def field_mul(a: FieldElem, b: FieldElem) -> FieldElem:
    _check_same(a, b)
    return FieldElem(a.field, a.field.basis.normal_form(a.poly * b.poly))


def field_inv(a: FieldElem) -> FieldElem:
    """Solve M_a c = e_1, the coordinates of 1."""
    if not a:
        raise FieldDivisionByZero("division by zero in the splitting field")
    K = a.field
    rhs = K.coordinates(K.one)
    try:
        coords = solve(K.multiplication_matrix(a), rhs, K.ring)
    except SingularSystem as e:
        raise InvalidBasis(f"{a} is a nonzero zero divisor; the ideal is not maximal") from e
    return K.from_coordinates(coords)


def field_pow(a: FieldElem, k: int) -> FieldElem:
    if k < 0:
        return field_pow(field_inv(a), -k)
    result = a.field.one
    base = a
    while k:
        if k & 1:
            result = field_mul(result, base)
        base = field_mul(base, base)
        k >>= 1
    return result


def minimal_poly_of(a: FieldElem, var: str = "Z") -> UniPoly:
    """First linear dependency among 1, a, a^2, ... gives the monic minimal polynomial."""
    K = a.field
    one = K.ring.one
    echelon = EchelonBasis(K.ring)
    power = K.one
    for k in range(K.degree + 1):
        vec, tag = echelon.reduce(K.coordinates(power), {k: one})
        if not any(vec):
            return UniPoly([tag.get(j, K.ring.zero) for j in range(k + 1)], K.ring, var)
        echelon.insert(vec, tag)
        power = field_mul(power, a)
    raise InvalidBasis("no linear dependency among powers; residue ring is inconsistent")


def evaluate_at(a: Union[FieldElem, MultiPoly], point: Sequence):
    """
    Image of a under T_i -> point[i-1], e.g. an aligned tuple of p-adic roots.
    The value lies in the ring of the point (QQ for rational points), constants
    included.
    """
    poly = a.poly if isinstance(a, FieldElem) else a
    if len(point) != poly.nvars:
        raise ValueError(f"point of length {len(point)} for {poly.nvars} variables")
    ring = point[0].ring if point and isinstance(point[0], ModRingElem) else poly.ring
    return poly.change_ring(ring).evaluate(tuple(ring(c) for c in point))
