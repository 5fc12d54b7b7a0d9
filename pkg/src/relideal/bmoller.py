"""
Buchberger-Moeller: the reduced lex Groebner basis, order ideal and separators
of the vanishing ideal of a finite point set over an exact field.
"""

import logging
import time
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .errors import PointSetTooLarge, RingMismatch
from .exactring import Ring
from .linalg import EchelonBasis, inverse
from .multipoly import Monomial, MultiPoly, OrderIdeal, divides, lex_key

logger = logging.getLogger(__name__)

DEFAULT_POINTSET_CAP = 10_000


@dataclass(frozen=True)
class PointSet:
    ring: Ring
    points: Tuple[tuple, ...]

    def __post_init__(self):
        if not self.ring.is_field:
            raise RingMismatch(f"Buchberger-Moeller needs a field, got {self.ring}")
        points = tuple(tuple(self.ring(c) for c in pt) for pt in self.points)
        if not points:
            raise ValueError("empty point set")
        if len({len(pt) for pt in points}) != 1:
            raise ValueError("points of different dimensions")
        if len(set(points)) != len(points):
            raise ValueError("duplicate points")
        object.__setattr__(self, "points", points)

    @property
    def n(self) -> int:
        return len(self.points[0])

    def __len__(self):
        return len(self.points)


@dataclass(frozen=True)
class BMResult:
    points: PointSet
    groebner: Tuple[MultiPoly, ...]
    order_ideal: OrderIdeal
    separators: Tuple[MultiPoly, ...]
    corners: Tuple[Monomial, ...]
    monomials: Tuple[Monomial, ...] = ()
    # Inverse of the evaluation matrix; row k belongs to monomials[k].
    evaluation_inverse: tuple = ()

    def interpolate(self, values: Sequence) -> MultiPoly:
        return interpolate_values(self, values)


def _evaluate_monomial(m: Monomial, pt, one):
    value = one
    for x, k in zip(pt, m):
        if k:
            value = value * x**k
    return value


def buchberger_moeller(X: PointSet, cap: int = DEFAULT_POINTSET_CAP) -> BMResult:
    if len(X) > cap:
        raise PointSetTooLarge(f"{len(X)} points exceed the cap of {cap}", cap=cap)
    t0 = time.perf_counter()
    ring, n = X.ring, X.n
    one = ring.one

    def evaluate(m):
        return [_evaluate_monomial(m, pt, one) for pt in X.points]

    echelon = EchelonBasis(ring)
    basis: List[Monomial] = []
    leading: List[Monomial] = []
    groebner: List[MultiPoly] = []
    candidates = {(0,) * n}
    while candidates:
        t = min(candidates, key=lex_key)
        candidates.discard(t)
        if any(divides(s, t) for s in leading):
            continue
        vec, tag = echelon.reduce(evaluate(t), {t: one})
        if not any(vec):
            groebner.append(MultiPoly(ring, n, tag))
            leading.append(t)
            continue
        echelon.insert(vec, tag)
        basis.append(t)
        for i in range(n):
            s = t[:i] + (t[i] + 1,) + t[i + 1:]
            if not any(divides(lt, s) for lt in leading):
                candidates.add(s)

    order_ideal = OrderIdeal(n, basis)
    matrix = [[_evaluate_monomial(m, pt, one) for m in basis] for pt in X.points]
    inv = inverse(matrix, ring)
    separators = tuple(
        MultiPoly(ring, n, {m: inv[k][j] for k, m in enumerate(basis)})
        for j in range(len(X))
    )
    logger.info(
        f"Buchberger-Moeller on {len(X)} points in {time.perf_counter() - t0:.3f}s"
    )
    return BMResult(
        points=X,
        groebner=tuple(groebner),
        order_ideal=order_ideal,
        separators=separators,
        corners=tuple(leading),
        monomials=tuple(basis),
        evaluation_inverse=tuple(tuple(row) for row in inv),
    )


def interpolate_values(result: BMResult, values: Sequence) -> MultiPoly:
    """The unique interpolant supported on the order ideal."""
    X = result.points
    if len(values) != len(X):
        raise ValueError(f"{len(values)} values for {len(X)} points")
    ring = X.ring
    values = [ring(v) for v in values]
    terms = {}
    for k, m in enumerate(result.monomials):
        acc = ring.zero
        for j, v in enumerate(values):
            acc = acc + result.evaluation_inverse[k][j] * v
        terms[m] = acc
    return MultiPoly(ring, X.n, terms)
