"""
From p-adic orbit data to the relation ideal over QQ.

The orbit basis is computed over Z/p^e, every coefficient of Delta_i * g_i is
lifted to its symmetric representative and divided by Delta_i. A labeling of
the roots that does not match the group is caught by exact checks: lifted
numerators beyond lambda_i, or f(T_j) / the root sum failing to reduce to zero.
"""

import itertools
import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .errors import (
    ActionMismatch,
    ArityMismatch,
    BadPrime,
    InconsistentLabeling,
    InsufficientPrecision,
    InvalidBasis,
    NotAUnit,
    NotExpressible,
    NoSplitPrimeFound,
)
from .exactring import QQ, ModRing, symmetric_lift
from .multipoly import MultiPoly, TriangularBasis
from .orbit import OrbitConfig, orbit_ideal_basis
from .padiclift import (
    DEFAULT_PRIME_SEARCH_CAP,
    SMALL_PRIME_LIMIT,
    BoundData,
    RootSystem,
    bound_data,
    find_split_prime,
    hensel_lift,
    is_split_prime,
)
from .permgrp import Perm, PermGroup, StabChain, stab_chain
from .unipoly import UniPoly

logger = logging.getLogger(__name__)

DEFAULT_ALIGN_MAX_DEGREE = 8


@dataclass(frozen=True)
class Provenance:
    p: int
    e: int
    deltas: Tuple[int, ...]
    lambdas: Tuple[Fraction, ...]
    labeling: Tuple[int, ...]
    alignment: Tuple[int, ...] = ()


@dataclass(frozen=True)
class ReconstructedBasis:
    f: UniPoly
    group: PermGroup
    basis: TriangularBasis
    provenance: Provenance
    denominators: Tuple[int, ...] = field(default=())

    @property
    def polys(self) -> Tuple[MultiPoly, ...]:
        return self.basis.polys

    def denominator_ratios(self) -> Tuple[Fraction, ...]:
        """Observed denominator over Delta_i; a diagnostic only."""
        return tuple(
            Fraction(den, delta) for den, delta in zip(self.denominators, self.provenance.deltas)
        )


def denominator_of(P: MultiPoly) -> int:
    den = 1
    for c in P.terms.values():
        den = lcm(den, Fraction(c).denominator)
    return den


def lift_to_rationals(g: MultiPoly, delta: int, lam: Fraction, index: int) -> MultiPoly:
    """Symmetric-lift Delta*g coefficientwise and divide by Delta."""
    terms = {}
    for m, c in g.terms.items():
        z = symmetric_lift(c * delta)
        if abs(z) > lam:
            raise InconsistentLabeling(
                f"coefficient of f{index} exceeds its bound after lifting", index=index
            )
        terms[m] = Fraction(z, delta)
    return MultiPoly(QQ, g.nvars, terms)


def root_relations_hold(basis: TriangularBasis, f: UniPoly, upto: Optional[int] = None) -> bool:
    """f(T_j) reduces to 0 for j <= upto; for a complete basis also sum T_j + a_1."""
    f = f.monic()
    k = len(basis) if upto is None else upto
    for j in range(1, k + 1):
        if not basis.reduce_univariate(f, j).is_zero():
            return False
    if basis.is_complete and k == basis.nvars:
        n = basis.nvars
        total = MultiPoly.constant(QQ, n, f[n - 1])
        for j in range(1, n + 1):
            total = total + MultiPoly.variable(QQ, n, j)
        if not basis.contains(total):
            return False
    return True


def _lift_all(gs, bounds: BoundData) -> List[MultiPoly]:
    return [
        lift_to_rationals(g, bounds.deltas[i], bounds.lambdas[i], i + 1)
        for i, g in enumerate(gs)
    ]


def reconstruct_basis(f: UniPoly, group: PermGroup, roots: RootSystem,
                      bounds: Optional[BoundData] = None, chain: Optional[StabChain] = None,
                      threads: int = 1, check_relations: bool = True) -> ReconstructedBasis:
    t0 = time.perf_counter()
    f = f.monic()
    chain = chain or stab_chain(group)
    bounds = bounds or bound_data(f, chain.degrees, roots.p)
    if roots.e < bounds.e:
        raise InsufficientPrecision(
            f"roots known modulo {roots.p}^{roots.e}, need exponent {bounds.e}",
            required=bounds.e,
        )
    cfg = OrbitConfig.build(roots.roots, group, roots.ring, chain)
    gs = orbit_ideal_basis(cfg, threads=threads)
    polys = _lift_all(gs, bounds)
    try:
        basis = TriangularBasis(tuple(polys))
    except InvalidBasis as e:
        raise InconsistentLabeling(f"reconstructed set is not triangular: {e}") from e
    if polys[0] != MultiPoly.from_univariate(f, 1, f.degree):
        raise InconsistentLabeling("first generator differs from f(T1)")
    if check_relations and not root_relations_hold(basis, f):
        raise InconsistentLabeling("root relations do not reduce to zero")
    logger.info(f"basis reconstructed in {time.perf_counter() - t0:.3f}s")
    return ReconstructedBasis(
        f=f,
        group=group,
        basis=basis,
        provenance=Provenance(
            p=roots.p,
            e=roots.e,
            deltas=bounds.deltas,
            lambdas=bounds.lambdas,
            labeling=roots.residues(),
        ),
        denominators=tuple(denominator_of(g) for g in polys),
    )


def _passes_early_check(f: UniPoly, group: PermGroup, chain: StabChain, roots: RootSystem,
                        bounds: BoundData) -> bool:
    if f.degree < 2:
        return True
    cfg = OrbitConfig.build(roots.roots, group, roots.ring, chain)
    try:
        partial = TriangularBasis(tuple(_lift_all(orbit_ideal_basis(cfg, upto=2), bounds)))
    except (InconsistentLabeling, InvalidBasis):
        return False
    return root_relations_hold(partial, f, upto=2)


def align_action(f: UniPoly, group: PermGroup, roots: RootSystem,
                 candidates: Optional[Iterable[Sequence[int]]] = None,
                 max_degree: int = DEFAULT_ALIGN_MAX_DEGREE, threads: int = 1,
                 bounds: Optional[BoundData] = None) -> Tuple[Perm, ReconstructedBasis]:
    """
    Find a relabeling y_i = x_{pi(i)} under which ``group`` acts as the Galois
    group. Candidates are tried in order (all of S_n in lex order by default);
    the first labeling passing every exact check wins.
    """
    t0 = time.perf_counter()
    f = f.monic()
    n = f.degree
    chain = stab_chain(group)
    bounds = bounds or bound_data(f, chain.degrees, roots.p)
    if candidates is None:
        if n > max_degree:
            candidates = [tuple(range(n))]
            logger.warning(
                f"degree {n} exceeds the exhaustive alignment limit {max_degree}; "
                "trying the given labeling only"
            )
        else:
            candidates = itertools.permutations(range(n))
    tried = 0
    for images in candidates:
        tried += 1
        pi = Perm(images)
        relabeled = roots.relabel(pi.images)
        if not _passes_early_check(f, group, chain, relabeled, bounds):
            logger.debug(f"labeling {pi.cycles()} rejected after g2")
            continue
        try:
            result = reconstruct_basis(f, group, relabeled, bounds, chain, threads)
        except InconsistentLabeling as e:
            logger.debug(f"labeling {pi.cycles()} rejected: {e}")
            continue
        logger.info(
            f"alignment {pi.cycles()} found after {tried} labelings in "
            f"{time.perf_counter() - t0:.3f}s"
        )
        prov = result.provenance
        aligned = Provenance(prov.p, prov.e, prov.deltas, prov.lambdas, prov.labeling,
                             alignment=pi.images)
        return pi, ReconstructedBasis(result.f, result.group, result.basis, aligned,
                                      result.denominators)
    raise ActionMismatch(
        f"no labeling of the roots mod {roots.p} matches the group ({tried} tried)",
        tried=tried,
    )


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    theorem: str


@dataclass(frozen=True)
class VerificationReport:
    checks: Tuple[CheckResult, ...]
    second_prime: Optional[int] = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "second_prime": self.second_prime,
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail, "theorem": c.theorem}
                for c in self.checks
            ],
        }


def _as_triangular(basis: Union[TriangularBasis, ReconstructedBasis]) -> TriangularBasis:
    return basis.basis if isinstance(basis, ReconstructedBasis) else basis


def _check_shape(basis: TriangularBasis, f: UniPoly, chain: StabChain) -> CheckResult:
    theorem = "triangular shape of the reduced lex basis"
    if not basis.is_complete:
        return CheckResult("shape", False, f"{len(basis)} of {basis.nvars} generators", theorem)
    if basis.degrees != chain.degrees:
        return CheckResult(
            "shape", False, f"degrees {basis.degrees} differ from indices {chain.degrees}", theorem
        )
    if basis[1] != MultiPoly.from_univariate(f, 1, basis.nvars):
        return CheckResult("shape", False, "f1 differs from f(T1)", theorem)
    return CheckResult("shape", True, f"degrees {basis.degrees}", theorem)


def _check_integrality(basis: TriangularBasis, bounds: BoundData) -> CheckResult:
    theorem = "clearing constant Delta_i and coefficient bound lambda_i"
    for i, g in enumerate(basis.polys, start=1):
        delta, lam = bounds.deltas[i - 1], bounds.lambdas[i - 1]
        for c in g.terms.values():
            scaled = c * delta
            if scaled.denominator != 1:
                return CheckResult("integrality", False, f"Delta_{i}*f{i} is not integral", theorem)
            if abs(scaled) > lam:
                return CheckResult("integrality", False, f"Delta_{i}*f{i} exceeds lambda_{i}", theorem)
    return CheckResult("integrality", True, "all scaled coefficients integral and bounded", theorem)


def _triangular_solve(basis: TriangularBasis, roots: Sequence) -> Optional[Tuple]:
    n = basis.nvars
    zero = roots[0] - roots[0]

    def extend(prefix):
        i = len(prefix)
        if i == n:
            return tuple(prefix)
        for r in roots:
            if any(r == q for q in prefix):
                continue
            pt = tuple(prefix) + (r,) + (zero,) * (n - i - 1)
            if not basis.polys[i].evaluate(pt):
                found = extend(prefix + [r])
                if found is not None:
                    return found
        return None

    return extend([])


def _second_prime(f: UniPoly, basis: TriangularBasis, p: int, cap: int) -> int:
    den = 1
    for g in basis.polys:
        den = lcm(den, denominator_of(g))
    q = p
    while True:
        q = find_split_prime(f, q + 1, cap)
        if den % q:
            return q


def _check_second_prime(basis: TriangularBasis, f: UniPoly, group: PermGroup, p: int,
                        exponent: int, cap: int) -> Tuple[CheckResult, Optional[int]]:
    """Solve the basis at the next usable split prime q and test every conjugate mod q^exponent."""
    theorem = "uniqueness of the generators of the relation ideal"
    try:
        q = _second_prime(f, basis, p, cap)
    except NoSplitPrimeFound as e:
        return CheckResult("second-prime", False, str(e), theorem), None
    roots = hensel_lift(f, q, exponent)
    ring = ModRing(q, exponent)
    try:
        reduced = basis.change_ring(ring)
    except NotAUnit as e:
        return CheckResult("second-prime", False, str(e), theorem), q
    x = _triangular_solve(reduced, roots.roots)
    if x is None:
        return CheckResult("second-prime", False, f"no common zero modulo {q}^{exponent}", theorem), q
    for sigma in group.elements:
        pt = sigma.act(x)
        if any(g.evaluate(pt) for g in reduced.polys):
            return CheckResult(
                "second-prime", False, f"f_i does not vanish at {sigma.cycles()}(x') mod {q}", theorem
            ), q
    return CheckResult(
        "second-prime", True, f"all {group.order} conjugates vanish modulo {q}^{exponent}", theorem
    ), q


def verify_basis(basis: Union[TriangularBasis, ReconstructedBasis], f: UniPoly, group: PermGroup,
                 p: int, exponent: Optional[int] = None,
                 prime_search_cap: int = DEFAULT_PRIME_SEARCH_CAP) -> VerificationReport:
    """
    Check shape, integrality against Delta_i and lambda_i, vanishing on the G-orbit at a
    second split prime, self-reduction and the root relations. The second prime works
    with the same exponent e as the bound data at p unless ``exponent`` is given.
    """
    t0 = time.perf_counter()
    f = f.monic()
    tb = _as_triangular(basis)
    chain = stab_chain(group)
    checks = [_check_shape(tb, f, chain)]
    if not checks[0].passed:
        return VerificationReport(tuple(checks))
    bounds = bound_data(f, chain.degrees, p)
    checks.append(_check_integrality(tb, bounds))
    exponent = bounds.e if exponent is None else exponent
    second, q = _check_second_prime(tb, f, group, p, exponent, prime_search_cap)
    checks.append(second)
    self_reduces = all(tb.normal_form(g).is_zero() for g in tb.polys)
    checks.append(CheckResult(
        "self-reduction", self_reduces, "NF(f_i) = 0" if self_reduces else "a generator does not reduce",
        "triangular sets are reduced Groebner bases",
    ))
    relations = root_relations_hold(tb, f)
    checks.append(CheckResult(
        "root-relations", relations,
        "f(T_j) and the root sum reduce to zero" if relations else "a root relation survives reduction",
        "membership of the defining relations",
    ))
    report = VerificationReport(tuple(checks), second_prime=q)
    logger.info(
        f"verification {'passed' if report.passed else 'failed'} in {time.perf_counter() - t0:.3f}s"
    )
    return report


def express_root(basis: Union[TriangularBasis, ReconstructedBasis], i: int) -> MultiPoly:
    """P with f_i = T_i - P, so x_i = P(x_1, ..., x_{i-1}); needs d_i = 1."""
    tb = _as_triangular(basis)
    if not 1 <= i <= len(tb):
        raise ArityMismatch(f"index {i} outside 1..{len(tb)}", index=i)
    if tb.degrees[i - 1] != 1:
        raise NotExpressible(
            f"x{i} is not a polynomial in x1..x{i - 1} (degree {tb.degrees[i - 1]} in T{i})",
            index=i,
        )
    return MultiPoly.variable(tb.ring, tb.nvars, i) - tb[i]


def expressible_roots(basis: Union[TriangularBasis, ReconstructedBasis]) -> Dict[int, MultiPoly]:
    tb = _as_triangular(basis)
    return {i: express_root(tb, i) for i in range(2, len(tb) + 1) if tb.degrees[i - 1] == 1}


def compute_basis(f: UniPoly, group: PermGroup, prime: Optional[int] = None,
                  precision: Optional[int] = None, labeling: Optional[Sequence[int]] = None,
                  threads: int = 1, max_degree: int = DEFAULT_ALIGN_MAX_DEGREE,
                  prime_search_cap: int = DEFAULT_PRIME_SEARCH_CAP,
                  small_prime_limit: int = SMALL_PRIME_LIMIT, align: bool = True) -> ReconstructedBasis:
    """
    Prime search, lifting, alignment and reconstruction in one call. With
    align=False the given labeling is trusted and only reconstructed.
    """
    f = f.monic()
    if group.n != f.degree:
        raise ActionMismatch(f"group acts on {group.n} points but deg f = {f.degree}")
    if prime is None:
        prime = find_split_prime(f, 3, prime_search_cap, small_prime_limit)
    else:
        if not is_split_prime(f, prime, small_prime_limit):
            raise BadPrime(f"{prime} is not a split prime for f", prime=prime)
    chain = stab_chain(group)
    bounds = bound_data(f, chain.degrees, prime)
    e = bounds.e if precision is None else precision
    if e < bounds.e:
        raise InsufficientPrecision(
            f"precision {e} below the required exponent {bounds.e}", required=bounds.e
        )
    roots = hensel_lift(f, prime, e, small_prime_limit)
    if labeling:
        roots = roots.with_labeling(labeling)
    if not align:
        return reconstruct_basis(f, group, roots, bounds, chain, threads)
    _, result = align_action(f, group, roots, max_degree=max_degree, threads=threads,
                             bounds=bounds)
    return result
