"""
The p-adic side of the pipeline: split primes, roots mod p, Hensel lifting,
the discriminant and the bound data that fixes the working precision.
"""

import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, lcm
from typing import List, Optional, Sequence, Tuple

from sympy import isprime, nextprime

from .errors import BadPrime, InsufficientPrecision, NoSplitPrimeFound
from .exactring import GF, QQ, ModRing, ModRingElem
from .unipoly import UniPoly, resultant

logger = logging.getLogger(__name__)

DEFAULT_PRIME_SEARCH_CAP = 1_000_000
SMALL_PRIME_LIMIT = 10_000


def ceil_half(i: int) -> int:
    return (i + 1) // 2


def discriminant(f: UniPoly) -> Fraction:
    """prod_{r<s} (x_r - x_s)^2 for monic f, via Res(f, f')."""
    f = f.monic()
    n = f.degree
    if n < 1:
        raise ValueError("discriminant needs a polynomial of degree >= 1")
    if n == 1:
        return Fraction(1)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(f, f.derivative())


def clearing_denominator(f: UniPoly) -> int:
    """c = lcm of the coefficient denominators; c*x_j are algebraic integers."""
    c = 1
    for a in f.coeffs:
        c = lcm(c, Fraction(a).denominator)
    return c


def cauchy_bound(f: UniPoly) -> Fraction:
    """M = 1 + max |a_k| for monic f; every complex root has |x| < M."""
    f = f.monic()
    return 1 + max((abs(Fraction(a)) for a in f.coeffs[:-1]), default=Fraction(0))


def _scaled_integer_poly(f: UniPoly) -> List[int]:
    return f.monic().clear_denominators()[1].integer_coeffs()


def roots_mod_p(f: UniPoly, p: int, small_prime_limit: int = SMALL_PRIME_LIMIT) -> List[int]:
    """All roots of f in F_p, ascending; f must have p-integral coefficients."""
    F = GF(p)
    fp = f.monic().change_ring(F)
    if p < small_prime_limit:
        coeffs = [c.residue for c in fp.coeffs]
        out = []
        for r in range(p):
            acc = 0
            for c in reversed(coeffs):
                acc = (acc * r + c) % p
            if acc == 0:
                out.append(r)
        return out
    z = UniPoly([0, 1], F)
    split = (z.powmod(p, fp) - z).gcd(fp)
    return sorted(_equal_degree_roots(split, p))


def _equal_degree_roots(g: UniPoly, p: int) -> List[int]:
    # Cantor-Zassenhaus for a product of distinct linear factors; shifts a = 1, 2, ...
    if g.degree <= 0:
        return []
    if g.degree == 1:
        return [(-g.coeffs[0]).residue]
    F = g.ring
    a = 1
    while True:
        shifted = UniPoly([a, 1], F)
        h = (shifted.powmod((p - 1) // 2, g) - UniPoly([1], F)).gcd(g)
        if 0 < h.degree < g.degree:
            return _equal_degree_roots(h, p) + _equal_degree_roots(g // h, p)
        a += 1
        if a >= p:
            raise BadPrime(f"could not split a degree-{g.degree} factor mod {p}")


def is_split_prime(f: UniPoly, p: int, small_prime_limit: int = SMALL_PRIME_LIMIT) -> bool:
    if p == 2 or not isprime(p):
        return False
    f = f.monic()
    c = clearing_denominator(f)
    d = discriminant(f)
    if c % p == 0 or d.numerator % p == 0 or d.denominator % p == 0:
        return False
    if p < small_prime_limit:
        return len(roots_mod_p(f, p, small_prime_limit)) == f.degree
    F = GF(p)
    fp = f.change_ring(F)
    if fp.gcd(fp.derivative()).degree > 0:
        return False
    z = UniPoly([0, 1], F)
    return ((z.powmod(p, fp) - z) % fp).is_zero()


def find_split_prime(f: UniPoly, start: int = 3, cap: int = DEFAULT_PRIME_SEARCH_CAP,
                     small_prime_limit: int = SMALL_PRIME_LIMIT) -> int:
    """Smallest odd prime >= start at which f splits into distinct linear factors."""
    t0 = time.perf_counter()
    p = max(start, 3)
    if not isprime(p):
        p = nextprime(p)
    while p <= cap:
        if is_split_prime(f, p, small_prime_limit):
            logger.info(f"split prime {p} found in {time.perf_counter() - t0:.3f}s")
            return p
        p = nextprime(p)
    raise NoSplitPrimeFound(f"no split prime below {cap}", cap=cap)


@dataclass(frozen=True)
class RootSystem:
    """n distinct roots of f in Z/p^e, labeled x_1..x_n."""

    f: UniPoly
    p: int
    e: int
    roots: Tuple[ModRingElem, ...]

    def __post_init__(self):
        ring = ModRing(self.p, self.e)
        roots = tuple(ring(r) for r in self.roots)
        object.__setattr__(self, "roots", roots)
        if len(roots) != self.f.degree:
            raise BadPrime(f"{len(roots)} roots for a degree-{self.f.degree} polynomial")
        if len({r.residue % self.p for r in roots}) != len(roots):
            raise BadPrime(f"roots are not distinct modulo {self.p}")
        for r in roots:
            if self.f(r):
                raise BadPrime(f"{r.residue} is not a root modulo {self.p}^{self.e}")

    @property
    def ring(self) -> ModRing:
        return ModRing(self.p, self.e)

    @property
    def n(self) -> int:
        return len(self.roots)

    def residues(self) -> Tuple[int, ...]:
        return tuple(r.residue % self.p for r in self.roots)

    def relabel(self, images: Sequence[int]) -> "RootSystem":
        """New labeling y_i = x_{images[i]} (0-based images)."""
        return RootSystem(self.f, self.p, self.e, tuple(self.roots[j] for j in images))

    def with_labeling(self, residues: Sequence[int]) -> "RootSystem":
        """Order the roots to match the given residues mod p."""
        lookup = {r.residue % self.p: r for r in self.roots}
        try:
            ordered = tuple(lookup[int(v) % self.p] for v in residues)
        except KeyError as e:
            raise BadPrime(f"{e.args[0]} is not a root of f modulo {self.p}") from e
        return RootSystem(self.f, self.p, self.e, ordered)

    def reduce(self, e: int) -> "RootSystem":
        if e > self.e:
            raise InsufficientPrecision(f"cannot raise precision from {self.e} to {e}")
        ring = ModRing(self.p, e)
        return RootSystem(self.f, self.p, e, tuple(ring(r) for r in self.roots))


def hensel_lift(f: UniPoly, p: int, e: int, small_prime_limit: int = SMALL_PRIME_LIMIT) -> RootSystem:
    """Lift the F_p roots (ascending) to Z/p^e by Newton steps with doubling precision."""
    if e < 1:
        raise ValueError(f"precision exponent must be >= 1, got {e}")
    t0 = time.perf_counter()
    f = f.monic()
    cf = _scaled_integer_poly(f)
    dcf = [k * a for k, a in enumerate(cf)][1:]

    def ev(coeffs, x, m):
        acc = 0
        for a in reversed(coeffs):
            acc = (acc * x + a) % m
        return acc

    lifted = []
    for r in roots_mod_p(f, p, small_prime_limit):
        if ev(dcf, r, p) == 0:
            raise BadPrime(f"derivative vanishes at root {r} modulo {p}")
        k = 1
        while k < e:
            k = min(2 * k, e)
            m = p**k
            r = (r - ev(cf, r, m) * pow(ev(dcf, r, m), -1, m)) % m
        lifted.append(r)
    ring = ModRing(p, e)
    logger.info(f"lifted {len(lifted)} roots to {p}^{e} in {time.perf_counter() - t0:.3f}s")
    return RootSystem(f, p, e, tuple(ring(r) for r in lifted))


def clearing_constant(f: UniPoly, i: int, gamma: int, disc: Fraction, degrees: Sequence[int]) -> int:
    """Delta_i = gamma^(n(n-1)ceil(i/2) + d_i) * d(f)^ceil(i/2)."""
    n = f.degree
    h = ceil_half(i)
    value = (Fraction(gamma) ** (n * (n - 1)) * disc) ** h * Fraction(gamma) ** degrees[i - 1]
    if value.denominator != 1:
        raise ValueError(f"clearing constant for i={i} is not an integer: {value}")
    return value.numerator


def coefficient_bound(f: UniPoly, i: int, gamma: int, M: Fraction, D: Fraction,
                      degrees: Sequence[int], delta: Optional[int] = None) -> Fraction:
    """lambda_i: bound on the absolute values of the coefficients of Delta_i f_i."""
    if M < 1 or D < 1:
        raise ValueError("root bounds M and D must be at least 1")
    n = f.degree
    h = ceil_half(i)
    d = list(degrees[:i])
    exponent = n * (n - 1) * h - sum(d) + i
    product = Fraction(gamma) ** (n * (n - 1) * h + d[-1]) * M ** d[-1] * D ** exponent
    for dj in d:
        product *= max(comb(dj - 1, k - 1) * M ** (k - 1) for k in range(1, dj + 1))
    if delta is None:
        delta = clearing_constant(f, i, gamma, discriminant(f), degrees)
    return max(Fraction(abs(delta)), product)


def precision_exponent(lam: Fraction, p: int) -> int:
    """Smallest e with p^e > ceil(2*lam) - 1."""
    if lam < 1:
        raise ValueError("coefficient bound must be at least 1")
    target = -((-2 * Fraction(lam).numerator) // Fraction(lam).denominator) - 1
    e, power = 1, p
    while power <= target:
        e += 1
        power *= p
    return e


@dataclass(frozen=True)
class BoundData:
    gamma: int
    c: int
    disc: Fraction
    M: Fraction
    D: Fraction
    degrees: Tuple[int, ...]
    deltas: Tuple[int, ...]
    lambdas: Tuple[Fraction, ...]
    exponents: Tuple[int, ...] = field(default=())

    @property
    def e(self) -> int:
        return max(self.exponents)


def bound_data(f: UniPoly, degrees: Sequence[int], p: int) -> BoundData:
    t0 = time.perf_counter()
    f = f.monic()
    c = clearing_denominator(f)
    gamma = c
    disc = discriminant(f)
    M = cauchy_bound(f)
    D = 2 * M
    deltas, lambdas, exponents = [], [], []
    for i in range(1, f.degree + 1):
        delta = clearing_constant(f, i, gamma, disc, degrees)
        lam = coefficient_bound(f, i, gamma, M, D, degrees, delta)
        deltas.append(delta)
        lambdas.append(lam)
        exponents.append(precision_exponent(lam, p))
    logger.info(f"bound data computed in {time.perf_counter() - t0:.3f}s (e = {max(exponents)})")
    return BoundData(gamma, c, disc, M, D, tuple(degrees), tuple(deltas), tuple(lambdas),
                     tuple(exponents))
