"""
Sparse multivariate polynomials in T1..Tn over an exact ring, lex order with
T1 < ... < Tn, and reduction modulo a triangular set.
"""

from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .errors import ArityMismatch, InvalidBasis, RingMismatch
from .exactring import QQ, Ring
from .unipoly import UniPoly

Monomial = Tuple[int, ...]


def lex_key(m: Monomial) -> Monomial:
    # Tn is the most significant variable.
    return m[::-1]


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def unit_monomial(nvars: int, i: int, k: int = 1) -> Monomial:
    """T_{i+1}^k as an exponent vector (``i`` is 0-based)."""
    m = [0] * nvars
    m[i] = k
    return tuple(m)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


class MultiPoly:
    __slots__ = ("ring", "nvars", "terms")

    def __init__(self, ring: Ring, nvars: int, terms: Optional[Dict] = None):
        self.ring = ring
        self.nvars = nvars
        clean = {}
        for m, c in (terms or {}).items():
            m = tuple(m)
            if len(m) != nvars:
                raise ArityMismatch(f"monomial {m} in a {nvars}-variable ring")
            c = ring(c)
            if c:
                clean[m] = c
        self.terms = clean

    @classmethod
    def _raw(cls, ring: Ring, nvars: int, terms: Dict) -> "MultiPoly":
        p = cls.__new__(cls)
        p.ring = ring
        p.nvars = nvars
        p.terms = terms
        return p

    @classmethod
    def zero(cls, ring: Ring, nvars: int) -> "MultiPoly":
        return cls._raw(ring, nvars, {})

    @classmethod
    def constant(cls, ring: Ring, nvars: int, c) -> "MultiPoly":
        return cls(ring, nvars, {(0,) * nvars: c})

    @classmethod
    def one(cls, ring: Ring, nvars: int) -> "MultiPoly":
        return cls.constant(ring, nvars, 1)

    @classmethod
    def variable(cls, ring: Ring, nvars: int, i: int) -> "MultiPoly":
        """T_i, 1-based."""
        return cls._raw(ring, nvars, {unit_monomial(nvars, i - 1): ring.one})

    @classmethod
    def monomial(cls, ring: Ring, m: Monomial, c=1) -> "MultiPoly":
        return cls(ring, len(m), {m: c})

    @classmethod
    def from_univariate(cls, u: UniPoly, i: int, nvars: int) -> "MultiPoly":
        """u(T_i), 1-based ``i``."""
        return cls._raw(
            u.ring,
            nvars,
            {unit_monomial(nvars, i - 1, k): c for k, c in enumerate(u.coeffs) if c},
        )

    def _check(self, other: "MultiPoly"):
        if other.nvars != self.nvars:
            raise ArityMismatch(f"{self.nvars} vs {other.nvars} variables")
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def _lift(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return MultiPoly.constant(self.ring, self.nvars, other)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def __add__(self, other) -> "MultiPoly":
        other = self._lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            s = c if s is None else s + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return MultiPoly._raw(self.ring, self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw(self.ring, self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._lift(other) - self

    def scale(self, c) -> "MultiPoly":
        c = self.ring(c)
        if not c:
            return MultiPoly.zero(self.ring, self.nvars)
        return MultiPoly._raw(self.ring, self.nvars, {m: a * c for m, a in self.terms.items()})

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        self._check(other)
        out: Dict[Monomial, object] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                s = out.get(m)
                out[m] = c1 * c2 if s is None else s + c1 * c2
        return MultiPoly._raw(self.ring, self.nvars, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            raise ValueError("negative exponent")
        result = MultiPoly.one(self.ring, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            if self.is_constant():
                return self.coefficient((0,) * self.nvars) == other
            return False
        return (
            self.nvars == other.nvars
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def coefficient(self, m: Monomial):
        return self.terms.get(tuple(m), self.ring.zero)

    def degree(self, i: int) -> int:
        """Degree in T_i (1-based); -1 for the zero polynomial."""
        return max((m[i - 1] for m in self.terms), default=-1)

    def variables(self) -> List[int]:
        return [i + 1 for i in range(self.nvars) if any(m[i] for m in self.terms)]

    def main_variable(self) -> int:
        used = self.variables()
        return used[-1] if used else 0

    def sorted_terms(self, descending: bool = True) -> List[Tuple[Monomial, object]]:
        return sorted(self.terms.items(), key=lambda t: lex_key(t[0]), reverse=descending)

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=lex_key)

    def leading_coefficient(self):
        return self.terms[self.leading_monomial()]

    def support(self) -> List[Monomial]:
        return sorted(self.terms, key=lex_key)

    def evaluate(self, point: Sequence):
        if len(point) != self.nvars:
            raise ArityMismatch(f"point of length {len(point)} for {self.nvars} variables")
        powers: Dict[Tuple[int, int], object] = {}
        total = None
        for m, c in self.terms.items():
            value = c
            for i, k in enumerate(m):
                if k:
                    key = (i, k)
                    if key not in powers:
                        powers[key] = point[i] ** k
                    value = value * powers[key]
            total = value if total is None else total + value
        return self.ring.zero if total is None else total

    def change_ring(self, ring: Ring) -> "MultiPoly":
        return MultiPoly(ring, self.nvars, {m: ring(c) for m, c in self.terms.items()})

    def map_coefficients(self, fn) -> "MultiPoly":
        mapped = ((m, fn(c)) for m, c in self.terms.items())
        return MultiPoly._raw(self.ring, self.nvars, {m: c for m, c in mapped if c})

    def resize(self, nvars: int) -> "MultiPoly":
        """Change the ambient arity; dropped variables must be unused."""
        out = {}
        for m, c in self.terms.items():
            if nvars < self.nvars and any(m[nvars:]):
                raise ArityMismatch(f"polynomial uses variables beyond T{nvars}")
            out[m[:nvars] + (0,) * max(nvars - self.nvars, 0)] = c
        return MultiPoly._raw(self.ring, nvars, out)

    def coefficients_in(self, i: int) -> Dict[int, "MultiPoly"]:
        """View as a polynomial in T_i with coefficients free of T_i."""
        parts: Dict[int, Dict] = {}
        for m, c in self.terms.items():
            k = m[i - 1]
            rest = m[: i - 1] + (0,) + m[i:]
            parts.setdefault(k, {})[rest] = c
        return {k: MultiPoly._raw(self.ring, self.nvars, t) for k, t in parts.items()}

    def __str__(self):
        from .polytext import format_poly

        return format_poly(self)

    def __repr__(self):
        return f"MultiPoly({str(self)!r}, {self.ring.name}, n={self.nvars})"


class OrderIdeal:
    """A finite downward-closed set of monomials."""

    def __init__(self, nvars: int, monomials: Iterable[Monomial]):
        self.nvars = nvars
        self._set = frozenset(tuple(m) for m in monomials)

    @classmethod
    def staircase(cls, degrees: Sequence[int]) -> "OrderIdeal":
        mons: List[Monomial] = [()]
        for d in degrees:
            mons = [m + (k,) for m in mons for k in range(d)]
        return cls(len(degrees), mons)

    def __contains__(self, m) -> bool:
        return tuple(m) in self._set

    def __len__(self):
        return len(self._set)

    def __iter__(self) -> Iterator[Monomial]:
        return iter(sorted(self._set, key=lex_key))

    def __eq__(self, other):
        return isinstance(other, OrderIdeal) and self._set == other._set

    def __hash__(self):
        return hash(self._set)

    def is_downward_closed(self) -> bool:
        for m in self._set:
            for i, k in enumerate(m):
                if k and m[:i] + (k - 1,) + m[i + 1:] not in self._set:
                    return False
        return True

    def corners(self) -> List[Monomial]:
        """Minimal monomials outside the ideal, ascending lex."""
        border = set()
        for m in self._set:
            for i in range(self.nvars):
                t = m[:i] + (m[i] + 1,) + m[i + 1:]
                if t not in self._set:
                    border.add(t)
        minimal = [
            t for t in border if not any(s != t and divides(s, t) for s in border)
        ]
        return sorted(minimal, key=lex_key)


@dataclass(frozen=True)
class TriangularBasis:
    """
    Monic triangular set f_1(T1), f_2(T1, T2), ...; may be partial (fewer
    polynomials than variables) while a basis is being built.
    """

    polys: Tuple[MultiPoly, ...]

    def __post_init__(self):
        polys = tuple(self.polys)
        object.__setattr__(self, "polys", polys)
        if not polys:
            raise InvalidBasis("empty triangular set")
        nvars = polys[0].nvars
        if len(polys) > nvars:
            raise InvalidBasis(f"{len(polys)} polynomials in {nvars} variables")
        degrees = []
        for idx, g in enumerate(polys):
            i = idx + 1
            if g.nvars != nvars or g.ring != polys[0].ring:
                raise InvalidBasis(f"f{i} lives in a different polynomial ring")
            if any(any(m[i:]) for m in g.terms):
                raise InvalidBasis(f"f{i} involves variables beyond T{i}")
            d = g.degree(i)
            if d < 1:
                raise InvalidBasis(f"f{i} does not involve T{i}")
            top = {m: c for m, c in g.terms.items() if m[idx] == d}
            if top != {unit_monomial(nvars, idx, d): g.ring.one}:
                raise InvalidBasis(f"f{i} is not monic in T{i}")
            for j in range(idx):
                if g.degree(j + 1) >= degrees[j]:
                    raise InvalidBasis(f"f{i} has degree >= d{j + 1} in T{j + 1}")
            degrees.append(d)
        object.__setattr__(self, "_degrees", tuple(degrees))
        tails = []
        for idx, g in enumerate(polys):
            lead = unit_monomial(nvars, idx, degrees[idx])
            tails.append([(m, c) for m, c in g.terms.items() if m != lead])
        object.__setattr__(self, "_tails", tuple(tails))

    @property
    def nvars(self) -> int:
        return self.polys[0].nvars

    @property
    def ring(self) -> Ring:
        return self.polys[0].ring

    @property
    def degrees(self) -> Tuple[int, ...]:
        return self._degrees

    @property
    def is_complete(self) -> bool:
        return len(self.polys) == self.nvars

    def __len__(self):
        return len(self.polys)

    def __getitem__(self, i: int) -> MultiPoly:
        """f_i, 1-based."""
        return self.polys[i - 1]

    def dimension(self) -> int:
        out = 1
        for d in self.degrees:
            out *= d
        return out

    def order_ideal(self) -> OrderIdeal:
        return OrderIdeal.staircase(self.degrees + (1,) * (self.nvars - len(self)))

    def change_ring(self, ring: Ring) -> "TriangularBasis":
        return TriangularBasis(tuple(g.change_ring(ring) for g in self.polys))

    def truncate(self, k: int) -> "TriangularBasis":
        return TriangularBasis(self.polys[:k])

    def _reduce_once(self, terms: Dict, idx: int) -> bool:
        d = self._degrees[idx]
        tail = self._tails[idx]
        changed = False
        while True:
            k = max((m[idx] for m in terms), default=-1)
            if k < d:
                return changed
            changed = True
            top = [(m, terms.pop(m)) for m in [m for m in terms if m[idx] == k]]
            for m, c in top:
                base = m[:idx] + (k - d,) + m[idx + 1:]
                for t, tc in tail:
                    key = mono_mul(base, t)
                    s = terms.get(key)
                    s = -c * tc if s is None else s - c * tc
                    if s:
                        terms[key] = s
                    else:
                        terms.pop(key, None)

    def normal_form(self, P: MultiPoly, order: Optional[Sequence[int]] = None) -> MultiPoly:
        """Remainder of P modulo the set, supported on the order ideal."""
        if P.nvars != self.nvars:
            if P.nvars > self.nvars:
                raise ArityMismatch(f"{P.nvars} variables against a basis in {self.nvars}")
            P = P.resize(self.nvars)
        if P.ring != self.ring:
            P = P.change_ring(self.ring)
        terms = dict(P.terms)
        if order is None:
            for idx in range(len(self.polys) - 1, -1, -1):
                self._reduce_once(terms, idx)
        else:
            # 1-based indices; repeat until no term is reducible.
            while True:
                changed = False
                for i in order:
                    changed |= self._reduce_once(terms, i - 1)
                if not changed:
                    break
        return MultiPoly._raw(self.ring, self.nvars, terms)

    def contains(self, P: MultiPoly) -> bool:
        """Ideal membership: P reduces to zero."""
        return self.normal_form(P).is_zero()

    def reduce_univariate(self, u: UniPoly, i: int) -> MultiPoly:
        """NF(u(T_i)) by Horner's rule with reduction after each step."""
        t = MultiPoly.variable(self.ring, self.nvars, i)
        acc = MultiPoly.zero(self.ring, self.nvars)
        for c in reversed(u.coeffs):
            acc = self.normal_form(acc * t + self.ring(c))
        return acc


def normal_form(P: MultiPoly, basis: TriangularBasis, order: Optional[Sequence[int]] = None) -> MultiPoly:
    return basis.normal_form(P, order)


def poly_arith(op: str, a: MultiPoly, b: MultiPoly) -> MultiPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")
