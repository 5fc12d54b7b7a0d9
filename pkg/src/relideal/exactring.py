"""
Exact coefficient rings.

Integers are Python ``int``, rationals are ``fractions.Fraction`` and residues
modulo p^e are :class:`ModRingElem`. A ring descriptor (``ZZ``, ``QQ`` or a
:class:`ModRing`) coerces values and supplies zero, one and inverses, so the
polynomial code is written once against ordinary operators.
"""

from fractions import Fraction
from numbers import Rational as _RationalABC

from sympy import isprime

from .errors import NotAUnit, RingMismatch


class Ring:
    name = "ring"
    is_field = False

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, value):
        raise NotImplementedError

    def inverse(self, a):
        raise NotImplementedError

    def divide(self, a, b):
        return a * self.inverse(b)

    def __repr__(self):
        return self.name


class IntegerRing(Ring):
    name = "ZZ"

    def __call__(self, value):
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise RingMismatch(f"{value} is not an integer")
            return value.numerator
        return int(value)

    def inverse(self, a):
        if a in (1, -1):
            return a
        raise NotAUnit(f"{a} is not a unit in ZZ")

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash("ZZ")


class RationalField(Ring):
    name = "QQ"
    is_field = True

    def __call__(self, value):
        if isinstance(value, ModRingElem):
            raise RingMismatch("cannot coerce a residue into QQ")
        return Fraction(value)

    def inverse(self, a):
        if a == 0:
            raise NotAUnit("0 has no inverse in QQ")
        return 1 / Fraction(a)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


ZZ = IntegerRing()
QQ = RationalField()


class ModRing(Ring):
    """The ring Z/p^e for an odd prime p; a field when e == 1."""

    def __init__(self, p: int, e: int = 1):
        if p == 2 or not isprime(p):
            raise ValueError(f"modulus base must be an odd prime, got {p}")
        if e < 1:
            raise ValueError(f"exponent must be at least 1, got {e}")
        self.p = p
        self.e = e
        self.modulus = p**e
        self.is_field = e == 1
        self.name = f"GF({p})" if e == 1 else f"ZZ/{p}^{e}"

    def __call__(self, value):
        if isinstance(value, ModRingElem):
            if value.ring.p != self.p or value.ring.e < self.e:
                raise RingMismatch(f"cannot map {value.ring} into {self}")
            return ModRingElem(value.residue, self)
        if isinstance(value, int):
            return ModRingElem(value, self)
        if isinstance(value, _RationalABC):
            num, den = value.numerator, value.denominator
            if den % self.p == 0:
                raise NotAUnit(f"denominator of {value} is divisible by {self.p}")
            return ModRingElem(num * pow(den, -1, self.modulus), self)
        raise RingMismatch(f"cannot coerce {value!r} into {self}")

    def inverse(self, a):
        return mod_inverse(self(a))

    def reduce(self, e: int) -> "ModRing":
        return ModRing(self.p, e)

    def __eq__(self, other):
        return isinstance(other, ModRing) and other.modulus == self.modulus

    def __hash__(self):
        return hash(("ModRing", self.modulus))


def GF(p: int) -> ModRing:
    return ModRing(p, 1)


class ModRingElem:
    """Residue in [0, p^e); immutable."""

    __slots__ = ("residue", "ring")

    def __init__(self, residue: int, ring: ModRing):
        self.residue = residue % ring.modulus
        self.ring = ring

    def _coerce(self, other):
        if isinstance(other, ModRingElem):
            if other.ring.modulus != self.ring.modulus:
                raise RingMismatch(f"{other.ring} vs {self.ring}")
            return other.residue
        if isinstance(other, int):
            return other
        if isinstance(other, _RationalABC):
            return self.ring(other).residue
        return NotImplemented

    def __add__(self, other):
        r = self._coerce(other)
        if r is NotImplemented:
            return r
        return ModRingElem(self.residue + r, self.ring)

    __radd__ = __add__

    def __sub__(self, other):
        r = self._coerce(other)
        if r is NotImplemented:
            return r
        return ModRingElem(self.residue - r, self.ring)

    def __rsub__(self, other):
        r = self._coerce(other)
        if r is NotImplemented:
            return r
        return ModRingElem(r - self.residue, self.ring)

    def __mul__(self, other):
        r = self._coerce(other)
        if r is NotImplemented:
            return r
        return ModRingElem(self.residue * r, self.ring)

    __rmul__ = __mul__

    def __neg__(self):
        return ModRingElem(-self.residue, self.ring)

    def __truediv__(self, other):
        r = self._coerce(other)
        if r is NotImplemented:
            return r
        return self * mod_inverse(ModRingElem(r, self.ring))

    def __rtruediv__(self, other):
        r = self._coerce(other)
        if r is NotImplemented:
            return r
        return ModRingElem(r, self.ring) * mod_inverse(self)

    def __pow__(self, k: int):
        if k < 0:
            return mod_inverse(self) ** (-k)
        return ModRingElem(pow(self.residue, k, self.ring.modulus), self.ring)

    def __eq__(self, other):
        if isinstance(other, ModRingElem):
            return (
                self.ring.modulus == other.ring.modulus
                and self.residue == other.residue
            )
        if isinstance(other, int):
            return (self.residue - other) % self.ring.modulus == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.residue, self.ring.modulus))

    def __bool__(self):
        return self.residue != 0

    def __int__(self):
        return self.residue

    def __repr__(self):
        return f"ModRingElem({self.residue}, {self.ring.name})"

    def __str__(self):
        return str(self.residue)


def symmetric_lift(x: ModRingElem) -> int:
    """The representative of ``x`` in [-(p^e-1)/2, (p^e-1)/2]."""
    m = x.ring.modulus
    half = (m - 1) // 2
    r = x.residue
    return r - m if r > half else r


def mod_inverse(x: ModRingElem) -> ModRingElem:
    if x.residue % x.ring.p == 0:
        raise NotAUnit(
            f"{x.residue} is not invertible modulo {x.ring.p}^{x.ring.e}",
            residue=x.residue,
        )
    return ModRingElem(pow(x.residue, -1, x.ring.modulus), x.ring)


def ring_of(value) -> Ring:
    """Best-effort ring of a bare coefficient."""
    if isinstance(value, ModRingElem):
        return value.ring
    if isinstance(value, Fraction):
        return QQ
    if isinstance(value, int):
        return ZZ
    raise RingMismatch(f"unsupported coefficient {value!r}")
