"""Dense univariate polynomials over an exact ring."""

from fractions import Fraction
from math import lcm
from typing import List, Sequence, Tuple

from .errors import RingMismatch
from .exactring import QQ, Ring


class UniPoly:
    """``coeffs[k]`` is the coefficient of Z^k; trailing zeros are stripped."""

    __slots__ = ("ring", "coeffs", "var")

    def __init__(self, coeffs: Sequence, ring: Ring = QQ, var: str = "Z"):
        cs = [ring(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.ring = ring
        self.coeffs = tuple(cs)
        self.var = var

    @classmethod
    def from_roots(cls, roots, ring: Ring, var: str = "Z") -> "UniPoly":
        result = cls([1], ring, var)
        for r in roots:
            result = result * cls([-r, 1], ring, var)
        return result

    @classmethod
    def monomial(cls, k: int, ring: Ring = QQ, coeff=1, var: str = "Z"):
        return cls([0] * k + [coeff], ring, var)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.ring.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __getitem__(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.ring.zero

    def _check(self, other: "UniPoly"):
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def __add__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly([other], self.ring, self.var)
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self[k] + other[k] for k in range(n)], self.ring, self.var)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.ring, self.var)

    def __sub__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly([other], self.ring, self.var)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            return UniPoly([c * other for c in self.coeffs], self.ring, self.var)
        self._check(other)
        if self.is_zero() or other.is_zero():
            return UniPoly([], self.ring, self.var)
        out = [self.ring.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(out, self.ring, self.var)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ring, self.coeffs))

    def divmod(self, divisor: "UniPoly") -> Tuple["UniPoly", "UniPoly"]:
        """Division by a monic divisor, or by any nonzero divisor over a field."""
        self._check(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        inv_lc = self.ring.one if divisor.is_monic() else self.ring.inverse(divisor.lc)
        rem = list(self.coeffs)
        dq = divisor.degree
        quot = [self.ring.zero] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if not c:
                continue
            q = c * inv_lc
            quot[k - dq] = q
            for j, d in enumerate(divisor.coeffs):
                rem[k - dq + j] = rem[k - dq + j] - q * d
        return UniPoly(quot, self.ring, self.var), UniPoly(rem[:dq], self.ring, self.var)

    def __mod__(self, divisor: "UniPoly") -> "UniPoly":
        return self.divmod(divisor)[1]

    def __floordiv__(self, divisor: "UniPoly") -> "UniPoly":
        return self.divmod(divisor)[0]

    def monic(self) -> "UniPoly":
        if self.is_zero() or self.is_monic():
            return self
        return self * self.ring.inverse(self.lc)

    def derivative(self) -> "UniPoly":
        return UniPoly(
            [k * c for k, c in enumerate(self.coeffs)][1:], self.ring, self.var
        )

    def __call__(self, x):
        acc = self.ring.zero if not isinstance(x, UniPoly) else UniPoly([], self.ring)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def change_ring(self, ring: Ring) -> "UniPoly":
        return UniPoly([ring(c) for c in self.coeffs], ring, self.var)

    def powmod(self, k: int, modulus: "UniPoly") -> "UniPoly":
        result = UniPoly([1], self.ring, self.var)
        base = self % modulus
        while k:
            if k & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            k >>= 1
        return result

    def gcd(self, other: "UniPoly") -> "UniPoly":
        """Monic gcd; only meaningful over a field."""
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def clear_denominators(self) -> Tuple[int, "UniPoly"]:
        """(c, c*self) with c the lcm of the coefficient denominators."""
        c = 1
        for a in self.coeffs:
            c = lcm(c, Fraction(a).denominator)
        return c, UniPoly([Fraction(a) * c for a in self.coeffs], self.ring, self.var)

    def integer_coeffs(self) -> List[int]:
        out = []
        for a in self.coeffs:
            a = Fraction(a)
            if a.denominator != 1:
                raise RingMismatch(f"coefficient {a} is not an integer")
            out.append(a.numerator)
        return out

    def __str__(self):
        from .polytext import format_unipoly

        return format_unipoly(self)

    def __repr__(self):
        return f"UniPoly({str(self)!r}, {self.ring.name})"


def bareiss_determinant(matrix: List[List[int]]) -> int:
    """Fraction-free determinant of an integer matrix."""
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def sylvester_matrix(a: Sequence[int], b: Sequence[int]) -> List[List[int]]:
    """Sylvester matrix from low-to-high coefficient lists."""
    da, db = len(a) - 1, len(b) - 1
    size = da + db
    rows = []
    ha, hb = list(reversed(a)), list(reversed(b))
    for i in range(db):
        rows.append([0] * i + ha + [0] * (size - da - 1 - i))
    for i in range(da):
        rows.append([0] * i + hb + [0] * (size - db - 1 - i))
    return rows


def resultant(a: UniPoly, b: UniPoly) -> Fraction:
    """Res(a, b) over QQ by a fraction-free Sylvester determinant."""
    ca, ia = a.clear_denominators()
    cb, ib = b.clear_denominators()
    if a.degree < 0 or b.degree < 0:
        return Fraction(0)
    if a.degree == 0:
        return Fraction(a.lc) ** b.degree
    if b.degree == 0:
        return Fraction(b.lc) ** a.degree
    det = bareiss_determinant(sylvester_matrix(ia.integer_coeffs(), ib.integer_coeffs()))
    return Fraction(det, ca**b.degree * cb**a.degree)
