"""
Text format for polynomials: ``T2^4 + 2/13*T1^4*T2^3 - T1 + 5``.

Parsing goes through sympy's expression parser restricted to the allowed
variable names; printing lists terms in descending lex order (T1 < ... < Tn).
"""

import re
from fractions import Fraction
from typing import Optional

from sympy import Poly, Symbol
from sympy.parsing.sympy_parser import (
    convert_xor,
    parse_expr,
    standard_transformations,
)

from .errors import PolynomialParseError
from .exactring import QQ, ModRingElem, Ring
from .multipoly import MultiPoly
from .unipoly import UniPoly

_TRANSFORMS = standard_transformations + (convert_xor,)
_ALLOWED = re.compile(r"^[A-Za-z0-9_\s+\-*/^()]*$")
_IDENT = re.compile(r"[A-Za-z_]\w*")
_TVAR = re.compile(r"^T([1-9]\d*)$")


def _to_sympy(text: str, names):
    local = {name: Symbol(name) for name in names}
    try:
        return parse_expr(text, local_dict=local, transformations=_TRANSFORMS), local
    except Exception as e:
        raise PolynomialParseError(f"cannot parse {text!r}: {e}") from e


def _coefficients(expr, gens, text):
    try:
        poly = Poly(expr, *gens, domain="QQ")
    except Exception as e:
        raise PolynomialParseError(f"{text!r} is not a polynomial: {e}") from e
    return {
        tuple(m): Fraction(int(c.p), int(c.q))
        for m, c in poly.as_dict(native=False).items()
    }


def _screen(text: str):
    if not text or not text.strip():
        raise PolynomialParseError("empty polynomial text")
    if not _ALLOWED.match(text):
        raise PolynomialParseError(f"unexpected characters in {text!r}")
    return set(_IDENT.findall(text))


def parse_poly(text: str, nvars: Optional[int] = None, ring: Ring = QQ) -> MultiPoly:
    """Parse a polynomial in T1..Tn."""
    idents = _screen(text)
    indices = []
    for name in idents:
        match = _TVAR.match(name)
        if not match:
            raise PolynomialParseError(f"unknown symbol {name!r} in {text!r}")
        indices.append(int(match.group(1)))
    top = max(indices, default=1)
    if nvars is None:
        nvars = top
    elif top > nvars:
        raise PolynomialParseError(f"T{top} used in a {nvars}-variable context")
    names = [f"T{i}" for i in range(1, nvars + 1)]
    expr, local = _to_sympy(text, names)
    if not expr.free_symbols <= set(local.values()):
        raise PolynomialParseError(f"unexpected symbols in {text!r}")
    terms = _coefficients(expr, [local[n] for n in names], text)
    poly = MultiPoly(QQ, nvars, terms)
    return poly if ring == QQ else poly.change_ring(ring)


def parse_unipoly(text: str) -> UniPoly:
    """Parse a univariate polynomial over QQ in any single variable name."""
    idents = sorted(_screen(text))
    if len(idents) > 1:
        raise PolynomialParseError(f"more than one variable in {text!r}: {idents}")
    if idents and idents[0].startswith("_"):
        raise PolynomialParseError(f"invalid variable name {idents[0]!r}")
    var = idents[0] if idents else "Z"
    expr, local = _to_sympy(text, [var])
    if not expr.free_symbols <= set(local.values()):
        raise PolynomialParseError(f"unexpected symbols in {text!r}")
    terms = _coefficients(expr, [local[var]], text)
    degree = max((m[0] for m in terms), default=0)
    coeffs = [terms.get((k,), 0) for k in range(degree + 1)]
    return UniPoly(coeffs, QQ, var="Z")


def format_coefficient(c) -> str:
    if isinstance(c, ModRingElem):
        return str(c.residue)
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _split_sign(c):
    if isinstance(c, ModRingElem):
        return False, c
    return (c < 0), abs(c)


def _format_term(coeff, factors) -> str:
    if not factors:
        return format_coefficient(coeff)
    mono = "*".join(factors)
    if coeff == 1:
        return mono
    return f"{format_coefficient(coeff)}*{mono}"


def _join(parts) -> str:
    if not parts:
        return "0"
    out = []
    for k, (negative, body) in enumerate(parts):
        if k == 0:
            out.append(f"-{body}" if negative else body)
        else:
            out.append(f" - {body}" if negative else f" + {body}")
    return "".join(out)


def format_poly(P: MultiPoly, names=None) -> str:
    names = names or [f"T{i}" for i in range(1, P.nvars + 1)]
    parts = []
    for m, c in P.sorted_terms():
        factors = [
            names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(m) if k
        ]
        negative, magnitude = _split_sign(c)
        parts.append((negative, _format_term(magnitude, factors)))
    return _join(parts)


def format_unipoly(u: UniPoly, var: Optional[str] = None) -> str:
    var = var or u.var
    parts = []
    for k in range(u.degree, -1, -1):
        c = u.coeffs[k]
        if not c:
            continue
        factors = [] if k == 0 else [var if k == 1 else f"{var}^{k}"]
        negative, magnitude = _split_sign(c)
        parts.append((negative, _format_term(magnitude, factors)))
    return _join(parts)
