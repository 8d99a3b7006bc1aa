"""
Sparse polynomials with exact rational coefficients, graded ideals and the
text parser for `c*x1^a*x2^b` style input
"""
import ast
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import sympy
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from errors import MixedDimension, ParseError

logger = logging.getLogger(__name__)

Exponent = Tuple[int, ...]

TOKEN_PATTERN = re.compile(r"\s+|x\d+|\d+|[+\-*/^()]")
VARIABLE_PATTERN = re.compile(r"x(\d+)")


class Polynomial:
    """Polynomial in x1..xn stored as {exponent vector: nonzero Fraction}"""

    def __init__(self, dim: int, terms: Optional[Mapping[Sequence[int], Fraction]] = None):
        self.dim = dim
        self.terms: Dict[Exponent, Fraction] = {}
        for exponent, coefficient in (terms or {}).items():
            exponent = tuple(int(e) for e in exponent)
            if len(exponent) != dim:
                raise MixedDimension([dim, len(exponent)])
            value = Fraction(coefficient)
            if value != 0:
                self.terms[exponent] = self.terms.get(exponent, Fraction(0)) + value
                if self.terms[exponent] == 0:
                    del self.terms[exponent]

    @classmethod
    def monomial(cls, exponent: Sequence[int], coefficient: Fraction = Fraction(1)) -> "Polynomial":
        return cls(len(exponent), {tuple(exponent): coefficient})

    @classmethod
    def from_row(cls, monomials: Sequence[Exponent], row: Sequence[Fraction]) -> "Polynomial":
        return cls(len(monomials[0]), {m: c for m, c in zip(monomials, row) if c != 0})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def support(self) -> Tuple[Exponent, ...]:
        return tuple(sorted(self.terms))

    def degrees(self) -> set:
        return {sum(e) for e in self.terms}

    @property
    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> Optional[int]:
        degrees = self.degrees()
        return degrees.pop() if len(degrees) == 1 else None

    def coefficient(self, exponent: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exponent), Fraction(0))

    def _check(self, other: "Polynomial") -> None:
        if self.dim != other.dim:
            raise MixedDimension([self.dim, other.dim])

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return Polynomial(self.dim, terms)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.dim, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        terms: Dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return Polynomial(self.dim, terms)

    def scale(self, factor: Fraction) -> "Polynomial":
        return Polynomial(self.dim, {e: c * factor for e, c in self.terms.items()})

    def shift(self, exponent: Sequence[int]) -> "Polynomial":
        """Multiply by the monomial x^exponent"""
        return Polynomial(self.dim, {tuple(a + b for a, b in zip(e, exponent)): c
                                     for e, c in self.terms.items()})

    def row(self, monomials: Sequence[Exponent]) -> List[Fraction]:
        return [self.coefficient(m) for m in monomials]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Polynomial) and self.dim == other.dim and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.dim, tuple(sorted(self.terms.items()))))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for exponent in sorted(self.terms, reverse=True):
            c = self.terms[exponent]
            factors = []
            for i, a in enumerate(exponent, start=1):
                if a == 1:
                    factors.append(f"x{i}")
                elif a > 1:
                    factors.append(f"x{i}^{a}")
            mono = "*".join(factors)
            magnitude = abs(c)
            if not mono:
                body = str(magnitude)
            elif magnitude == 1:
                body = mono
            else:
                body = f"{magnitude}*{mono}"
            sign = "-" if c < 0 else "+"
            if not pieces:
                pieces.append(body if sign == "+" else f"-{body}")
            else:
                pieces.append(f"{sign} {body}")
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"Polynomial({self})"


def _position(text: str, offset: int) -> Tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    column = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, column


def parse_polynomial(text: str, dim: Optional[int] = None) -> Polynomial:
    """
    Parse `x1^2*x2 - 3/2*x2^3`. Variables are x1..xn; n defaults to the
    largest index used. Errors name the line and column; syntax errors are
    located on the source text before sympy rewrites it.
    """
    offset = 0
    max_index = 0
    while offset < len(text):
        match = TOKEN_PATTERN.match(text, offset)
        if match is None:
            line, column = _position(text, offset)
            raise ParseError(f"Unexpected character {text[offset]!r}", line, column)
        variable = VARIABLE_PATTERN.fullmatch(match.group())
        if variable:
            index = int(variable.group(1))
            if index < 1 or (dim is not None and index > dim):
                line, column = _position(text, offset)
                raise ParseError(f"Variable {match.group()} outside x1..x{dim}", line, column)
            max_index = max(max_index, index)
        offset = match.end()
    flat = text.replace("\n", " ")
    lead = len(flat) - len(flat.lstrip())
    try:
        ast.parse(flat[lead:], mode='eval')
    except SyntaxError as e:
        at = lead + max((e.offset or 1) - 1, 0)
        line, column = _position(text, min(at, len(text)))
        raise ParseError(f"Not a polynomial: {e.msg}", line, column) from e
    n = dim if dim is not None else max(max_index, 1)
    symbols = sympy.symbols(f"x1:{n + 1}")
    local = {str(s): s for s in symbols}
    try:
        expr = parse_expr(flat, local_dict=local,
                          transformations=standard_transformations + (convert_xor,))
        poly = sympy.Poly(expr, *symbols, domain='QQ')
    except Exception as e:
        raise ParseError(f"Not a polynomial: {e}", 1, 1) from e
    terms = {}
    for exponent, coefficient in poly.terms():
        rational = sympy.Rational(coefficient)
        terms[tuple(exponent)] = Fraction(int(rational.p), int(rational.q))
    return Polynomial(n, terms)


@dataclass(frozen=True)
class GradedIdeal:
    """Ideal generated by nonzero homogeneous polynomials"""
    dim: int
    generators: Tuple[Polynomial, ...]

    @classmethod
    def generated_by(cls, generators: Sequence[Polynomial], dim: Optional[int] = None) -> "GradedIdeal":
        dims = {g.dim for g in generators} | ({dim} if dim is not None else set())
        if len(dims) != 1:
            raise MixedDimension(sorted(dims))
        for g in generators:
            if g.is_zero:
                raise ValueError("Ideal generators must be nonzero")
            if not g.is_homogeneous:
                raise ValueError(f"Generator {g} is not homogeneous")
        return cls(dims.pop(), tuple(generators))

    @classmethod
    def parse(cls, texts: Sequence[str], dim: Optional[int] = None) -> "GradedIdeal":
        if dim is None:
            dim = max(parse_polynomial(t).dim for t in texts)
        return cls.generated_by([parse_polynomial(t, dim) for t in texts], dim)

    def to_dict(self) -> Dict:
        return {'dim': self.dim, 'generators': [str(g) for g in self.generators]}
