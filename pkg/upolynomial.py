"""
Sparse polynomials over Q in the commuting variables u_alpha (alpha Lyndon).
"""

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple

from combinatorics import Composition, format_rational
from errors import MissingVariable

# a monomial is a sorted tuple of (variable, exponent) pairs
Monomial = Tuple[Tuple[Composition, int], ...]


def var_name(alpha: Composition) -> str:
    """u1, u12, u112 ...; parts joined by '_' once any part has two digits."""
    if all(p < 10 for p in alpha):
        return "u" + "".join(str(p) for p in alpha)
    return "u" + "_".join(str(p) for p in alpha)


def var_key(alpha: Composition) -> Tuple[int, Composition]:
    """Variables order by weight, then lex: u3 after u12."""
    return (sum(alpha), tuple(alpha))


def _normalize(factors: Mapping[Composition, int]) -> Monomial:
    return tuple(sorted(((v, e) for v, e in factors.items() if e), key=lambda ve: var_key(ve[0])))


def _monomial_product(a: Monomial, b: Monomial) -> Monomial:
    merged: Dict[Composition, int] = dict(a)
    for v, e in b:
        merged[v] = merged.get(v, 0) + e
    return _normalize(merged)


def _degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def _sort_key(m: Monomial):
    expanded = [var_key(v) for v, e in m for _ in range(e)]
    return (-_degree(m), expanded)


class UPolynomial:
    """Immutable polynomial; zero coefficients are never stored."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Fraction] = None):
        clean = {}
        for mono, coeff in (terms or {}).items():
            coeff = Fraction(coeff)
            if coeff:
                clean[mono] = coeff
        self.terms: Dict[Monomial, Fraction] = clean

    @classmethod
    def constant(cls, value) -> "UPolynomial":
        return cls({(): Fraction(value)})

    @classmethod
    def variable(cls, alpha: Composition) -> "UPolynomial":
        return cls({((tuple(alpha), 1),): Fraction(1)})

    @classmethod
    def monomial(cls, variables: Iterable[Composition], coeff=1) -> "UPolynomial":
        counts: Dict[Composition, int] = {}
        for v in variables:
            counts[tuple(v)] = counts.get(tuple(v), 0) + 1
        return cls({_normalize(counts): Fraction(coeff)})

    def is_zero(self) -> bool:
        return not self.terms

    def variables(self) -> set:
        return {v for mono in self.terms for v, _ in mono}

    def __add__(self, other) -> "UPolynomial":
        other = _coerce(other)
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            terms[mono] = terms.get(mono, Fraction(0)) + c
        return UPolynomial(terms)

    __radd__ = __add__

    def __neg__(self) -> "UPolynomial":
        return UPolynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "UPolynomial":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "UPolynomial":
        return _coerce(other) - self

    def scale(self, factor) -> "UPolynomial":
        factor = Fraction(factor)
        return UPolynomial({m: c * factor for m, c in self.terms.items()})

    def __mul__(self, other) -> "UPolynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        terms: Dict[Monomial, Fraction] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = _monomial_product(ma, mb)
                terms[m] = terms.get(m, Fraction(0)) + ca * cb
        return UPolynomial(terms)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "UPolynomial":
        return self.scale(Fraction(1) / Fraction(other))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = UPolynomial.constant(other)
        return isinstance(other, UPolynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def evaluate(self, assignment: Mapping[Composition, Fraction]) -> Fraction:
        total = Fraction(0)
        for mono, coeff in self.terms.items():
            value = coeff
            for v, e in mono:
                if v not in assignment:
                    raise MissingVariable(var_name(v))
                value *= Fraction(assignment[v]) ** e
            total += value
        return total

    def ordered_terms(self):
        return sorted(self.terms.items(), key=lambda mc: _sort_key(mc[0]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for mono, coeff in self.ordered_terms():
            factors = "*".join(var_name(v) + (f"^{e}" if e > 1 else "") for v, e in mono)
            mag = abs(coeff)
            if not factors:
                body = format_rational(mag)
            elif mag == 1:
                body = factors
            else:
                body = f"{format_rational(mag)}*{factors}"
            if not pieces:
                pieces.append(("-" if coeff < 0 else "") + body)
            else:
                pieces.append(("- " if coeff < 0 else "+ ") + body)
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"UPolynomial({self})"


def _coerce(value) -> UPolynomial:
    if isinstance(value, UPolynomial):
        return value
    return UPolynomial.constant(value)


ZERO = UPolynomial()
ONE = UPolynomial.constant(1)
