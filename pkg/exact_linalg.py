"""
Exact linear algebra over Q via sympy's DomainMatrix.

Matrices cross the module boundary as lists of lists of Fraction; the
DomainMatrix form is internal.
"""

from fractions import Fraction
from typing import List, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

Rows = List[List[Fraction]]


def _qq(value) -> "QQ.dtype":
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def _frac(value) -> Fraction:
    rational = QQ.to_sympy(value) if not hasattr(value, "p") else value
    return Fraction(int(rational.p), int(rational.q))


def to_domain(rows: Sequence[Sequence[Fraction]], ncols: int = None) -> DomainMatrix:
    nrows = len(rows)
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    return DomainMatrix([[_qq(x) for x in row] for row in rows], (nrows, ncols), QQ)


def from_domain(matrix: DomainMatrix) -> Rows:
    plain = matrix.to_Matrix()
    nrows, ncols = matrix.shape
    return [[_frac(plain[i, j]) for j in range(ncols)] for i in range(nrows)]


def identity(size: int) -> Rows:
    return [[Fraction(int(i == j)) for j in range(size)] for i in range(size)]


def transpose(rows: Rows) -> Rows:
    return [list(col) for col in zip(*rows)] if rows else []


def matmul(a: Rows, b: Rows) -> Rows:
    if not a or not b:
        return []
    return from_domain(to_domain(a).matmul(to_domain(b)))


def matpow(a: Rows, k: int) -> Rows:
    result = identity(len(a))
    base = a
    while k:
        if k & 1:
            result = matmul(result, base)
        k >>= 1
        if k:
            base = matmul(base, base)
    return result


def matvec(a: Rows, v: Sequence[Fraction]) -> List[Fraction]:
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def subtract(a: Rows, b: Rows) -> Rows:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def rref(rows: Rows):
    """Reduced row echelon form and pivot columns."""
    if not rows:
        return [], ()
    reduced, pivots = to_domain(rows).rref()
    return from_domain(reduced), tuple(pivots)


def rank(rows: Rows) -> int:
    if not rows or not rows[0]:
        return 0
    return len(rref(rows)[1])


def nullspace(rows: Rows, ncols: int = None) -> List[List[Fraction]]:
    """Basis of {x : A x = 0}, one vector per free column."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return identity(ncols)
    reduced, pivots = rref(rows)
    basis = []
    for free in (j for j in range(ncols) if j not in pivots):
        vector = [Fraction(0)] * ncols
        vector[free] = Fraction(1)
        for i, p in enumerate(pivots):
            vector[p] = -reduced[i][free]
        basis.append(vector)
    return basis


def charpoly(rows: Rows) -> List[Fraction]:
    """Coefficients of det(tI - A), leading coefficient first."""
    if not rows:
        return [Fraction(1)]
    return [_frac(c) for c in to_domain(rows).charpoly()]


def poly_from_roots(roots: Sequence[Fraction]) -> List[Fraction]:
    """Coefficients of prod (t - r), leading first."""
    coeffs = [Fraction(1)]
    for r in roots:
        shifted = coeffs + [Fraction(0)]
        for i in range(1, len(shifted)):
            shifted[i] -= r * coeffs[i - 1]
        coeffs = shifted
    return coeffs


def is_independent(vectors: Sequence[Sequence[Fraction]]) -> bool:
    if not vectors:
        return True
    return rank([list(v) for v in vectors]) == len(vectors)


def solve(a: Rows, b: Sequence[Fraction]) -> List[Fraction]:
    """The x with A x = b when A has full column rank; ValueError otherwise."""
    ncols = len(a[0]) if a else 0
    augmented = [list(row) + [Fraction(value)] for row, value in zip(a, b)]
    reduced, pivots = rref(augmented)
    if ncols in pivots:
        raise ValueError("system is inconsistent")
    if len(pivots) != ncols:
        raise ValueError("solution is not unique")
    return [reduced[i][ncols] for i in range(ncols)]
