"""
Lyndon compositions and the straightening of M_beta into a polynomial in
the Lyndon monomial functions, plus the universal endomorphism matrices A_n.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from threading import RLock, local
from typing import Dict, List, Mapping, Tuple

from cachetools import LRUCache, cached
from sympy import divisors, mobius

from combinatorics import Composition, comp_key, compositions, refinements
from errors import CompositionError, QswError
from qsym import QSymElement, monomial, one, quasi_shuffles
from settings import check_cap, log
from upolynomial import ONE, UPolynomial

_lock = RLock()
_progress = local()


def _in_progress() -> set:
    """Compositions being straightened by the current thread."""
    if not hasattr(_progress, "stack"):
        _progress.stack = set()
    return _progress.stack


@dataclass(frozen=True)
class LyndonExpansion:
    target: Composition
    expansion: UPolynomial

    def __str__(self) -> str:
        return str(self.expansion)


def is_lyndon(alpha: Composition) -> bool:
    """Strictly lex-smaller than each nontrivial cyclic rotation."""
    alpha = tuple(alpha)
    if not alpha:
        raise CompositionError("the empty composition is not a Lyndon candidate")
    return all(alpha < alpha[i:] + alpha[:i] for i in range(1, len(alpha)))


def lyndon_compositions(n: int) -> List[Composition]:
    return [alpha for alpha in compositions(n) if alpha and is_lyndon(alpha)]


def lyndon_count(n: int) -> int:
    """Necklace count: (1/n) sum_{d | n} mu(n/d) (2^d - 1)."""
    if n < 1:
        return 0
    total = sum(int(mobius(n // d)) * (2 ** d - 1) for d in divisors(n))
    return total // n


def lyndon_variables(max_weight: int) -> List[Composition]:
    return [a for m in range(1, max_weight + 1) for a in lyndon_compositions(m)]


def _earliest_lyndon_suffix(beta: Composition) -> int:
    for k in range(len(beta)):
        if is_lyndon(beta[k:]):
            return k
    return len(beta) - 1


@cached(LRUCache(maxsize=8192), lock=_lock)
def _expand(beta: Composition) -> UPolynomial:
    if not beta:
        return ONE
    if is_lyndon(beta):
        return UPolynomial.variable(beta)
    pending = _in_progress()
    if beta in pending:
        raise QswError(f"straightening does not terminate at {list(beta)}")
    pending.add(beta)
    try:
        k = _earliest_lyndon_suffix(beta)
        prefix, suffix = beta[:k], beta[k:]
        result = _expand(prefix) * _expand(suffix)
        lead = 0
        for gamma, count in quasi_shuffles(prefix, suffix):
            if gamma == beta:
                lead = count
            else:
                result = result - _expand(gamma).scale(count)
        return result.scale(Fraction(1, lead))
    finally:
        pending.discard(beta)


def lyndon_expand(beta) -> LyndonExpansion:
    """M_beta written as a polynomial in the Lyndon M_alpha."""
    beta = tuple(beta)
    if not beta:
        raise CompositionError("lyndon_expand needs a nonempty composition")
    return LyndonExpansion(beta, _expand(beta))


def realize(expansion, grade: int = None) -> QSymElement:
    """Substitute quasi-shuffle products of M_alpha for the u-variables."""
    poly = expansion.expansion if isinstance(expansion, LyndonExpansion) else expansion
    if grade is None:
        grade = sum(expansion.target) if isinstance(expansion, LyndonExpansion) else None
    total = None
    for mono, coeff in poly.terms.items():
        term = one()
        for variable, exponent in mono:
            for _ in range(exponent):
                term = term * monomial(variable)
        term = term.scale(coeff)
        total = term if total is None else total + term
    if total is None:
        return QSymElement(grade or 0, "M", {})
    return total


@dataclass
class AMatrix:
    """A_n(beta, alpha): coefficient of M_alpha in Phi(M_beta), as polynomials in u."""

    n: int
    entries: Dict[Tuple[Composition, Composition], UPolynomial] = field(default_factory=dict)

    def __getitem__(self, key) -> UPolynomial:
        beta, alpha = key
        return self.entries.get((tuple(beta), tuple(alpha)), UPolynomial())

    def rows(self) -> List[Composition]:
        return list(compositions(self.n))

    def specialize(self, assignment: Mapping[Composition, Fraction]) -> Dict[Tuple[Composition, Composition], Fraction]:
        return {k: p.evaluate(assignment) for k, p in self.entries.items()}

    def term_count(self) -> int:
        return sum(len(p.terms) for p in self.entries.values())


def split_by_weights(beta: Composition, alpha: Composition) -> List[Composition]:
    """Cut beta into consecutive blocks with weights alpha (alpha <= beta)."""
    blocks, start = [], 0
    for a in alpha:
        acc, end = 0, start
        while acc < a:
            acc += beta[end]
            end += 1
        blocks.append(beta[start:end])
        start = end
    return blocks


def a_matrix(n: int) -> AMatrix:
    check_cap("comp", n, "A_n construction")
    log(f"building A_{n}", "🧮")
    matrix = AMatrix(n)
    if n == 0:
        matrix.entries[((), ())] = ONE
        return matrix
    for alpha in compositions(n):
        for beta in refinements(alpha):
            entry = ONE
            for block in split_by_weights(beta, alpha):
                entry = entry * _expand(block)
            if not entry.is_zero():
                matrix.entries[(beta, alpha)] = entry
    log(f"A_{n} has {matrix.term_count()} terms", "✅")
    return matrix


def c_column(n: int) -> Dict[Composition, UPolynomial]:
    """c_{alpha,n}(u) = sum over beta >= alpha of A_n(beta, n)."""
    if n < 1:
        raise CompositionError("c_column needs n >= 1")
    column = {}
    for alpha in compositions(n):
        total = UPolynomial()
        for beta in refinements(alpha):
            total = total + _expand(beta)
        column[alpha] = total
    return dict(sorted(column.items(), key=lambda kv: comp_key(kv[0])))
