"""
Eigenvalues and eigenvectors of Phi_n.

lambda_alpha = prod lambda_{a_i}. The eigenvectors live in the descent
algebra: Z_m is built recursively from the M-basis matrix, and
Z_alpha = Z_{a_1} * ... * Z_{a_k} satisfies X^Phi . Z_alpha = lambda_alpha Z_alpha.
"""

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Dict, List, Mapping, Optional, Tuple

from sympy.utilities.iterables import multiset_permutations, partitions

from characters import Character
from combinatorics import (
    Composition, coarsenings, compositions, descent_classes, descent_composition, permutations,
)
from descent_algebra import DElement, group_product, is_primitive, star_all, x_expansion
from endomorphism import TransitionMatrix, k_full, kbar, phi_matrix
from errors import EigenvalueCollision, NotAnEigenvector, ZeroEigenvalue
from exact_linalg import charpoly, is_independent, nullspace, poly_from_roots, rank
from lyndon import split_by_weights
from qsym import QSymElement
from settings import check_cap, log

__all__ = [
    "Spectrum", "ZVector", "spectrum", "evaluation_spectrum", "z_vector", "z_alpha",
    "verify_eigen", "is_primitive", "diagonalizable", "shuffle_z", "p_basis",
    "lift_eigenvector", "block_invariance", "psidual_identity", "is_eigen_independent",
]


@dataclass
class Spectrum:
    n: int
    eigenvalues: List[Tuple[Composition, Fraction]]
    charpoly_agrees: Optional[bool] = None

    def values(self) -> List[Fraction]:
        return [v for _, v in self.eigenvalues]

    def multiset(self) -> Counter:
        return Counter(self.values())

    def normalized(self, norm: Fraction) -> "Spectrum":
        return Spectrum(self.n, [(a, v / norm) for a, v in self.eigenvalues], self.charpoly_agrees)


@dataclass(frozen=True)
class ZVector:
    index: Composition
    element: DElement


def eigenvalue(char: Character, alpha: Composition) -> Fraction:
    result = Fraction(1)
    for part in alpha:
        result *= char.lam(part)
    return result


def spectrum(char: Character, n: int, verify: bool = True) -> Spectrum:
    values = [(alpha, eigenvalue(char, alpha)) for alpha in compositions(n)]
    agrees = None
    if verify:
        matrix = phi_matrix(char, n, "M").to_rows()
        agrees = charpoly(matrix) == poly_from_roots([v for _, v in values])
    return Spectrum(n, values, agrees)


def evaluation_spectrum(rs, n: int) -> Counter:
    """Eigenvalues p_mu(r) of an evaluation character, one per rearrangement of mu."""
    rs = [Fraction(r) for r in rs]
    out: Counter = Counter()
    for mu in partitions(n):
        parts = [p for p, k in sorted(mu.items()) for _ in range(k)]
        value = Fraction(1)
        for p in parts:
            value *= sum((r ** p for r in rs), Fraction(0))
        out[value] += sum(1 for _ in multiset_permutations(parts))
    return out


def z_vector(char: Character, m: int) -> ZVector:
    """The unique Z_m with <Z_m, M_m> = 1 and X^Phi . Z_m = lambda_m Z_m."""
    lam_m = char.lam(m)
    if lam_m == 0:
        raise ZeroEigenvalue(m)
    for beta in compositions(m):
        if beta != (m,) and eigenvalue(char, beta) == lam_m:
            raise EigenvalueCollision(m, beta)
    matrix = phi_matrix(char, m, "M")
    coeffs: Dict[Composition, Fraction] = {(m,): Fraction(1)}
    for beta in compositions(m)[1:]:
        total = Fraction(0)
        for alpha in coarsenings(beta):
            if alpha != beta and alpha in coeffs:
                total += coeffs[alpha] * matrix[beta, alpha]
        value = total / (lam_m - eigenvalue(char, beta))
        if value:
            coeffs[beta] = value
    return ZVector((m,), DElement(m, "X", coeffs))


def z_alpha(char: Character, alpha) -> ZVector:
    alpha = tuple(alpha)
    atoms = [z_vector(char, part).element for part in alpha]
    return ZVector(alpha, star_all(atoms))


def verify_eigen(char: Character, alpha) -> bool:
    """X^Phi . Z_alpha == lambda_alpha Z_alpha with the exact group product."""
    z = z_alpha(char, alpha)
    n = sum(z.index)
    left = group_product(char.component(n), z.element)
    return x_expansion(left) == z.element.scale(eigenvalue(char, z.index))


@dataclass
class DiagonalizationReport:
    ok: bool
    reason: str
    rank: int
    nonzero_eigenvalues: int
    eigenbasis: Dict[Composition, DElement] = field(default_factory=dict)
    kernel: List[DElement] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def diagonalizable(char: Character, n: int) -> DiagonalizationReport:
    matrix = phi_matrix(char, n, "M")
    rows = matrix.to_rows()
    matrix_rank = rank(rows)
    nonzero = [a for a in compositions(n) if eigenvalue(char, a) != 0]
    for m in range(1, n + 1):
        if char.lam(m) == 0:
            continue
        for beta in compositions(m):
            if beta != (m,) and eigenvalue(char, beta) == char.lam(m):
                return DiagonalizationReport(
                    False, f"lambda_{m} collides with lambda_{list(beta)}", matrix_rank, len(nonzero))
    if matrix_rank != len(nonzero):
        return DiagonalizationReport(
            False, f"rank {matrix_rank} differs from {len(nonzero)} nonzero eigenvalues",
            matrix_rank, len(nonzero))
    basis = {alpha: z_alpha(char, alpha).element for alpha in nonzero}
    if not is_eigen_independent(basis, n):
        return DiagonalizationReport(False, "the Z_alpha are linearly dependent", matrix_rank, len(nonzero))
    # X^Phi . X_alpha = sum_beta A(beta, alpha) X_beta, so the kernel is the nullspace of A
    states = compositions(n)
    kernel = [DElement(n, "X", dict(zip(states, vector)))
              for vector in nullspace(rows, len(states))]
    log(f"diagonalized {char.label()} at n={n}: rank {matrix_rank}, kernel {len(kernel)}", "✅")
    return DiagonalizationReport(True, "ok", matrix_rank, len(nonzero), basis, kernel)


# --- a-shuffles ----------------------------------------------------------------

def shuffle_z(n: int) -> ZVector:
    """Z_n = sum_beta (-1)^(l(beta)-1) / l(beta) X_beta."""
    coeffs = {beta: Fraction((-1) ** (len(beta) - 1), len(beta)) for beta in compositions(n)}
    return ZVector((n,), DElement(n, "X", coeffs))


def p_basis(n: int) -> Dict[Composition, QSymElement]:
    """P_beta = sum over alpha <= beta of M_alpha / f(beta, alpha)."""
    out = {}
    for beta in compositions(n):
        coeffs = {}
        for alpha in coarsenings(beta):
            f = 1
            for block in split_by_weights(beta, alpha):
                f *= factorial(len(block))
            coeffs[alpha] = Fraction(1, f)
        out[beta] = QSymElement(n, "M", coeffs)
    return out


def psidual_identity(n: int, a: int) -> Tuple[Fraction, Fraction]:
    """Both sides of sum_{c |= n} (-1)^(h-1)/h prod binom(a, c_i) = a (-1)^(n-1)/n."""
    lhs = Fraction(0)
    for c in compositions(n):
        term = Fraction((-1) ** (len(c) - 1), len(c))
        for part in c:
            term *= comb(a, part)
        lhs += term
    return lhs, Fraction(a * (-1) ** (n - 1), n)


# --- lifting to permutations ----------------------------------------------------

def _apply(matrix: TransitionMatrix, vector: Mapping) -> Dict:
    return {s: sum((p * vector.get(t, Fraction(0)) for t, p in matrix.rows[s].items()), Fraction(0))
            for s in matrix.states}


def lift_eigenvector(char: Character, vector: Mapping[Composition, Fraction], n: int) -> Tuple[Fraction, Dict]:
    """Constant extension v_pi = x_{D(pi)} of a right eigenvector x of K-bar."""
    check_cap("perm", n, "eigenvector lifting")
    x = {tuple(a): Fraction(v) for a, v in vector.items()}
    if not any(x.values()):
        raise NotAnEigenvector("the zero vector is not an eigenvector")
    reduced = kbar(char, n)
    image = _apply(reduced, x)
    pivot = next(a for a in reduced.states if x.get(a, Fraction(0)))
    lam = image[pivot] / x[pivot]
    if any(image[a] != lam * x.get(a, Fraction(0)) for a in reduced.states):
        raise NotAnEigenvector("vector is not a right eigenvector of K-bar")
    lifted = {pi: x.get(descent_composition(pi), Fraction(0)) for pi in permutations(n)}
    full = k_full(char, n)
    if any(v != lam * lifted[pi] for pi, v in _apply(full, lifted).items()):
        raise NotAnEigenvector("lifted vector fails K v = lambda v")
    return lam, lifted


def block_invariance(char: Character, n: int) -> bool:
    """K^T keeps the per-class zero-sum space and K maps class indicators
    onto combinations of class indicators weighted by K-bar."""
    check_cap("perm", n, "block invariance")
    full = k_full(char, n)
    reduced = kbar(char, n)
    classes = descent_classes(n)

    for alpha, members in classes.items():
        anchor = members[0]
        for other in members[1:]:
            # v = e_other - e_anchor; (K^T v)_tau = K(other, tau) - K(anchor, tau)
            sums: Dict[Composition, Fraction] = {}
            for tau in set(full.rows[other]) | set(full.rows[anchor]):
                delta = full[other, tau] - full[anchor, tau]
                beta = descent_composition(tau)
                sums[beta] = sums.get(beta, Fraction(0)) + delta
            if any(sums.values()):
                return False

    for beta, targets in classes.items():
        indicator = {tau: Fraction(1) for tau in targets}
        image = _apply(full, indicator)
        for pi, value in image.items():
            if value != reduced[descent_composition(pi), beta]:
                return False
    return True


def is_eigen_independent(basis: Mapping[Composition, DElement], n: int) -> bool:
    """The X-coordinates of the given elements are linearly independent."""
    states = compositions(n)
    return is_independent([[x_expansion(w)[a] for a in states] for w in basis.values()])
