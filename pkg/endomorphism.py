"""
Hopf endomorphisms Phi of QSym built from characters, and the Markov
chains they drive.

K-bar lives on compositions of n, K on permutations of n, K-hat on the
classes of a partition of compositions (the peak classes for Theta).
Rows are source states throughout.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

from characters import Character, char_theta
from combinatorics import (
    Composition, Permutation, coarsenings, comp_key, compose, compositions, descent_classes,
    descent_composition, factorizations, inverse, peak_set, permutations, refinements,
)
from descent_algebra import DElement, group_product, x_expansion, y_basis, y_expansion
from errors import (
    AllZero, ConventionMismatch, NegativeWeight, PartitionError, QswError, ZeroLambda,
)
from exact_linalg import identity, matmul, matpow, nullspace, rank, solve, subtract, transpose
from lyndon import a_matrix
from qsym import QSymElement, m_to_f, to_m
from settings import check_cap, log

Entries = Dict[Tuple[Composition, Composition], Fraction]


# --- the matrix of Phi_n ----------------------------------------------------

@dataclass
class EndoMatrix:
    """Phi(B_row) = sum over col of entries[row, col] B_col, B = M or F."""

    n: int
    basis: str
    entries: Entries = field(default_factory=dict)

    def __getitem__(self, key) -> Fraction:
        row, col = key
        return self.entries.get((tuple(row), tuple(col)), Fraction(0))

    @property
    def states(self) -> Tuple[Composition, ...]:
        return compositions(self.n)

    def row(self, alpha) -> Dict[Composition, Fraction]:
        return {beta: self[alpha, beta] for beta in self.states}

    def to_rows(self) -> List[List[Fraction]]:
        return [[self[a, b] for b in self.states] for a in self.states]

    def is_lower_triangular(self) -> bool:
        order = {a: i for i, a in enumerate(self.states)}
        return all(order[col] <= order[row] for (row, col), v in self.entries.items() if v)

    def row_sums(self) -> Dict[Composition, Fraction]:
        return {a: sum(self.row(a).values(), Fraction(0)) for a in self.states}


def phi_of_monomial(char: Character, alpha: Composition) -> QSymElement:
    """Phi(M_alpha) = sum over factorizations of prod <X^Phi, M_beta_i> M_(|beta_i|)."""
    out: Dict[Composition, Fraction] = {}
    for pieces in factorizations(tuple(alpha)):
        weight = Fraction(1)
        for piece in pieces:
            weight *= char.value(piece)
            if not weight:
                break
        if weight:
            key = tuple(sum(p) for p in pieces)
            out[key] = out.get(key, Fraction(0)) + weight
    return QSymElement(sum(alpha), "M", out)


def apply_phi(char: Character, x: QSymElement) -> QSymElement:
    """Phi applied to an element in either basis; the answer keeps its basis."""
    xm = to_m(x)
    total = QSymElement(x.grade, "M", {})
    for alpha, c in xm.coeffs.items():
        total = total + phi_of_monomial(char, alpha).scale(c)
    return total if x.basis == "M" else m_to_f(total)


def phi_matrix(char: Character, n: int, basis: str = "F") -> EndoMatrix:
    matrix = EndoMatrix(n, basis)
    for alpha in compositions(n):
        if basis == "M":
            image = phi_of_monomial(char, alpha)
        else:
            image = apply_phi(char, QSymElement(n, "F", {alpha: 1}))
        for beta, c in image.coeffs.items():
            matrix.entries[(alpha, beta)] = c
    return matrix


def phi_matrix_from_a(char: Character, n: int) -> EndoMatrix:
    """The M-basis matrix obtained by specializing A_n at the Lyndon values."""
    a = a_matrix(n)
    values = char.lyndon_values(n)
    matrix = EndoMatrix(n, "M")
    for (beta, alpha), poly in a.entries.items():
        assignment = {v: values.get(v, Fraction(0)) for v in poly.variables()}
        value = poly.evaluate(assignment)
        if value:
            matrix.entries[(beta, alpha)] = value
    return matrix


def dual_image(char: Character, w: DElement) -> DElement:
    """X^Phi . W computed from the M-basis matrix: X_alpha -> sum_beta A(beta, alpha) X_beta."""
    wx = x_expansion(w)
    m = phi_matrix(char, w.grade, "M")
    out: Dict[Composition, Fraction] = {}
    for alpha, c in wx.coeffs.items():
        for beta in compositions(w.grade):
            entry = m[beta, alpha]
            if entry:
                out[beta] = out.get(beta, Fraction(0)) + c * entry
    return DElement(w.grade, "X", out)


# --- distributions and transition matrices ----------------------------------

@dataclass(frozen=True)
class Distribution:
    support: str
    probabilities: Mapping[Hashable, Fraction]

    def __post_init__(self):
        probs = {k: Fraction(v) for k, v in self.probabilities.items()}
        if any(v < 0 for v in probs.values()):
            raise QswError("distribution has a negative mass")
        if probs and sum(probs.values()) != 1:
            raise QswError(f"distribution sums to {sum(probs.values())}, not 1")
        object.__setattr__(self, "probabilities", probs)

    def __getitem__(self, key) -> Fraction:
        return self.probabilities.get(tuple(key) if isinstance(key, list) else key, Fraction(0))

    def items(self):
        if self.support == "composition":
            return sorted(self.probabilities.items(), key=lambda kv: comp_key(kv[0]))
        return sorted(self.probabilities.items())


@dataclass
class TransitionMatrix:
    """Exact row-stochastic matrix keyed by (source, target) states."""

    space: str
    states: Tuple[Hashable, ...]
    rows: Dict[Hashable, Dict[Hashable, Fraction]]

    def __post_init__(self):
        for s in self.states:
            row = self.rows.setdefault(s, {})
            self.rows[s] = {t: Fraction(v) for t, v in row.items() if v}
            total = sum(self.rows[s].values(), Fraction(0))
            if total != 1:
                raise QswError(f"row {s} sums to {total}, not 1")
            if any(v < 0 for v in self.rows[s].values()):
                raise QswError(f"row {s} has a negative entry")

    def __getitem__(self, key) -> Fraction:
        s, t = key
        return self.rows.get(s, {}).get(t, Fraction(0))

    def row(self, state) -> Distribution:
        return Distribution(self.space, dict(self.rows[state]))

    def to_rows(self) -> List[List[Fraction]]:
        return [[self[s, t] for t in self.states] for s in self.states]

    @classmethod
    def from_rows(cls, space: str, states: Sequence, rows: Sequence[Sequence[Fraction]]) -> "TransitionMatrix":
        states = tuple(states)
        return cls(space, states, {s: dict(zip(states, row)) for s, row in zip(states, rows)})

    def power(self, k: int) -> "TransitionMatrix":
        return TransitionMatrix.from_rows(self.space, self.states, matpow(self.to_rows(), k))

    def __matmul__(self, other: "TransitionMatrix") -> "TransitionMatrix":
        return TransitionMatrix.from_rows(self.space, self.states, matmul(self.to_rows(), other.to_rows()))


def weight_column(char: Character, n: int) -> Dict[Composition, Fraction]:
    """c_{alpha,n} = sum over beta >= alpha of <X^Phi, M_beta>."""
    return {alpha: sum((char.value(beta) for beta in refinements(alpha)), Fraction(0))
            for alpha in compositions(n)}


def check_hypotheses(char: Character, n: int) -> Dict[Composition, Fraction]:
    column = weight_column(char, n)
    for alpha, c in column.items():
        if c < 0:
            raise NegativeWeight(alpha, c)
    if not any(column.values()):
        raise AllZero(n)
    if char.lam(1) == 0:
        raise ZeroLambda()
    return column


def qs_star_distribution(char: Character, n: int) -> Distribution:
    """prob_Phi(pi) = c_{D(pi),n} / lambda^n on S_n."""
    column = check_hypotheses(char, n)
    check_cap("perm", n, "QS*-distribution")
    norm = char.lam(1) ** n
    classes = descent_classes(n)
    total = sum((column[alpha] * len(members) for alpha, members in classes.items()), Fraction(0))
    if total != norm:
        raise QswError(f"sum of c_(D(sigma),n) is {total}, expected lambda^n = {norm}")
    probs = {sigma: column[alpha] / norm
             for alpha, members in classes.items() for sigma in members if column[alpha]}
    return Distribution("permutation", probs)


def qs_star_composition_law(char: Character, n: int) -> Distribution:
    """The law of D(pi) for pi ~ prob_Phi, without enumerating S_n."""
    column = check_hypotheses(char, n)
    norm = char.lam(1) ** n
    sizes = class_sizes(n)
    return Distribution("composition", {a: column[a] * sizes[a] / norm for a in compositions(n)})


def kbar(char: Character, n: int) -> TransitionMatrix:
    """K-bar(alpha, beta) = c_{alpha,beta} / lambda^n."""
    check_hypotheses(char, n)
    norm = char.lam(1) ** n
    matrix = phi_matrix(char, n, "F")
    log(f"K-bar for {char.label()} at n={n}", "🧮")
    rows = {a: {b: v / norm for b, v in matrix.row(a).items() if v} for a in compositions(n)}
    return TransitionMatrix("composition", compositions(n), rows)


_convention_checked = False


def k_full(char: Character, n: int) -> TransitionMatrix:
    """K(pi, tau) = prob_Phi(pi tau^-1): one step moves pi to sigma^-1 pi, sigma ~ prob_Phi."""
    convention_self_test()
    prob = qs_star_distribution(char, n)
    log(f"K for {char.label()} at n={n} ({factorial(n)} states)", "🧮")
    rows: Dict[Permutation, Dict[Permutation, Fraction]] = {}
    for pi in permutations(n):
        row: Dict[Permutation, Fraction] = {}
        for sigma, p in prob.probabilities.items():
            tau = compose(inverse(sigma), pi)
            row[tau] = row.get(tau, Fraction(0)) + p
        rows[pi] = row
    return TransitionMatrix("permutation", permutations(n), rows)


THETA_KBAR_3 = (
    (Fraction(1, 4), Fraction(1, 4), Fraction(1, 4), Fraction(1, 4)),
    (Fraction(1, 4), Fraction(1, 4), Fraction(1, 4), Fraction(1, 4)),
    (Fraction(0), Fraction(1, 2), Fraction(1, 2), Fraction(0)),
    (Fraction(1, 4), Fraction(1, 4), Fraction(1, 4), Fraction(1, 4)),
)


def convention_self_test() -> None:
    """K-bar for Theta at n=3 must match the reference table and lump K."""
    global _convention_checked
    if _convention_checked:
        return
    theta = char_theta()
    reduced = kbar(theta, 3)
    if tuple(tuple(r) for r in reduced.to_rows()) != THETA_KBAR_3:
        raise ConventionMismatch("K-bar for Theta at n=3 differs from the reference table")
    _convention_checked = True
    prob = qs_star_distribution(theta, 3)
    pi = (1, 3, 2)
    landing: Dict[Composition, Fraction] = {}
    for sigma, p in prob.probabilities.items():
        alpha = descent_composition(compose(inverse(sigma), pi))
        landing[alpha] = landing.get(alpha, Fraction(0)) + p
    if any(landing.get(b, Fraction(0)) != reduced[(2, 1), b] for b in compositions(3)):
        _convention_checked = False
        raise ConventionMismatch("walk from 132 does not lump onto row (2,1) of K-bar")


# --- lumping ----------------------------------------------------------------

@dataclass
class LumpingResult:
    ok: bool
    witness: Optional[Tuple[Permutation, Composition]] = None

    def __bool__(self) -> bool:
        return self.ok


def verify_lumping(k: TransitionMatrix, reduced: TransitionMatrix) -> LumpingResult:
    """sum over sigma in class beta of K(pi, sigma) == K-bar(D(pi), beta)."""
    for pi in k.states:
        totals: Dict[Composition, Fraction] = {}
        for sigma, p in k.rows[pi].items():
            beta = descent_composition(sigma)
            totals[beta] = totals.get(beta, Fraction(0)) + p
        alpha = descent_composition(pi)
        for beta in reduced.states:
            if totals.get(beta, Fraction(0)) != reduced[alpha, beta]:
                return LumpingResult(False, (pi, beta))
    return LumpingResult(True)


def convolve(p: Mapping[Permutation, Fraction], q: Mapping[Permutation, Fraction]) -> Dict[Permutation, Fraction]:
    out: Dict[Permutation, Fraction] = {}
    for sigma, a in p.items():
        for tau, b in q.items():
            key = compose(sigma, tau)
            out[key] = out.get(key, Fraction(0)) + a * b
    return out


def convolution_column_check(char: Character, n: int, m: int) -> bool:
    """Column (n) of K-bar^m against the m-fold convolution of prob_Phi."""
    check_cap("brute", n, "convolution check")
    prob = qs_star_distribution(char, n).probabilities
    walk = dict(prob)
    for _ in range(m - 1):
        walk = convolve(walk, prob)
    powered = kbar(char, n).power(m)
    top = (n,)
    return all(walk.get(pi, Fraction(0)) == powered[descent_composition(pi), top]
               for pi in permutations(n))


# --- stationary laws --------------------------------------------------------

@dataclass
class StationaryResult:
    unique: bool
    kernel_dimension: int
    distribution: Optional[Distribution]
    kernel: List[List[Fraction]]


def stationary(matrix: TransitionMatrix) -> StationaryResult:
    """Exact kernel of (K^T - I); the law is reported only when it is unique."""
    rows = matrix.to_rows()
    size = len(rows)
    kernel = nullspace(subtract(transpose(rows), identity(size)), size)
    log(f"stationary kernel of dimension {len(kernel)} on {size} states", "📊")
    if len(kernel) != 1:
        return StationaryResult(False, len(kernel), None, kernel)
    vector = kernel[0]
    total = sum(vector, Fraction(0))
    law = {s: v / total for s, v in zip(matrix.states, vector) if v}
    return StationaryResult(True, 1, Distribution(matrix.space, law), kernel)


def class_sizes(n: int) -> Dict[Composition, int]:
    """|{sigma : D(sigma) = alpha}| by inclusion-exclusion over coarser sets."""
    sizes = {}
    for alpha in compositions(n):
        total = 0
        for beta in coarsenings(alpha):
            multinomial = factorial(n)
            for part in beta:
                multinomial //= factorial(part)
            total += (-1) ** (len(alpha) - len(beta)) * multinomial
        sizes[alpha] = total
    return sizes


def descent_class_law(n: int) -> Distribution:
    """alpha -> |descent class alpha| / n!, the image of the uniform law."""
    sizes = class_sizes(n)
    return Distribution("composition", {a: Fraction(s, factorial(n)) for a, s in sizes.items()})


def expects_uniform_stationary(char: Character, n: int) -> bool:
    """Some c_{alpha,n} > 0 off the two extreme compositions."""
    column = weight_column(char, n)
    extremes = {(n,), (1,) * n}
    return any(c > 0 for a, c in column.items() if a not in extremes)


# --- partitions of compositions ---------------------------------------------

@dataclass
class PartitionLump:
    labels: List[Hashable]
    classes: List[List[Composition]]
    d: Dict[Tuple[Hashable, Hashable], Fraction]
    khat: TransitionMatrix
    matches_kbar: bool


def lump_kbar(reduced: TransitionMatrix, labels: Sequence[Hashable], classes: Sequence[Sequence[Composition]]) -> TransitionMatrix:
    """Lump K-bar by classes, requiring the class totals to agree within each class."""
    rows = {}
    for label, members in zip(labels, classes):
        totals = None
        for alpha in members:
            row = [sum((reduced[alpha, b] for b in target), Fraction(0)) for target in classes]
            if totals is None:
                totals = row
            elif row != totals:
                raise PartitionError(f"K-bar is not lumpable: rows {list(members[0])} and {list(alpha)} differ")
        rows[label] = dict(zip(labels, totals))
    return TransitionMatrix("class", tuple(labels), rows)


def lump_by_partition(char: Character, n: int, classes: Sequence[Sequence[Composition]],
                      labels: Sequence[Hashable] = None) -> PartitionLump:
    """K-hat from the partitioning property: Phi(F_alpha) constant on classes
    and the class images phi independent with rank equal to rank(Phi_n)."""
    classes = [sorted((tuple(a) for a in members), key=comp_key) for members in classes]
    flat = [a for members in classes for a in members]
    if sorted(flat, key=comp_key) != list(compositions(n)):
        raise PartitionError(f"classes do not partition the compositions of {n}")
    labels = list(labels) if labels is not None else [members[0] for members in classes]

    matrix = phi_matrix(char, n, "F")
    states = compositions(n)
    phis = []
    for members in classes:
        rows = {tuple(matrix[a, b] for b in states) for a in members}
        if len(rows) != 1:
            raise PartitionError(f"Phi(F_alpha) is not constant on the class of {list(members[0])}")
        phis.append(list(rows.pop()))
    if rank(phis) != len(classes) or rank(matrix.to_rows()) != len(classes):
        raise PartitionError("class images are not a basis of the image of Phi_n")

    check_hypotheses(char, n)
    norm = char.lam(1) ** n
    columns = transpose(phis)
    d: Dict[Tuple[Hashable, Hashable], Fraction] = {}
    rows_hat: Dict[Hashable, Dict[Hashable, Fraction]] = {}
    for label, phi in zip(labels, phis):
        # Phi(phi) expanded in F, then solved in the phi basis
        image = [sum((phi[i] * matrix[states[i], b] for i in range(len(states))), Fraction(0))
                 for b in states]
        coeffs = solve(columns, image)
        rows_hat[label] = {}
        for other, c in zip(labels, coeffs):
            d[(label, other)] = c
            rows_hat[label][other] = c / norm
    khat = TransitionMatrix("class", tuple(labels), rows_hat)
    try:
        matches = lump_kbar(kbar(char, n), labels, classes).to_rows() == khat.to_rows()
    except PartitionError:
        matches = False
    log(f"K-hat with {len(classes)} classes at n={n}", "📊")
    return PartitionLump(labels, classes, d, khat, matches)


def peak_partition(n: int) -> Tuple[List[Tuple[int, ...]], List[List[Composition]]]:
    """Compositions of n grouped by peak set, classes in order of first member."""
    groups: Dict[Tuple[int, ...], List[Composition]] = {}
    for alpha in compositions(n):
        groups.setdefault(tuple(sorted(peak_set(alpha))), []).append(alpha)
    return list(groups.keys()), list(groups.values())


def peak_lumped_matrix(n: int) -> PartitionLump:
    labels, classes = peak_partition(n)
    return lump_by_partition(char_theta(), n, classes, labels)


def class_element(members: Sequence[Composition]) -> DElement:
    n = sum(members[0])
    return DElement(n, "Y", {a: 1 for a in members})


def right_ideal_check(n: int) -> bool:
    """span{Y_class} is closed under right multiplication by every Y_beta."""
    check_cap("perm", n, "right ideal check")
    _, classes = peak_partition(n)
    for members in classes:
        left = class_element(members)
        for beta in compositions(n):
            product = y_expansion(group_product(left, y_basis(beta)))
            for cls in classes:
                if len({product[a] for a in cls}) > 1:
                    return False
    return True


# --- BHR test ---------------------------------------------------------------

@dataclass
class BhrResult:
    is_bhr: bool
    expansion: DElement

    def __bool__(self) -> bool:
        return self.is_bhr


def is_bhr_distribution(char: Character, n: int) -> BhrResult:
    """Nonnegative X-basis expansion of (X^Phi)_n."""
    check_hypotheses(char, n)
    expansion = char.component(n)
    return BhrResult(all(c >= 0 for c in expansion.coeffs.values()), expansion)
