"""
Solomon's descent algebra D_n inside Q[S_n].

A DElement keeps exactly one expansion (permutations, Y basis or X basis)
and converts on demand. The star product and Delta_D work on X indices and
never touch S_n; the group product needs S_n only to build Y-basis
structure constants, which are cached per grade.
"""

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from threading import RLock
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from cachetools import LRUCache, cached

from combinatorics import (
    Composition, Permutation, coarsenings, comp_key, compose, compositions,
    descent_classes, descent_composition, format_rational, inverse,
)
from errors import BasisError, GradeMismatch, NotInDescentAlgebra
from qsym import QSymElement, to_m
from settings import check_cap, log

BASES = ("perm", "Y", "X")

DTensor = Dict[Tuple[Composition, Composition], Fraction]

_lock = RLock()


@dataclass(frozen=True)
class DElement:
    grade: int
    basis: str
    coeffs: Mapping[tuple, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.basis not in BASES:
            raise BasisError(f"unknown descent-algebra basis {self.basis!r}")
        clean: Dict[tuple, Fraction] = {}
        for key, c in self.coeffs.items():
            key = tuple(key)
            size = len(key) if self.basis == "perm" else sum(key)
            if size != self.grade:
                raise GradeMismatch(size, self.grade, "index size and grade")
            clean[key] = clean.get(key, Fraction(0)) + Fraction(c)
        object.__setattr__(self, "coeffs", {k: c for k, c in clean.items() if c})

    def __getitem__(self, key) -> Fraction:
        return self.coeffs.get(tuple(key), Fraction(0))

    def items(self):
        if self.basis == "perm":
            return sorted(self.coeffs.items())
        return sorted(self.coeffs.items(), key=lambda kc: comp_key(kc[0]))

    def is_zero(self) -> bool:
        return not self.coeffs

    def scale(self, factor) -> "DElement":
        factor = Fraction(factor)
        return DElement(self.grade, self.basis, {k: c * factor for k, c in self.coeffs.items()})

    def __neg__(self) -> "DElement":
        return self.scale(-1)

    def __add__(self, other: "DElement") -> "DElement":
        if self.grade != other.grade:
            raise GradeMismatch(self.grade, other.grade)
        if other.basis != self.basis:
            other = convert(other, self.basis)
        merged = dict(self.coeffs)
        for k, c in other.coeffs.items():
            merged[k] = merged.get(k, Fraction(0)) + c
        return DElement(self.grade, self.basis, merged)

    def __sub__(self, other: "DElement") -> "DElement":
        return self + (-other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DElement):
            return NotImplemented
        if self.grade != other.grade:
            return self.is_zero() and other.is_zero()
        if self.basis == other.basis:
            return self.coeffs == other.coeffs
        if "perm" in (self.basis, other.basis):
            return to_permutation_basis(self).coeffs == to_permutation_basis(other).coeffs
        return x_expansion(self).coeffs == x_expansion(other).coeffs

    def __hash__(self):
        return hash((self.grade, self.basis, frozenset(self.coeffs.items())))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        label = {"perm": "", "Y": "Y", "X": "X"}[self.basis]
        return " + ".join(f"{format_rational(c)}*{label}{list(k)}" for k, c in self.items())


def x_basis(alpha, coeff=1) -> DElement:
    alpha = tuple(alpha)
    return DElement(sum(alpha), "X", {alpha: coeff})


def y_basis(alpha, coeff=1) -> DElement:
    alpha = tuple(alpha)
    return DElement(sum(alpha), "Y", {alpha: coeff})


def permutation_element(perms: Mapping[Permutation, Fraction]) -> DElement:
    perms = dict(perms)
    n = len(next(iter(perms))) if perms else 0
    return DElement(n, "perm", perms)


def unit(n: int) -> DElement:
    """X_n = Y_n, the identity permutation of S_n."""
    return x_basis((n,) if n else ())


# --- basis changes ----------------------------------------------------------

def x_to_y(w: DElement) -> DElement:
    """X_alpha = sum over beta <= alpha of Y_beta."""
    if w.basis != "X":
        raise BasisError("x_to_y expects an X-basis element")
    out: Dict[Composition, Fraction] = {}
    for alpha, c in w.coeffs.items():
        for beta in coarsenings(alpha):
            out[beta] = out.get(beta, Fraction(0)) + c
    return DElement(w.grade, "Y", out)


def y_to_x(w: DElement) -> DElement:
    """Moebius inversion of x_to_y over the Boolean refinement lattice."""
    if w.basis != "Y":
        raise BasisError("y_to_x expects a Y-basis element")
    out: Dict[Composition, Fraction] = {}
    for alpha, c in w.coeffs.items():
        for beta in coarsenings(alpha):
            sign = -1 if (len(alpha) - len(beta)) % 2 else 1
            out[beta] = out.get(beta, Fraction(0)) + sign * c
    return DElement(w.grade, "X", out)


def to_permutation_basis(w: DElement) -> DElement:
    if w.basis == "perm":
        return w
    check_cap("perm", w.grade, "permutation expansion")
    y = y_expansion(w)
    classes = descent_classes(w.grade)
    out = {sigma: c for alpha, c in y.coeffs.items() for sigma in classes[alpha]}
    return DElement(w.grade, "perm", out)


def from_permutations(w: DElement) -> DElement:
    """Y-basis form of a permutation expansion; loud if not class-constant."""
    if w.basis != "perm":
        raise BasisError("from_permutations expects a permutation expansion")
    check_cap("perm", w.grade, "descent-class extraction")
    out: Dict[Composition, Fraction] = {}
    for alpha, members in descent_classes(w.grade).items():
        values = {w[sigma] for sigma in members}
        if len(values) > 1:
            raise NotInDescentAlgebra(alpha)
        out[alpha] = values.pop()
    return DElement(w.grade, "Y", out)


def y_expansion(w: DElement) -> DElement:
    if w.basis == "Y":
        return w
    if w.basis == "X":
        return x_to_y(w)
    return from_permutations(w)


def x_expansion(w: DElement) -> DElement:
    if w.basis == "X":
        return w
    return y_to_x(y_expansion(w))


def convert(w: DElement, basis: str) -> DElement:
    if basis == "perm":
        return to_permutation_basis(w)
    if basis == "Y":
        return y_expansion(w)
    if basis == "X":
        return x_expansion(w)
    raise BasisError(f"unknown descent-algebra basis {basis!r}")


def is_class_constant(w: DElement) -> bool:
    try:
        y_expansion(w)
        return True
    except NotInDescentAlgebra:
        return False


# --- group product ----------------------------------------------------------

@cached(LRUCache(maxsize=20_000), lock=_lock)
def y_structure(n: int, alpha: Composition, beta: Composition) -> Tuple[Tuple[Composition, int], ...]:
    """Y_alpha . Y_beta = sum_gamma c Y_gamma, read off one representative per class."""
    check_cap("perm", n, "descent-algebra structure constants")
    classes = descent_classes(n)
    out = []
    for gamma in compositions(n):
        pi = classes[gamma][0]
        count = sum(1 for sigma in classes[alpha]
                    if descent_composition(compose(inverse(sigma), pi)) == beta)
        if count:
            out.append((gamma, count))
    return tuple(out)


def _perm_product(v: DElement, w: DElement) -> DElement:
    out: Dict[Permutation, Fraction] = {}
    for sigma, a in v.coeffs.items():
        for tau, b in w.coeffs.items():
            key = compose(sigma, tau)
            out[key] = out.get(key, Fraction(0)) + a * b
    return DElement(v.grade, "perm", out)


def group_product(v: DElement, w: DElement) -> DElement:
    """Bilinear extension of (sigma tau)_i = sigma_{tau_i}."""
    if v.grade != w.grade:
        raise GradeMismatch(v.grade, w.grade)
    n = v.grade
    if n == 0:
        return DElement(0, "Y", {(): _scalar(v) * _scalar(w)})
    if "perm" in (v.basis, w.basis):
        out = _perm_product(to_permutation_basis(v), to_permutation_basis(w))
        try:
            return from_permutations(out)
        except NotInDescentAlgebra:
            return out
    vy, wy = y_expansion(v), y_expansion(w)
    result: Dict[Composition, Fraction] = {}
    for alpha, a in vy.coeffs.items():
        for beta, b in wy.coeffs.items():
            for gamma, k in y_structure(n, alpha, beta):
                result[gamma] = result.get(gamma, Fraction(0)) + a * b * k
    return DElement(n, "Y", result)


def _scalar(w: DElement) -> Fraction:
    return w.coeffs.get((), Fraction(0))


# --- star product and coproduct ---------------------------------------------

def star_product(v: DElement, w: DElement) -> DElement:
    """X_alpha * X_beta = X_{alpha.beta}."""
    vx, wx = x_expansion(v), x_expansion(w)
    out: Dict[Composition, Fraction] = {}
    for a, ca in vx.coeffs.items():
        for b, cb in wx.coeffs.items():
            out[a + b] = out.get(a + b, Fraction(0)) + ca * cb
    return DElement(v.grade + w.grade, "X", out)


def star_all(factors: Sequence[DElement]) -> DElement:
    result = unit(0)
    for f in factors:
        result = star_product(result, f)
    return result


def _part_splits(part: int, pieces: int) -> Iterable[Tuple[int, ...]]:
    for cut in itertools.combinations_with_replacement(range(part + 1), pieces - 1):
        bounds = (0,) + cut + (part,)
        yield tuple(b - a for a, b in zip(bounds, bounds[1:]))


def iterated_coproduct(w: DElement, pieces: int = 2) -> Dict[Tuple[Composition, ...], Fraction]:
    """Delta_D applied pieces-1 times: split each part across the tensor legs."""
    out: Dict[Tuple[Composition, ...], Fraction] = {}
    for alpha, c in x_expansion(w).coeffs.items():
        for choice in itertools.product(*(list(_part_splits(a, pieces)) for a in alpha)):
            legs = tuple(tuple(split[j] for split in choice if split[j]) for j in range(pieces))
            out[legs] = out.get(legs, Fraction(0)) + c
    return {k: v for k, v in out.items() if v}


def coproduct_D(w: DElement) -> DTensor:
    return iterated_coproduct(w, 2)


def is_primitive(w: DElement) -> bool:
    """Delta_D(w) = 1 (x) w + w (x) 1."""
    x = x_expansion(w)
    expected: DTensor = {}
    for alpha, c in x.coeffs.items():
        for key in (((), alpha), (alpha, ())):
            expected[key] = expected.get(key, Fraction(0)) + c
    expected = {k: v for k, v in expected.items() if v}
    return coproduct_D(x) == expected


# --- pairing ----------------------------------------------------------------

@dataclass
class DSeries:
    """Formal sum of graded components, extended lazily by a generator."""

    generator: Optional[Callable[[int], DElement]] = None
    components: Dict[int, DElement] = field(default_factory=dict)

    def component(self, n: int) -> DElement:
        if n not in self.components:
            if self.generator is None:
                return DElement(n, "X", {})
            self.components[n] = self.generator(n)
        return self.components[n]

    def __getitem__(self, n: int) -> DElement:
        return self.component(n)


def pairing(w, f: QSymElement) -> Fraction:
    """<X_alpha, M_beta> = delta; other grades pair to zero."""
    if isinstance(w, DSeries):
        w = w.component(f.grade)
    if w.grade != f.grade:
        return Fraction(0)
    wx = x_expansion(w)
    fm = to_m(f)
    return sum((c * fm[a] for a, c in wx.coeffs.items()), Fraction(0))


# --- compatibility of the two products --------------------------------------

def verify_compat(g: DElement, fs: Sequence[DElement]) -> bool:
    """G.(F_1 * ... * F_r) == sum (G_(1).F_1) * ... * (G_(r).F_r)."""
    total = sum(f.grade for f in fs)
    if g.grade != total:
        raise GradeMismatch(g.grade, total)
    if not fs:
        return True
    lhs = group_product(g, star_all(fs))
    rhs = DElement(total, "X", {})
    grades = tuple(f.grade for f in fs)
    for legs, c in iterated_coproduct(g, len(fs)).items():
        if tuple(sum(leg) for leg in legs) != grades:
            continue
        parts = [group_product(x_basis(leg), f) for leg, f in zip(legs, fs)]
        rhs = rhs + star_all(parts).scale(c)
    log(f"compat check at grade {total} with {len(fs)} factors", "🧮")
    return x_expansion(lhs) == x_expansion(rhs)


def class_sums(n: int) -> List[DElement]:
    return [y_basis(alpha) for alpha in compositions(n)]
