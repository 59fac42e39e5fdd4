"""
Homogeneous quasisymmetric functions stored by coefficients in the
monomial (M) or fundamental (F) basis.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from threading import RLock
from typing import Dict, Mapping, Tuple

from cachetools import LRUCache, cached

from combinatorics import Composition, comp_key, format_rational, refinements
from errors import BasisError, GradeMismatch

Tensor = Dict[Tuple[Composition, Composition], Fraction]

_lock = RLock()


@dataclass(frozen=True)
class QSymElement:
    grade: int
    basis: str
    coeffs: Mapping[Composition, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.basis not in ("M", "F"):
            raise BasisError(f"unknown QSym basis {self.basis!r}")
        clean = {}
        for alpha, c in self.coeffs.items():
            alpha = tuple(alpha)
            if sum(alpha) != self.grade:
                raise GradeMismatch(sum(alpha), self.grade, "composition weight and grade")
            c = Fraction(c)
            if c:
                clean[alpha] = clean.get(alpha, Fraction(0)) + c
        object.__setattr__(self, "coeffs", {a: c for a, c in clean.items() if c})

    def __getitem__(self, alpha) -> Fraction:
        return self.coeffs.get(tuple(alpha), Fraction(0))

    def items(self):
        return sorted(self.coeffs.items(), key=lambda ac: comp_key(ac[0]))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "QSymElement") -> "QSymElement":
        _same_space(self, other)
        merged = dict(self.coeffs)
        for a, c in other.coeffs.items():
            merged[a] = merged.get(a, Fraction(0)) + c
        return QSymElement(self.grade, self.basis, merged)

    def __neg__(self) -> "QSymElement":
        return self.scale(-1)

    def __sub__(self, other: "QSymElement") -> "QSymElement":
        return self + (-other)

    def scale(self, factor) -> "QSymElement":
        factor = Fraction(factor)
        return QSymElement(self.grade, self.basis, {a: c * factor for a, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return quasi_shuffle_product(to_m(self), to_m(other))

    __rmul__ = __mul__

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(
            f"{format_rational(c)}*{self.basis}{list(a)}" for a, c in self.items()
        )


def _same_space(x: QSymElement, y: QSymElement) -> None:
    if x.basis != y.basis:
        raise BasisError(f"cannot combine {x.basis} and {y.basis} expansions")
    if x.grade != y.grade:
        raise GradeMismatch(x.grade, y.grade)


def monomial(alpha, coeff=1) -> QSymElement:
    alpha = tuple(alpha)
    return QSymElement(sum(alpha), "M", {alpha: coeff})


def fundamental(alpha, coeff=1) -> QSymElement:
    alpha = tuple(alpha)
    return QSymElement(sum(alpha), "F", {alpha: coeff})


def zero(n: int, basis: str = "M") -> QSymElement:
    return QSymElement(n, basis, {})


def one() -> QSymElement:
    return monomial(())


# --- basis change -----------------------------------------------------------

def m_to_f(x: QSymElement) -> QSymElement:
    """Rewrite an M-expansion in the F basis (inclusion-exclusion)."""
    if x.basis != "M":
        raise BasisError("m_to_f expects an M-basis element")
    out: Dict[Composition, Fraction] = {}
    for alpha, c in x.coeffs.items():
        for beta in refinements(alpha):
            sign = -1 if (len(beta) - len(alpha)) % 2 else 1
            out[beta] = out.get(beta, Fraction(0)) + sign * c
    return QSymElement(x.grade, "F", out)


def f_to_m(x: QSymElement) -> QSymElement:
    """F_alpha = sum over beta >= alpha of M_beta."""
    if x.basis != "F":
        raise BasisError("f_to_m expects an F-basis element")
    out: Dict[Composition, Fraction] = {}
    for alpha, c in x.coeffs.items():
        for beta in refinements(alpha):
            out[beta] = out.get(beta, Fraction(0)) + c
    return QSymElement(x.grade, "M", out)


def to_m(x: QSymElement) -> QSymElement:
    return x if x.basis == "M" else f_to_m(x)


def to_f(x: QSymElement) -> QSymElement:
    return x if x.basis == "F" else m_to_f(x)


# --- product and coproduct --------------------------------------------------

@cached(LRUCache(maxsize=4096), lock=_lock)
def quasi_shuffles(a: Composition, b: Composition) -> Tuple[Tuple[Composition, int], ...]:
    """Quasi-shuffles of two compositions with multiplicities."""
    if not a:
        return ((b, 1),)
    if not b:
        return ((a, 1),)
    counts: Dict[Composition, int] = {}
    for head, rest in (
        (a[:1], quasi_shuffles(a[1:], b)),
        (b[:1], quasi_shuffles(a, b[1:])),
        ((a[0] + b[0],), quasi_shuffles(a[1:], b[1:])),
    ):
        for gamma, k in rest:
            key = head + gamma
            counts[key] = counts.get(key, 0) + k
    return tuple(sorted(counts.items(), key=lambda gk: comp_key(gk[0])))


def quasi_shuffle_product(x: QSymElement, y: QSymElement) -> QSymElement:
    if x.basis != "M" or y.basis != "M":
        raise BasisError("quasi_shuffle_product works in the M basis")
    out: Dict[Composition, Fraction] = {}
    for a, ca in x.coeffs.items():
        for b, cb in y.coeffs.items():
            for gamma, k in quasi_shuffles(a, b):
                out[gamma] = out.get(gamma, Fraction(0)) + ca * cb * k
    return QSymElement(x.grade + y.grade, "M", out)


def deconcat_coproduct(x: QSymElement) -> Tensor:
    """Delta(M_alpha) = sum over alpha = beta.gamma of M_beta (x) M_gamma."""
    if x.basis != "M":
        raise BasisError("deconcat_coproduct works in the M basis")
    out: Tensor = {}
    for alpha, c in x.coeffs.items():
        for i in range(len(alpha) + 1):
            key = (alpha[:i], alpha[i:])
            out[key] = out.get(key, Fraction(0)) + c
    return {k: v for k, v in out.items() if v}


def tensor_multiply(s: Tensor, t: Tensor) -> Tensor:
    """Componentwise quasi-shuffle product of two M (x) M tensors."""
    out: Tensor = {}
    for (a1, a2), c in s.items():
        for (b1, b2), d in t.items():
            for g1, k1 in quasi_shuffles(a1, b1):
                for g2, k2 in quasi_shuffles(a2, b2):
                    out[(g1, g2)] = out.get((g1, g2), Fraction(0)) + c * d * k1 * k2
    return {k: v for k, v in out.items() if v}


def counit(x: QSymElement) -> Fraction:
    return x[()] if x.grade == 0 else Fraction(0)
