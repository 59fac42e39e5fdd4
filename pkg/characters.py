"""
Characters of QSym, i.e. the values <X^Phi, M_alpha> that determine a
Hopf endomorphism Phi.

Every character memoizes its values per composition. Weights above the
configured character cap are refused.
"""

import json
from fractions import Fraction
from math import comb
from pathlib import Path
from threading import RLock
from typing import Dict, Iterable, Mapping, Sequence

from cachetools import LRUCache

from combinatorics import (
    Composition, compositions, factorizations, parse_composition, parse_rational, to_rational,
)
from descent_algebra import DElement, DSeries
from errors import CompositionError, ModelError, SpecSyntaxError
from lyndon import is_lyndon, lyndon_expand, lyndon_variables
from settings import check_cap

CHARACTER_GRAMMAR = 'theta | vartheta:R | ashuffle:A | eval:R1,R2,... | ufile:PATH | identity'


class Character:
    """Multiplicative functional on QSym, known through value(alpha)."""

    kind = "abstract"

    def __init__(self):
        self._cache = LRUCache(maxsize=200_000)
        self._lock = RLock()

    def _compute(self, alpha: Composition) -> Fraction:
        raise NotImplementedError

    def value(self, alpha) -> Fraction:
        alpha = tuple(alpha)
        if not alpha:
            return Fraction(1)
        with self._lock:
            if alpha in self._cache:
                return self._cache[alpha]
        check_cap("char", sum(alpha), f"{self.label()} character value")
        result = Fraction(self._compute(alpha))
        with self._lock:
            self._cache[alpha] = result
        return result

    def lam(self, m: int = 1) -> Fraction:
        """lambda_m = <X^Phi, M_(m)>."""
        return self.value((m,))

    def lyndon_values(self, max_weight: int) -> Dict[Composition, Fraction]:
        return {alpha: self.value(alpha) for alpha in lyndon_variables(max_weight)}

    def component(self, n: int) -> DElement:
        """(X^Phi)_n = sum_alpha <X^Phi, M_alpha> X_alpha."""
        return DElement(n, "X", {alpha: self.value(alpha) for alpha in compositions(n)})

    def series(self) -> DSeries:
        return DSeries(generator=self.component)

    def label(self) -> str:
        return self.kind

    def __repr__(self) -> str:
        return f"<Character {self.label()}>"


class UniversalCharacter(Character):
    """X: evaluation at (1, 0, 0, ...), the character of the identity map."""

    kind = "identity"

    def _compute(self, alpha):
        return 1 if len(alpha) == 1 else 0


class UAssignment(Character):
    """Values on Lyndon compositions; unassigned Lyndon values are zero."""

    kind = "ufile"

    def __init__(self, values: Mapping[Composition, Fraction], name: str = None):
        super().__init__()
        self.values: Dict[Composition, Fraction] = {}
        for alpha, v in values.items():
            alpha = tuple(alpha)
            if not alpha or not is_lyndon(alpha):
                raise CompositionError(f"u-values must be indexed by Lyndon compositions, got {list(alpha)}")
            self.values[alpha] = to_rational(v)
        self.name = name

    def _compute(self, alpha):
        if is_lyndon(alpha):
            return self.values.get(alpha, Fraction(0))
        poly = lyndon_expand(alpha).expansion
        assignment = {v: self.values.get(v, Fraction(0)) for v in poly.variables()}
        return poly.evaluate(assignment)

    def label(self) -> str:
        return self.name or "u-assignment"


class EvaluationCharacter(Character):
    """G -> G(r_1, ..., r_k, 0, 0, ...)."""

    kind = "eval"

    def __init__(self, rs: Sequence):
        super().__init__()
        self.rs = tuple(to_rational(r) for r in rs)

    def _compute(self, alpha):
        # partial[j] = sum over increasing tuples using the first j parts
        partial = [Fraction(1)] + [Fraction(0)] * len(alpha)
        for r in self.rs:
            for j in range(len(alpha), 0, -1):
                partial[j] += partial[j - 1] * r ** alpha[j - 1]
        return partial[len(alpha)]

    def label(self) -> str:
        return "eval:" + ",".join(str(r) for r in self.rs)


class ConvolutionPower(Character):
    """X * ... * X (a factors): M_alpha at a ones, i.e. binom(a, l(alpha))."""

    kind = "ashuffle"

    def __init__(self, a: int):
        super().__init__()
        if int(a) != a or a < 1:
            raise ModelError(f"convolution power needs a positive integer, got {a}")
        self.a = int(a)

    def _compute(self, alpha):
        return comb(self.a, len(alpha))

    def label(self) -> str:
        return f"ashuffle:{self.a}"


class VarthetaCharacter(Character):
    """(X^{vartheta_r})_n = r sum_k (r-1)^k Y_(1^k, n-k)."""

    kind = "vartheta"

    def __init__(self, r):
        super().__init__()
        self.r = to_rational(r)

    def hook_weight(self, k: int) -> Fraction:
        return self.r * (self.r - 1) ** k

    def _compute(self, alpha):
        # hooks (1^k, n-k) refining alpha are those with k >= n - last part
        n, length = sum(alpha), len(alpha)
        total = Fraction(0)
        for k in range(n - alpha[-1], n):
            sign = -1 if (k + 1 - length) % 2 else 1
            total += sign * self.hook_weight(k)
        return total

    def label(self) -> str:
        return f"vartheta:{self.r}"


class ThetaCharacter(VarthetaCharacter):
    """Stembridge's peak map: vartheta at r = 2."""

    kind = "theta"

    def __init__(self):
        super().__init__(2)

    def label(self) -> str:
        return "theta"


class Convolution(Character):
    """<X^Phi * X^Psi, M_alpha> = sum over alpha = beta.gamma."""

    kind = "convolution"

    def __init__(self, left: Character, right: Character):
        super().__init__()
        self.left = left
        self.right = right

    def _compute(self, alpha):
        return sum((self.left.value(alpha[:i]) * self.right.value(alpha[i:])
                    for i in range(len(alpha) + 1)), Fraction(0))

    def label(self) -> str:
        return f"({self.left.label()})*({self.right.label()})"


class Composite(Character):
    """Character of outer o inner: <X^outer, inner(M_alpha)>."""

    kind = "composite"

    def __init__(self, outer: Character, inner: Character):
        super().__init__()
        self.outer = outer
        self.inner = inner

    def _compute(self, alpha):
        total = Fraction(0)
        for pieces in factorizations(alpha):
            weight = Fraction(1)
            for piece in pieces:
                weight *= self.inner.value(piece)
                if not weight:
                    break
            if weight:
                total += weight * self.outer.value(tuple(sum(p) for p in pieces))
        return total

    def label(self) -> str:
        return f"({self.outer.label()})o({self.inner.label()})"


# --- constructors -----------------------------------------------------------

def char_identity() -> Character:
    return UniversalCharacter()


def char_evaluation(rs: Iterable) -> Character:
    return EvaluationCharacter(list(rs))


def char_convolution_power(a: int) -> Character:
    return ConvolutionPower(a)


def char_theta() -> Character:
    return ThetaCharacter()


def char_vartheta(r) -> Character:
    return VarthetaCharacter(r)


def char_u(values: Mapping, name: str = None) -> Character:
    return UAssignment(values, name)


def char_convolution(left: Character, right: Character) -> Character:
    return Convolution(left, right)


def char_composite(outer: Character, inner: Character) -> Character:
    return Composite(outer, inner)


def character_with_eigenvalues(values: Mapping[int, Fraction]) -> Character:
    """u_(m) = values[m], every other Lyndon u = 0; then lambda_m = values[m]."""
    return UAssignment({(m,): v for m, v in values.items()}, name="prescribed-eigenvalues")


def load_ufile(path) -> Dict[Composition, Fraction]:
    """JSON object keyed by underscore-joined parts, e.g. {"1_2": "-1"}."""
    try:
        raw = json.loads(Path(path).read_text())
    except json.JSONDecodeError:
        raise SpecSyntaxError(str(path), "a JSON object of u-values")
    if not isinstance(raw, dict):
        raise SpecSyntaxError(str(path), 'a JSON object like {"1": "2", "1_2": "-1"}')
    return {parse_composition(str(k)): parse_rational(str(v)) for k, v in raw.items()}


def parse_character(spec: str) -> Character:
    """Parse the CLI character grammar."""
    text = spec.strip()
    head, _, arg = text.partition(":")
    head = head.lower()
    if head == "theta" and not arg:
        return char_theta()
    if head == "identity" and not arg:
        return char_identity()
    if head == "vartheta" and arg:
        return char_vartheta(parse_rational(arg))
    if head == "ashuffle" and arg:
        try:
            return char_convolution_power(int(arg))
        except ValueError:
            raise SpecSyntaxError(text, CHARACTER_GRAMMAR)
    if head == "eval" and arg:
        return char_evaluation(parse_rational(tok) for tok in arg.split(","))
    if head == "ufile" and arg:
        return char_u(load_ufile(arg), name=text)
    raise SpecSyntaxError(text, CHARACTER_GRAMMAR)
