"""
The omega_r operator on ab-words and the map gamma into QSym.

A word u of length n-1 over {a, b} stands for F_co(S_u), S_u being the
positions of b. Under gamma, r * omega_r is the endomorphism vartheta_r.
"""

from fractions import Fraction
from typing import Dict, List

from combinatorics import (
    Composition, compositions, descent_positions, peak_set, set_to_comp, to_rational,
)
from errors import CompositionError, InvalidLetter
from qsym import QSymElement

Word = str
WordSum = Dict[Word, Fraction]


def _check(word: Word) -> None:
    for letter in word:
        if letter not in "ab":
            raise InvalidLetter(letter)


def _segments(word: Word) -> List[str]:
    """Split into 'ab' blocks and single letters, left to right."""
    pieces, i = [], 0
    while i < len(word):
        if word[i:i + 2] == "ab":
            pieces.append("ab")
            i += 2
        else:
            pieces.append(word[i])
            i += 1
    return pieces


def omega_r(word: Word, r) -> WordSum:
    """ab -> r(ab + (r-1)ba), then a -> a + (r-1)b and b -> b + (r-1)a."""
    _check(word)
    r = to_rational(r)
    images = {
        "ab": {"ab": r, "ba": r * (r - 1)},
        "a": {"a": Fraction(1), "b": r - 1},
        "b": {"b": Fraction(1), "a": r - 1},
    }
    result: WordSum = {"": Fraction(1)}
    for piece in _segments(word):
        step: WordSum = {}
        for prefix, c in result.items():
            for tail, d in images[piece].items():
                if c * d:
                    step[prefix + tail] = step.get(prefix + tail, Fraction(0)) + c * d
        result = step
    return {w: c for w, c in result.items() if c}


def r_omega(word: Word, r) -> WordSum:
    r = to_rational(r)
    return {w: r * c for w, c in omega_r(word, r).items()}


def gamma(word: Word) -> QSymElement:
    _check(word)
    n = len(word) + 1
    positions = {i for i, letter in enumerate(word, start=1) if letter == "b"}
    return QSymElement(n, "F", {set_to_comp(positions, n): 1})


def word_of(alpha: Composition) -> Word:
    """The ab-word with gamma(word) = F_alpha."""
    n = sum(alpha)
    if n < 1:
        raise CompositionError("ab-words index compositions of n >= 1")
    s = descent_positions(alpha)
    return "".join("b" if i in s else "a" for i in range(1, n))


def gamma_sum(words: WordSum, n: int) -> QSymElement:
    total = QSymElement(n, "F", {})
    for w, c in words.items():
        total = total + gamma(w).scale(c)
    return total


def conjugated_row(alpha: Composition, r) -> QSymElement:
    """gamma o (r omega_r) o gamma^-1 applied to F_alpha."""
    return gamma_sum(r_omega(word_of(alpha), r), sum(alpha))


# --- closed form for vartheta_{1-q}(F_beta) ---------------------------------

def hook_factorization(beta: Composition) -> List[Composition]:
    """beta = beta_1 ... beta_h with beta_i = (1^k, l), l >= 2; the last may be (1^k)."""
    factors, current = [], []
    for part in beta:
        current.append(part)
        if part >= 2:
            factors.append(tuple(current))
            current = []
    if current:
        factors.append(tuple(current))
    return factors


def hook_length(beta: Composition) -> int:
    return len(hook_factorization(beta))


def b_statistic(s: frozenset, t: frozenset) -> int:
    """|(1 + (S minus T)) union (T minus S)|."""
    return len({i + 1 for i in s - t} | (t - s))


def vartheta_F_expansion(beta, q) -> QSymElement:
    """vartheta_{1-q}(F_beta) = (1-q)^hl(beta) sum (-q)^b(S_alpha, S_beta) F_alpha
    over alpha with Lambda(beta) inside S_alpha sym-diff (S_alpha + 1)."""
    beta = tuple(beta)
    n = sum(beta)
    if n < 1:
        raise CompositionError("vartheta_F_expansion needs |beta| >= 1")
    q = to_rational(q)
    peaks = peak_set(beta)
    t = descent_positions(beta)
    scale = (1 - q) ** hook_length(beta)
    coeffs = {}
    for alpha in compositions(n):
        s = descent_positions(alpha)
        window = s ^ {i + 1 for i in s}
        if peaks <= window:
            coeffs[alpha] = scale * (-q) ** b_statistic(s, t)
    return QSymElement(n, "F", coeffs)


def all_words(length: int) -> List[Word]:
    return [word_of(alpha) for alpha in compositions(length + 1)]
