"""
Compositions, permutations and their descent/peak statistics.

Compositions are tuples of positive ints, permutations are one-line tuples
on 1..n. Both are plain immutable values so they can key dicts directly.
"""

import itertools
from fractions import Fraction
from threading import RLock
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple, Union

from cachetools import LRUCache, cached

from errors import CompositionError, GradeMismatch, PermutationError, SpecSyntaxError

Composition = Tuple[int, ...]
Permutation = Tuple[int, ...]
RationalLike = Union[int, Fraction, str]

_lock = RLock()


# --- compositions -----------------------------------------------------------

def as_composition(parts: Iterable[int]) -> Composition:
    comp = tuple(int(p) for p in parts)
    if any(p < 1 for p in comp):
        raise CompositionError(f"composition parts must be positive: {list(comp)}")
    return comp


def comp_key(alpha: Composition) -> Tuple[int, int, Composition]:
    """Sort key for the canonical order: weight, then length, then lex."""
    return (sum(alpha), len(alpha), alpha)


@cached(LRUCache(maxsize=64), lock=_lock)
def compositions(n: int) -> Tuple[Composition, ...]:
    """All compositions of n in canonical order (length, then lex)."""
    if n < 0:
        raise CompositionError(f"negative weight {n}")
    if n == 0:
        return ((),)
    comps = [set_to_comp(set(s), n)
             for k in range(n)
             for s in itertools.combinations(range(1, n), k)]
    return tuple(sorted(comps, key=lambda c: (len(c), c)))


def comp_index(n: int) -> Dict[Composition, int]:
    return {alpha: i for i, alpha in enumerate(compositions(n))}


def comp_to_set(alpha: Sequence[int]) -> FrozenSet[int]:
    """S_alpha: the partial sums of alpha (including n itself)."""
    return frozenset(itertools.accumulate(alpha))


def set_to_comp(s: Iterable[int], n: int) -> Composition:
    """co(S) for S a subset of [n-1]; the element n is ignored if present."""
    points = sorted(x for x in set(s) if x != n)
    if points and (points[0] < 1 or points[-1] > n - 1):
        raise CompositionError(f"set {points} is not inside [1, {n - 1}]")
    if n == 0:
        return ()
    bounds = [0] + points + [n]
    return tuple(b - a for a, b in zip(bounds, bounds[1:]))


def descent_positions(alpha: Sequence[int]) -> FrozenSet[int]:
    """S_alpha without its final element n."""
    return frozenset(itertools.accumulate(alpha[:-1]))


def refines(beta: Sequence[int], alpha: Sequence[int]) -> bool:
    """True iff alpha <= beta, i.e. beta groups into blocks summing to alpha."""
    if sum(beta) != sum(alpha):
        raise GradeMismatch(sum(beta), sum(alpha), "weights")
    return descent_positions(alpha) <= descent_positions(beta)


def refinements(alpha: Composition) -> List[Composition]:
    """Every beta >= alpha, in canonical order."""
    n = sum(alpha)
    base = descent_positions(alpha)
    return [b for b in compositions(n) if base <= descent_positions(b)]


def coarsenings(beta: Composition) -> List[Composition]:
    """Every alpha <= beta, in canonical order."""
    n = sum(beta)
    top = descent_positions(beta)
    return [a for a in compositions(n) if descent_positions(a) <= top]


def factorizations(alpha: Composition) -> Iterable[Tuple[Composition, ...]]:
    """All ways to cut alpha into consecutive nonempty factors."""
    k = len(alpha)
    if k == 0:
        yield ()
        return
    for cuts in itertools.product((False, True), repeat=k - 1):
        pieces, start = [], 0
        for i, cut in enumerate(cuts, start=1):
            if cut:
                pieces.append(tuple(alpha[start:i]))
                start = i
        pieces.append(tuple(alpha[start:]))
        yield tuple(pieces)


def peak_set(alpha: Sequence[int]) -> FrozenSet[int]:
    """Lambda(alpha) = {i in S_alpha : i != 1 and i-1 not in S_alpha}."""
    if sum(alpha) < 1:
        raise CompositionError("peak set needs a nonempty composition")
    s = descent_positions(alpha)
    return frozenset(i for i in s if i != 1 and i - 1 not in s)


def is_hook(alpha: Sequence[int]) -> bool:
    """alpha = (1^k, n-k) for some k (all parts but the last equal 1)."""
    return len(alpha) >= 1 and all(p == 1 for p in alpha[:-1])


def parse_composition(text: str) -> Composition:
    text = text.strip().strip("[]()")
    if text == "":
        return ()
    try:
        return as_composition(int(tok) for tok in text.replace("_", ",").split(","))
    except ValueError:
        raise SpecSyntaxError(text, "comma-separated positive integers like 2,1")


# --- permutations -----------------------------------------------------------

@cached(LRUCache(maxsize=16), lock=_lock)
def permutations(n: int) -> Tuple[Permutation, ...]:
    return tuple(itertools.permutations(range(1, n + 1)))


def as_permutation(values: Iterable[int]) -> Permutation:
    perm = tuple(int(v) for v in values)
    if sorted(perm) != list(range(1, len(perm) + 1)):
        raise PermutationError(f"{list(perm)} is not a permutation of 1..{len(perm)}")
    return perm


def identity(n: int) -> Permutation:
    return tuple(range(1, n + 1))


def compose(sigma: Permutation, tau: Permutation) -> Permutation:
    """(sigma tau)_i = sigma_{tau_i}."""
    return tuple(sigma[t - 1] for t in tau)


def inverse(sigma: Permutation) -> Permutation:
    inv = [0] * len(sigma)
    for i, s in enumerate(sigma, start=1):
        inv[s - 1] = i
    return tuple(inv)


def descent_set(sigma: Sequence[int]) -> FrozenSet[int]:
    return frozenset(i for i in range(1, len(sigma)) if sigma[i - 1] > sigma[i])


def descent_composition(sigma: Sequence[int]) -> Composition:
    """D(sigma) = co(Des(sigma))."""
    return set_to_comp(descent_set(sigma), len(sigma))


def descent_count(sigma: Sequence[int]) -> int:
    return len(descent_set(sigma))


@cached(LRUCache(maxsize=16), lock=_lock)
def descent_classes(n: int) -> Dict[Composition, Tuple[Permutation, ...]]:
    """Permutations of n grouped by descent composition."""
    classes: Dict[Composition, List[Permutation]] = {a: [] for a in compositions(n)}
    for sigma in permutations(n):
        classes[descent_composition(sigma)].append(sigma)
    return {a: tuple(v) for a, v in classes.items()}


def standardize(values: Sequence) -> Permutation:
    """The permutation with the same relative order as values."""
    if len(set(values)) != len(values):
        raise PermutationError(f"cannot standardize repeated values {list(values)}")
    order = sorted(range(len(values)), key=lambda i: values[i])
    result = [0] * len(values)
    for rank, i in enumerate(order, start=1):
        result[i] = rank
    return tuple(result)


# --- rationals --------------------------------------------------------------

def to_rational(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"not an exact rational: {value!r}")


def parse_rational(text: str) -> Fraction:
    cleaned = text.strip().replace("−", "-")
    try:
        if "/" in cleaned:
            num, den = cleaned.split("/")
            return Fraction(int(num), int(den))
        return Fraction(int(cleaned))
    except (ValueError, ZeroDivisionError):
        raise SpecSyntaxError(text, "an integer or p/q")


def format_rational(value: Fraction) -> str:
    """"p/q" in lowest terms, or "p" for integers."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
