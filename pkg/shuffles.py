"""
Card-shuffling views of the chains: closed-form descent laws, exact
brute-force oracles over sign/label patterns, and seeded Monte Carlo.

Every simulated step is a left random walk state -> g o state, so the law
of D(state) after k steps from `start` is row D(start) of K-bar^k.
"""

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, sqrt
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from characters import (
    Character, char_convolution_power, char_evaluation, char_theta, char_vartheta,
)
from combinatorics import (
    Composition, Permutation, as_permutation, compose, compositions, descent_composition,
    descent_positions, identity, parse_rational, standardize, to_rational,
)
from endomorphism import kbar
from errors import ModelError, SpecSyntaxError
from settings import check_cap, get_settings, log

MODEL_GRAMMAR = "ashuffle:A | riffle:A | fufd | signed:R | qs:R1,R2,..."


# --- closed forms ---------------------------------------------------------------

def bayer_diaconis(n: int, a: int, d: int) -> Fraction:
    """binom(n + a - d - 1, n) / a^n for a permutation whose inverse has d descents."""
    if a < 1 or not 0 <= d <= max(n - 1, 0):
        raise ModelError(f"need a >= 1 and 0 <= d <= n-1, got a={a}, d={d}")
    return Fraction(comb(n + a - d - 1, n), a ** n)


def kbar_ashuffle_column(n: int, a: int) -> Dict[Composition, Fraction]:
    """K-bar^{Psi_a}(beta, n) = binom(n + a - l(beta), n) / a^n."""
    return {beta: Fraction(comb(n + a - len(beta), n), a ** n) for beta in compositions(n)}


def tchebyshev_column(n: int, k: int) -> Dict[Composition, Fraction]:
    """Coefficient of F_alpha in U^k(F_n) / 2^(nk): row (n) of (K-bar^{Psi_2})^k."""
    powered = kbar(char_convolution_power(2), n).power(k)
    return {alpha: powered[(n,), alpha] for alpha in compositions(n)}


def kbar_vartheta_column(n: int, r) -> Dict[Composition, Fraction]:
    """r (r-1)^k / r^n on hooks (1^k, n-k), zero elsewhere."""
    r = to_rational(r)
    if r == 0:
        raise ModelError("vartheta column needs r != 0")
    column = {beta: Fraction(0) for beta in compositions(n)}
    for k in range(n):
        column[(1,) * k + (n - k,)] = r * (r - 1) ** k / r ** n
    return column


# --- models -----------------------------------------------------------------------

@dataclass(frozen=True)
class ShuffleModel:
    kind: str
    n: int
    a: int = 2
    r: Fraction = Fraction(2)
    rs: Tuple[Fraction, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.n < 1:
            raise ModelError("deck size must be at least 1")
        if self.kind in ("ashuffle", "riffle") and (int(self.a) != self.a or self.a < 1):
            raise ModelError(f"a-shuffle needs an integer a >= 1, got {self.a}")
        if self.kind == "signed" and self.r < 1:
            raise ModelError(f"weighted signed shuffle needs r >= 1, got {self.r}")
        if self.kind == "qs":
            if not self.rs or any(x < 0 for x in self.rs) or sum(self.rs) != 1:
                raise ModelError("qs sampler needs nonnegative weights summing to 1")
        if self.kind not in ("ashuffle", "riffle", "fufd", "signed", "qs"):
            raise ModelError(f"unknown shuffle model {self.kind!r}")

    def character(self) -> Character:
        if self.kind in ("ashuffle", "riffle"):
            return char_convolution_power(self.a)
        if self.kind == "fufd":
            return char_theta()
        if self.kind == "signed":
            return char_vartheta(self.r)
        return char_evaluation(self.rs)

    def label(self) -> str:
        if self.kind in ("ashuffle", "riffle"):
            return f"{self.kind}:{self.a}"
        if self.kind == "signed":
            return f"signed:{self.r}"
        if self.kind == "qs":
            return "qs:" + ",".join(str(x) for x in self.rs)
        return self.kind


def parse_model(spec: str, n: int) -> ShuffleModel:
    head, _, arg = spec.strip().partition(":")
    head = head.lower()
    try:
        if head in ("ashuffle", "riffle") and arg:
            return ShuffleModel(head, n, a=int(arg))
        if head == "fufd" and not arg:
            return ShuffleModel("fufd", n)
        if head == "signed" and arg:
            return ShuffleModel("signed", n, r=parse_rational(arg))
        if head == "qs" and arg:
            return ShuffleModel("qs", n, rs=tuple(parse_rational(t) for t in arg.split(",")))
    except ValueError:
        pass
    raise SpecSyntaxError(spec, MODEL_GRAMMAR)


def exact_row(model: ShuffleModel, steps: int, start: Permutation) -> Dict[Composition, Fraction]:
    powered = kbar(model.character(), model.n).power(steps)
    alpha = descent_composition(start)
    return {beta: powered[alpha, beta] for beta in compositions(model.n)}


# --- exact oracles ------------------------------------------------------------------

def signed_bruteforce(sigma, r) -> Dict[Composition, Fraction]:
    """Law of D(st(delta_1 sigma_1, ..., delta_n sigma_n)), delta = +1 w.p. 1/r."""
    sigma = as_permutation(sigma)
    n = len(sigma)
    check_cap("brute", n, "signed brute force")
    r = to_rational(r)
    if r < 1:
        raise ModelError(f"signed brute force needs r >= 1, got {r}")
    plus, minus = 1 / r, 1 - 1 / r
    law = {beta: Fraction(0) for beta in compositions(n)}
    for signs in itertools.product((1, -1), repeat=n):
        weight = Fraction(1)
        for s in signs:
            weight *= plus if s == 1 else minus
        if weight:
            beta = descent_composition(standardize([s * v for s, v in zip(signs, sigma)]))
            law[beta] += weight
    return law


def delta_bruteforce(sigma, rs: Sequence) -> Dict[Composition, Fraction]:
    """Law of D(st(sigma_i + delta_i n)) with Prob(delta_i = j - 1) = r_j."""
    sigma = as_permutation(sigma)
    n = len(sigma)
    check_cap("brute", n, "delta brute force")
    rs = [to_rational(x) for x in rs]
    if not rs or any(x < 0 for x in rs) or sum(rs) != 1:
        raise ModelError("delta brute force needs nonnegative weights summing to 1")
    law = {beta: Fraction(0) for beta in compositions(n)}
    for deltas in itertools.product(range(len(rs)), repeat=n):
        weight = Fraction(1)
        for d in deltas:
            weight *= rs[d]
        if weight:
            beta = descent_composition(standardize([v + d * n for v, d in zip(sigma, deltas)]))
            law[beta] += weight
    return law


# --- Monte Carlo ---------------------------------------------------------------------

def _composition_masks(n: int) -> Dict[int, Composition]:
    return {sum(1 << (i - 1) for i in descent_positions(alpha)): alpha for alpha in compositions(n)}


def _descent_masks(states: np.ndarray) -> np.ndarray:
    n = states.shape[1]
    if n == 1:
        return np.zeros(states.shape[0], dtype=np.int64)
    falls = (states[:, :-1] > states[:, 1:]).astype(np.int64)
    return falls @ (1 << np.arange(n - 1, dtype=np.int64))


def _standardize_rows(keys: np.ndarray) -> np.ndarray:
    return np.argsort(np.argsort(keys, axis=1, kind="stable"), axis=1, kind="stable") + 1


def _step(model: ShuffleModel, states: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    trials, n = states.shape
    if model.kind == "ashuffle":
        labels = rng.integers(0, model.a, size=(trials, n))
        return _standardize_rows(states + labels * n)
    if model.kind == "qs":
        weights = np.array([float(x) for x in model.rs])
        labels = rng.choice(len(weights), size=(trials, n), p=weights / weights.sum())
        return _standardize_rows(states + labels * n)
    if model.kind == "signed":
        plus = rng.random((trials, n)) < 1.0 / float(model.r)
        return _standardize_rows(np.where(plus, states, -states))
    if model.kind == "fufd":
        # each card is removed with probability 1/2 and its order reversed on top
        removed = rng.random((trials, n)) < 0.5
        card_keys = np.where(removed, -np.arange(1, n + 1), np.arange(1, n + 1))
        ranks = _standardize_rows(card_keys)
        return np.take_along_axis(ranks, states - 1, axis=1)
    return _riffle_step(model, states, rng)


def riffle_arrangement(n: int, a: int, rng: np.random.Generator) -> Permutation:
    """Cut 1..n into a packets multinomially, then drop cards with probability
    proportional to packet size."""
    sizes = list(rng.multinomial(n, [1.0 / a] * a))
    packets, start = [], 1
    for size in sizes:
        packets.append(list(range(start, start + size)))
        start += size
    deck: List[int] = []
    remaining = n
    while remaining:
        pick = rng.integers(0, remaining)
        for packet in packets:
            if pick < len(packet):
                deck.append(packet.pop(0))
                break
            pick -= len(packet)
        remaining -= 1
    return tuple(deck)


def _riffle_step(model: ShuffleModel, states: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    check_cap("brute", model.n, "cut-and-riffle simulation")
    out = np.empty_like(states)
    for t in range(states.shape[0]):
        rho = riffle_arrangement(model.n, model.a, rng)
        out[t] = compose(rho, tuple(int(v) for v in states[t]))
    return out


def _run_block(model: ShuffleModel, start: Permutation, steps: int, trials: int,
               seed: np.random.SeedSequence) -> np.ndarray:
    rng = np.random.Generator(np.random.Philox(seed))
    states = np.tile(np.array(start, dtype=np.int64), (trials, 1))
    for _ in range(steps):
        states = _step(model, states, rng)
    return np.bincount(_descent_masks(states), minlength=1 << (model.n - 1))


@dataclass
class SimulationResult:
    model: ShuffleModel
    steps: int
    trials: int
    seed: int
    counts: Dict[Composition, int]
    exact: Optional[Dict[Composition, Fraction]] = None

    def frequency(self, alpha: Composition) -> float:
        return self.counts.get(alpha, 0) / self.trials

    def standard_error(self, alpha: Composition) -> float:
        p = float(self.exact[alpha]) if self.exact else self.frequency(alpha)
        return sqrt(p * (1 - p) / self.trials)

    def within(self, sigmas: float = 4.0) -> bool:
        """Every cell within `sigmas` standard errors of the exact law."""
        if self.exact is None:
            return True
        for alpha in compositions(self.model.n):
            p = float(self.exact[alpha])
            tolerance = sigmas * sqrt(p * (1 - p) / self.trials)
            if abs(self.frequency(alpha) - p) > tolerance + 1e-12:
                return False
        return True

    def table(self) -> List[Tuple[Composition, Optional[Fraction], float, float]]:
        return [(alpha, self.exact[alpha] if self.exact else None,
                 self.frequency(alpha), self.standard_error(alpha))
                for alpha in compositions(self.model.n)]


def simulate(model: ShuffleModel, steps: int, trials: int, seed: int = 0,
             start: Permutation = None, with_exact: bool = True) -> SimulationResult:
    """Empirical law of D(state) after `steps` steps from `start` (identity by default)."""
    if trials < 1 or steps < 0:
        raise ModelError("need trials >= 1 and steps >= 0")
    start = as_permutation(start) if start is not None else identity(model.n)
    if len(start) != model.n:
        raise ModelError(f"start permutation has {len(start)} cards, model has {model.n}")
    settings = get_settings()
    blocks = [settings.block_size] * (trials // settings.block_size)
    if trials % settings.block_size:
        blocks.append(trials % settings.block_size)
    seeds = np.random.SeedSequence(seed).spawn(len(blocks))
    log(f"simulating {model.label()} n={model.n}: {trials} trials in {len(blocks)} blocks", "🎲")

    if settings.workers > 1 and len(blocks) > 1:
        with ProcessPoolExecutor(max_workers=settings.workers) as pool:
            parts = list(pool.map(_run_block, [model] * len(blocks), [start] * len(blocks),
                                  [steps] * len(blocks), blocks, seeds))
    else:
        parts = [_run_block(model, start, steps, size, s) for size, s in zip(blocks, seeds)]
    totals = np.sum(parts, axis=0)

    masks = _composition_masks(model.n)
    counts = {masks[m]: int(totals[m]) for m in masks}
    exact = exact_row(model, steps, start) if with_exact else None
    log("simulation finished", "✅")
    return SimulationResult(model, steps, trials, seed, counts, exact)
