#!/usr/bin/env python3
"""
Shuffle tests: closed forms, brute-force oracles and seeded simulations
checked against the exact rows of K-bar.
"""

import sys
from fractions import Fraction

import numpy as np
import pytest

from characters import char_convolution_power, char_theta, char_vartheta
from combinatorics import compositions, descent_count, inverse, permutations
from endomorphism import k_full, kbar
from errors import ModelError, SpecSyntaxError
from settings import configure, reset
from shuffles import (
    ShuffleModel, bayer_diaconis, delta_bruteforce, exact_row, kbar_ashuffle_column,
    kbar_vartheta_column, parse_model, riffle_arrangement, signed_bruteforce, simulate,
    tchebyshev_column,
)

q = Fraction


@pytest.fixture(autouse=True)
def fresh_settings():
    reset()
    yield
    reset()


def kbar_row(char, n, alpha):
    reduced = kbar(char, n)
    return {beta: reduced[alpha, beta] for beta in compositions(n)}


def test_bayer_diaconis():
    assert bayer_diaconis(3, 2, 0) == q(1, 2)
    assert bayer_diaconis(3, 2, 2) == 0
    for n in range(1, 5):
        assert bayer_diaconis(n, 1, 0) == 1
    with pytest.raises(ModelError):
        bayer_diaconis(3, 2, 3)


def test_bayer_diaconis_matches_k():
    full = k_full(char_convolution_power(3), 4)
    ident = (1, 2, 3, 4)
    for pi in permutations(4):
        # one step from the identity lands on sigma^-1 with probability prob(sigma)
        assert full[ident, pi] == bayer_diaconis(4, 3, descent_count(inverse(pi)))


@pytest.mark.parametrize("a", [1, 2, 3, 4])
def test_bayer_diaconis_is_a_probability_law(a):
    for n in range(1, 8):
        total = sum(bayer_diaconis(n, a, descent_count(inverse(pi))) for pi in permutations(n))
        assert total == 1, (n, a)


def test_bayer_diaconis_matches_k_for_small_a():
    for a in (2, 4):
        for n in (3, 4):
            full = k_full(char_convolution_power(a), n)
            ident = tuple(range(1, n + 1))
            for pi in permutations(n):
                assert full[ident, pi] == bayer_diaconis(n, a, descent_count(inverse(pi)))

def test_ashuffle_column():
    assert kbar_ashuffle_column(3, 2) == {(3,): q(1, 2), (1, 2): q(1, 8), (2, 1): q(1, 8), (1, 1, 1): 0}
    assert kbar_ashuffle_column(4, 1)[(4,)] == 1
    reduced = kbar(char_convolution_power(3), 4)
    assert kbar_ashuffle_column(4, 3) == {a: reduced[a, (4,)] for a in compositions(4)}



def test_ashuffle_column_matches_kbar_up_to_six():
    for a in (2, 3, 4):
        for n in range(1, 7):
            reduced = kbar(char_convolution_power(a), n)
            assert kbar_ashuffle_column(n, a) == {b: reduced[b, (n,)] for b in compositions(n)}

def test_tchebyshev_column():
    assert tchebyshev_column(3, 1) == kbar_row(char_convolution_power(2), 3, (3,))
    assert tchebyshev_column(3, 2) == kbar_row(char_convolution_power(4), 3, (3,))
    assert tchebyshev_column(1, 1) == {(1,): 1}


def test_vartheta_column():
    assert kbar_vartheta_column(3, 2) == {(3,): q(1, 4), (1, 2): q(1, 4), (2, 1): 0, (1, 1, 1): q(1, 4)}
    assert kbar_vartheta_column(3, 1)[(3,)] == 1
    reduced = kbar(char_vartheta(3), 4)
    assert kbar_vartheta_column(4, 3) == {a: reduced[a, (4,)] for a in compositions(4)}


def test_signed_bruteforce():
    assert signed_bruteforce((1, 3, 2), 2) == kbar_row(char_theta(), 3, (2, 1))
    assert signed_bruteforce((1, 2, 3), 2) == {a: q(1, 4) for a in compositions(3)}
    assert signed_bruteforce((1,), 2) == {(1,): 1}
    assert signed_bruteforce((2, 4, 1, 3), 3) == kbar_row(char_vartheta(3), 4, (2, 2))


def test_delta_bruteforce():
    half = [q(1, 2), q(1, 2)]
    assert delta_bruteforce((1, 2, 3), half) == kbar_row(char_convolution_power(2), 3, (3,))
    assert delta_bruteforce((2, 3, 1), [1]) == {a: (1 if a == (2, 1) else 0) for a in compositions(3)}
    third = [q(1, 3)] * 3
    assert delta_bruteforce((3, 2, 1), third) == kbar_row(char_convolution_power(3), 3, (1, 1, 1))



def test_bruteforce_preconditions():
    with pytest.raises(ModelError):
        signed_bruteforce((1, 2, 3), q(1, 2))
    assert signed_bruteforce((2, 1), 1) == {(2,): 0, (1, 1): 1}
    with pytest.raises(ModelError):
        delta_bruteforce((1, 2, 3), [q(1, 2), q(1, 3)])
    with pytest.raises(ModelError):
        delta_bruteforce((1, 2, 3), [q(3, 2), q(-1, 2)])
    with pytest.raises(ModelError):
        delta_bruteforce((1, 2, 3), [])

def test_parse_model():
    assert parse_model("ashuffle:3", 4) == ShuffleModel("ashuffle", 4, a=3)
    assert parse_model("signed:3/2", 3).r == q(3, 2)
    assert parse_model("qs:1/2,1/2", 3).rs == (q(1, 2), q(1, 2))
    assert parse_model("fufd", 3).character().label() == "theta"
    for bad in ["shuffle", "ashuffle", "ashuffle:x", "fufd:2"]:
        with pytest.raises(SpecSyntaxError):
            parse_model(bad, 3)
    with pytest.raises(ModelError):
        parse_model("signed:1/2", 3)
    with pytest.raises(ModelError):
        parse_model("qs:1/2,1/3", 3)


def test_riffle_arrangement_is_a_permutation():
    rng = np.random.default_rng(7)
    for _ in range(20):
        assert sorted(riffle_arrangement(5, 3, rng)) == [1, 2, 3, 4, 5]


def test_exact_row_zero_steps_is_a_point_mass():
    row = exact_row(ShuffleModel("ashuffle", 3), 0, (1, 3, 2))
    assert row[(2, 1)] == 1


@pytest.mark.parametrize("spec,start", [
    ("ashuffle:2", None),
    ("fufd", None),
    ("signed:2", (1, 3, 2)),
    ("qs:1/3,1/3,1/3", (3, 2, 1)),
])
def test_simulation_matches_exact_row(spec, start):
    result = simulate(parse_model(spec, 3), steps=1, trials=200_000, seed=11, start=start)
    assert result.within(4.0), result.table()


def test_fufd_from_identity_is_uniform():
    result = simulate(parse_model("fufd", 3), steps=1, trials=100_000, seed=3)
    assert result.exact == {a: q(1, 4) for a in compositions(3)}
    assert result.within(4.0)


def test_two_steps_and_riffle():
    assert simulate(parse_model("ashuffle:2", 4), steps=2, trials=100_000, seed=5).within(4.0)
    assert simulate(parse_model("riffle:2", 3), steps=1, trials=20_000, seed=5).within(4.0)


@pytest.mark.parametrize("spec,n", [("ashuffle:2", 5), ("fufd", 4)])
def test_million_trial_simulation(spec, n):
    result = simulate(parse_model(spec, n), steps=1, trials=1_000_000, seed=2024)
    assert sum(result.counts.values()) == 1_000_000
    assert result.within(4.0), result.table()


def test_simulation_is_reproducible_and_blocked():
    configure(block_size=30_000)
    first = simulate(parse_model("ashuffle:3", 4), steps=1, trials=100_000, seed=42)
    second = simulate(parse_model("ashuffle:3", 4), steps=1, trials=100_000, seed=42)
    assert first.counts == second.counts
    assert sum(first.counts.values()) == 100_000


def test_simulation_argument_errors():
    with pytest.raises(ModelError):
        simulate(parse_model("fufd", 3), steps=1, trials=0)
    with pytest.raises(ModelError):
        simulate(parse_model("fufd", 3), steps=1, trials=10, start=(2, 1))


if __name__ == "__main__":
    print("🧪 SHUFFLE TESTS")
    print("=" * 50)
    success = pytest.main([__file__, "-q"]) == 0
    print("✅ All shuffle tests passed" if success else "❌ Some shuffle tests failed")
    sys.exit(0 if success else 1)
