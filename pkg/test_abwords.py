#!/usr/bin/env python3
"""
ab-word tests: omega_r, the map gamma, and the closed form of vartheta
on the fundamental basis.
"""

import sys
from fractions import Fraction

import pytest

from abwords import (
    all_words, b_statistic, conjugated_row, gamma, hook_factorization, hook_length, omega_r, r_omega,
    vartheta_F_expansion, word_of,
)
from characters import char_vartheta
from combinatorics import compositions, peak_set
from endomorphism import phi_matrix
from errors import InvalidLetter
from qsym import QSymElement, fundamental


def test_omega_on_letters():
    assert omega_r("a", 3) == {"a": 1, "b": 2}
    assert omega_r("ab", 3) == {"ab": 3, "ba": 6}
    assert omega_r("", 3) == {"": 1}


def test_omega_at_one_is_identity():
    for word in all_words(4):
        assert omega_r(word, 1) == {word: 1}


def test_b_then_a_coefficient():
    r = Fraction(3)
    for k in range(4):
        word = "b" * k + "a" * (3 - k)
        assert r_omega(word, r).get("aaa", 0) == r * (r - 1) ** k


def test_gamma():
    assert gamma("aba") == fundamental((2, 2))
    assert gamma("ab") == fundamental((2, 1))
    assert gamma("") == fundamental((1,))
    with pytest.raises(InvalidLetter):
        gamma("abc")


def test_word_of_inverts_gamma():
    for alpha in compositions(5):
        assert gamma(word_of(alpha)) == fundamental(alpha)


@pytest.mark.parametrize("r", [2, 3, Fraction(1, 2)])
def test_conjugated_omega_is_vartheta(r):
    for n in range(1, 5):
        matrix = phi_matrix(char_vartheta(r), n, "F")
        for alpha in compositions(n):
            assert conjugated_row(alpha, r) == QSymElement(n, "F", matrix.row(alpha)), (alpha, r)


def test_hook_factorization():
    assert hook_factorization((1, 1, 2, 1, 1, 3, 4)) == [(1, 1, 2), (1, 1, 3), (4,)]
    assert hook_factorization((1, 1)) == [(1, 1)]
    assert hook_length((2, 1)) == 2
    for alpha in compositions(6):
        assert hook_length(alpha) == len(peak_set(alpha)) + 1


def test_b_statistic():
    assert b_statistic(frozenset(), frozenset()) == 0
    assert b_statistic(frozenset({1}), frozenset()) == 1
    assert b_statistic(frozenset({1}), frozenset({2})) == 1


def test_closed_form_at_zero_is_identity():
    for alpha in compositions(4):
        assert vartheta_F_expansion(alpha, 0) == fundamental(alpha)


@pytest.mark.parametrize("q", [Fraction(1, 3), Fraction(-2), Fraction(5, 7)])
def test_closed_form_matches_matrix(q):
    for n in range(1, 6):
        matrix = phi_matrix(char_vartheta(1 - q), n, "F")
        for beta in compositions(n):
            assert vartheta_F_expansion(beta, q) == QSymElement(n, "F", matrix.row(beta)), (beta, q)


if __name__ == "__main__":
    print("🧪 AB-WORD TESTS")
    print("=" * 50)
    success = pytest.main([__file__, "-q"]) == 0
    print("✅ All ab-word tests passed" if success else "❌ Some ab-word tests failed")
    sys.exit(0 if success else 1)
