#!/usr/bin/env python3
"""
Lyndon straightening tests and the universal matrices A_n.
"""

import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import pytest

from combinatorics import compositions, refines
from errors import CompositionError
from lyndon import (
    _expand, a_matrix, c_column, is_lyndon, lyndon_compositions, lyndon_count, lyndon_expand, realize,
)
from qsym import monomial
from upolynomial import UPolynomial

u1, u2, u3, u12 = (UPolynomial.variable(a) for a in [(1,), (2,), (3,), (1, 2)])
EXAMPLE_U = {(1,): Fraction(2), (2,): Fraction(1, 2), (3,): Fraction(2), (1, 2): Fraction(-1)}


def test_is_lyndon():
    assert not is_lyndon((2, 1))
    assert is_lyndon((1, 2))
    assert is_lyndon((5,))
    assert not is_lyndon((1, 1))
    with pytest.raises(CompositionError):
        is_lyndon(())


def test_lyndon_counts_match_necklaces():
    for n in range(1, 8):
        assert len(lyndon_compositions(n)) == lyndon_count(n)
    assert lyndon_compositions(3) == [(3,), (1, 2)]


def test_straighten_21():
    assert lyndon_expand((2, 1)).expansion == u1 * u2 - u12 - u3


def test_lyndon_word_is_its_own_variable():
    for alpha in [(1,), (1, 2), (1, 1, 2), (1, 3)]:
        assert lyndon_expand(alpha).expansion == UPolynomial.variable(alpha)


def test_straightening_round_trips():
    for n in range(1, 6):
        for beta in compositions(n):
            assert realize(lyndon_expand(beta)) == monomial(beta), beta


def test_a3_entries():
    a3 = a_matrix(3)
    assert a3[(2, 1), (3,)] == u1 * u2 - u12 - u3
    expected = (u1 * u1 * u1).scale(Fraction(1, 6)) - (u1 * u2).scale(Fraction(1, 2)) + u3.scale(Fraction(1, 3))
    assert a3[(1, 1, 1), (3,)] == expected
    assert a3[(1, 2), (2, 1)].is_zero()
    assert str(a3[(2, 1), (3,)]) == "u1*u2 - u12 - u3"


def test_straightening_from_many_threads():
    targets = list(compositions(8))
    _expand.cache.clear()
    with ThreadPoolExecutor(max_workers=8) as pool:
        threaded = list(pool.map(lambda beta: lyndon_expand(beta).expansion, targets))
    _expand.cache.clear()
    assert threaded == [lyndon_expand(beta).expansion for beta in targets]


def test_a2_entry():
    assert a_matrix(2)[(1, 1), (2,)] == (u1 * u1 - u2).scale(Fraction(1, 2))


def test_a_matrix_is_lower_triangular_in_refinement():
    a4 = a_matrix(4)
    for (beta, alpha) in a4.entries:
        assert refines(beta, alpha)


def test_c_column():
    column = c_column(3)
    assert column[(2, 1)] == (u1 * u1 * u1).scale(Fraction(1, 6)) + (u1 * u2).scale(Fraction(1, 2)) - u12 - u3.scale(Fraction(2, 3))
    assert column[(3,)] == (u1 * u1 * u1).scale(Fraction(1, 6)) + (u1 * u2).scale(Fraction(1, 2)) + u3.scale(Fraction(1, 3))
    assert c_column(1)[(1,)] == u1


def test_c_column_at_example_point():
    values = {alpha: poly.evaluate(EXAMPLE_U) for alpha, poly in c_column(3).items()}
    assert values == {(3,): Fraction(5, 2), (1, 2): Fraction(1, 2), (2, 1): Fraction(3, 2),
                      (1, 1, 1): Fraction(3, 2)}


if __name__ == "__main__":
    print("🧪 LYNDON TESTS")
    print("=" * 50)
    success = pytest.main([__file__, "-q"]) == 0
    print("✅ All Lyndon tests passed" if success else "❌ Some Lyndon tests failed")
    sys.exit(0 if success else 1)
