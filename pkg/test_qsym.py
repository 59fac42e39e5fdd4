#!/usr/bin/env python3
"""
QSym tests: basis changes, the quasi-shuffle product and the coproduct.
"""

import random
import sys
from fractions import Fraction

import pytest

from combinatorics import compositions

from errors import BasisError, GradeMismatch
from qsym import (
    QSymElement, counit, deconcat_coproduct, f_to_m, fundamental, m_to_f, monomial, one,
    quasi_shuffle_product, tensor_multiply, to_f, to_m,
)


def test_fundamental_to_monomial():
    assert f_to_m(fundamental((1, 1))) == monomial((1, 1))
    assert f_to_m(fundamental((2,))) == QSymElement(2, "M", {(2,): 1, (1, 1): 1})


def test_monomial_to_fundamental():
    assert m_to_f(monomial((2,))) == QSymElement(2, "F", {(2,): 1, (1, 1): -1})


def test_basis_change_inverts():
    x = QSymElement(4, "F", {(2, 2): 3, (1, 3): Fraction(-1, 2), (4,): 1})
    assert to_f(to_m(x)) == x


def test_quasi_shuffle_product():
    assert monomial((1,)) * monomial((2,)) == QSymElement(3, "M", {(1, 2): 1, (2, 1): 1, (3,): 1})
    assert monomial((1,)) * monomial((1,)) == QSymElement(2, "M", {(1, 1): 2, (2,): 1})
    assert one() * monomial((2, 1)) == monomial((2, 1))


def test_product_is_commutative_in_m_basis():
    a, b = monomial((1, 2)), monomial((2,))
    assert quasi_shuffle_product(a, b) == quasi_shuffle_product(b, a)


def test_deconcatenation():
    assert deconcat_coproduct(one()) == {((), ()): 1}
    assert deconcat_coproduct(monomial((2, 1))) == {
        ((), (2, 1)): 1, ((2,), (1,)): 1, ((2, 1), ()): 1,
    }


def test_coproduct_is_multiplicative():
    a, b = monomial((1,)), monomial((2,))
    lhs = deconcat_coproduct(a * b)
    rhs = tensor_multiply(deconcat_coproduct(a), deconcat_coproduct(b))
    assert lhs == rhs


def test_counit():
    assert counit(one()) == 1
    assert counit(monomial((1,))) == 0


def test_errors():
    with pytest.raises(GradeMismatch):
        QSymElement(3, "M", {(2,): 1})
    with pytest.raises(BasisError):
        QSymElement(1, "P", {})
    with pytest.raises(BasisError):
        monomial((1,)) + fundamental((1,))


def random_element(rng, grade):
    coeffs = {a: Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for a in compositions(grade) if rng.random() < 0.6}
    return QSymElement(grade, "M", coeffs)


def split_left(tensor):
    out = {}
    for (a, b), c in tensor.items():
        for (a1, a2), d in deconcat_coproduct(monomial(a)).items():
            out[(a1, a2, b)] = out.get((a1, a2, b), 0) + c * d
    return {k: v for k, v in out.items() if v}


def split_right(tensor):
    out = {}
    for (a, b), c in tensor.items():
        for (b1, b2), d in deconcat_coproduct(monomial(b)).items():
            out[(a, b1, b2)] = out.get((a, b1, b2), 0) + c * d
    return {k: v for k, v in out.items() if v}


def test_product_is_associative_and_commutative_on_random_elements():
    rng = random.Random(2024)
    for _ in range(6):
        x, y, z = (random_element(rng, rng.randint(1, 4)) for _ in range(3))
        assert (x * y) * z == x * (y * z)
        assert x * y == y * x


def test_coproduct_is_coassociative_and_multiplicative_on_random_elements():
    rng = random.Random(7)
    for _ in range(6):
        x, y = random_element(rng, rng.randint(1, 4)), random_element(rng, rng.randint(1, 4))
        delta = deconcat_coproduct(x)
        assert split_left(delta) == split_right(delta)
        assert deconcat_coproduct(x * y) == tensor_multiply(deconcat_coproduct(x), deconcat_coproduct(y))


def test_basis_changes_invert_up_to_grade_8():
    for n in range(1, 9):
        for alpha in compositions(n):
            assert f_to_m(m_to_f(monomial(alpha))) == monomial(alpha)


if __name__ == "__main__":
    print("🧪 QSYM TESTS")
    print("=" * 50)
    success = pytest.main([__file__, "-q"]) == 0
    print("✅ All QSym tests passed" if success else "❌ Some QSym tests failed")
    sys.exit(0 if success else 1)
