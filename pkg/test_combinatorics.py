#!/usr/bin/env python3
"""
Combinatorics tests: compositions, refinement, descents, peaks,
standardization and the u-polynomial arithmetic.
"""

import sys
from fractions import Fraction

import pytest

from combinatorics import (
    coarsenings, compose, compositions, descent_classes, descent_composition, factorizations,
    format_rational, inverse, is_hook, parse_composition, parse_rational, peak_set, refinements,
    refines, set_to_comp, standardize,
)
from errors import CompositionError, GradeMismatch, MissingVariable, PermutationError, SpecSyntaxError
from upolynomial import ZERO, UPolynomial, var_name


def test_compositions_canonical_order():
    assert compositions(0) == ((),)
    assert compositions(3) == ((3,), (1, 2), (2, 1), (1, 1, 1))
    assert len(compositions(4)) == 8
    assert len(compositions(6)) == 32


def test_refinement_order():
    assert refines((1, 2, 1), (3, 1))
    assert not refines((2, 1), (1, 2))
    assert refines((2, 1), (2, 1))
    with pytest.raises(GradeMismatch):
        refines((2, 1), (2,))


def test_refinements_and_coarsenings_are_dual():
    for alpha in compositions(4):
        for beta in refinements(alpha):
            assert alpha in coarsenings(beta)
    assert refinements((2,)) == [(2,), (1, 1)]
    assert coarsenings((1, 1)) == [(2,), (1, 1)]


def test_set_to_comp():
    assert set_to_comp({1, 2}, 3) == (1, 1, 1)
    assert set_to_comp(set(), 5) == (5,)
    with pytest.raises(CompositionError):
        set_to_comp({4}, 4)


def test_descent_composition():
    assert descent_composition((1, 3, 2)) == (2, 1)
    assert descent_composition((1, 2, 3, 4)) == (4,)
    assert descent_composition((3, 2, 1)) == (1, 1, 1)


def test_descent_classes_partition_s4():
    classes = descent_classes(4)
    assert sum(len(v) for v in classes.values()) == 24
    assert len(classes[(4,)]) == 1
    assert len(classes[(1, 1, 1, 1)]) == 1


def test_peak_set():
    assert peak_set((1, 1, 2, 1, 1, 3, 4)) == frozenset({4, 9})
    assert peak_set((5,)) == frozenset()
    assert peak_set((2, 1)) == frozenset({2})
    with pytest.raises(CompositionError):
        peak_set(())


def test_hooks():
    assert is_hook((1, 1, 3))
    assert is_hook((3,))
    assert not is_hook((2, 1))


def test_factorizations_of_three_parts():
    cuts = list(factorizations((1, 2, 1)))
    assert len(cuts) == 4
    assert ((1,), (2,), (1,)) in cuts
    assert ((1, 2, 1),) in cuts


def test_standardize():
    assert standardize((-2, 1, 3, -4)) == (2, 3, 4, 1)
    assert standardize((2, 3, 1)) == (2, 3, 1)
    assert standardize((10, 5)) == (2, 1)
    with pytest.raises(PermutationError):
        standardize((1, 1))


def test_group_convention():
    sigma, tau = (2, 1, 3), (1, 3, 2)
    assert compose(sigma, tau) == (2, 3, 1)
    assert compose(sigma, inverse(sigma)) == (1, 2, 3)


def test_parsing():
    assert parse_composition("2,1") == (2, 1)
    assert parse_composition("1_2") == (1, 2)
    assert parse_composition("12") == (12,)
    assert parse_rational("−3/6") == Fraction(-1, 2)
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-1, 3)) == "-1/3"
    with pytest.raises(SpecSyntaxError):
        parse_composition("2,x")
    with pytest.raises(SpecSyntaxError):
        parse_rational("1/0")


def test_upolynomial_evaluation():
    u1, u2, u3, u12 = (UPolynomial.variable(a) for a in [(1,), (2,), (3,), (1, 2)])
    poly = u1 * u2 - u12 - u3
    values = {(1,): Fraction(2), (2,): Fraction(1, 2), (3,): Fraction(2), (1, 2): Fraction(-1)}
    assert poly.evaluate(values) == 0
    assert ZERO.evaluate({}) == 0
    assert u3.evaluate({(3,): 2}) == 2
    with pytest.raises(MissingVariable):
        u12.evaluate({(1,): 1})


def test_upolynomial_printing():
    u1, u2, u3 = (UPolynomial.variable(a) for a in [(1,), (2,), (3,)])
    poly = (u1 * u1 * u1).scale(Fraction(1, 6)) - (u1 * u2).scale(Fraction(1, 2)) + u3.scale(Fraction(1, 3))
    assert str(poly) == "1/6*u1^3 - 1/2*u1*u2 + 1/3*u3"
    assert var_name((1, 10)) == "u1_10"
    assert var_name((1, 1, 2)) == "u112"


def test_upolynomial_variables_order_by_weight_then_lex():
    u1, u2, u3, u12 = (UPolynomial.variable(a) for a in [(1,), (2,), (3,), (1, 2)])
    assert str(u1 * u2 - u3 - u12) == "u1*u2 - u12 - u3"
    assert str(u3 * u12 + u1 * u1 * u3) == "u1^2*u3 + u12*u3"
    u4, u13, u112 = (UPolynomial.variable(a) for a in [(4,), (1, 3), (1, 1, 2)])
    assert str(u4 + u13 + u112) == "u112 + u13 + u4"


if __name__ == "__main__":
    print("🧪 COMBINATORICS TESTS")
    print("=" * 50)
    success = pytest.main([__file__, "-q"]) == 0
    print("✅ All combinatorics tests passed" if success else "❌ Some combinatorics tests failed")
    sys.exit(0 if success else 1)
