from fractions import Fraction

import pytest
from hypothesis import given, settings

from holderconvex import DerivationSpec, DomainError, FormalElement, derive, logarithmic_part

from strategies import T1, T2, elements, rationals

zero = FormalElement.constant(0)


@pytest.mark.parametrize("c", [0, 1, Fraction(-3, 7)])
def test_vanishes_on_constants(c):
    d = DerivationSpec([c, 2])
    assert derive(FormalElement.constant(5), d) == zero
    assert logarithmic_part(FormalElement.constant(Fraction(-2, 9)), d) == zero


@pytest.mark.parametrize("c", [1, 3, Fraction(1, 2)])
def test_examples(c):
    d = DerivationSpec([c])
    assert derive(T1 ** 2, d) == 2 * c * T1
    assert derive(T1 / (1 + T1), d) == c / (1 + T1) ** 2
    assert logarithmic_part(T1 ** 2, d) == 2 * c / T1


def test_logarithmic_part_of_product():
    d = DerivationSpec([1])
    assert logarithmic_part(T1 * (1 + T1), d) == 1 / T1 + 1 / (1 + T1)


def test_logarithmic_part_at_zero():
    with pytest.raises(DomainError):
        logarithmic_part(zero, DerivationSpec([1]))


def test_zero_derivation():
    d = DerivationSpec.zero(2)
    assert d.is_zero()
    assert derive(T1 * T2 + T1, d) == zero


def test_generators_past_the_end_are_constants():
    assert derive(T2, DerivationSpec([1])) == zero
    assert derive(T1 * T2, DerivationSpec([0, 1])) == T1


D = DerivationSpec([Fraction(2, 3), -5])


@settings(max_examples=100, deadline=None)
@given(elements(), elements())
def test_additive_and_leibniz(a, b):
    assert derive(a + b, D) == derive(a, D) + derive(b, D)
    assert derive(a * b, D) == a * derive(b, D) + b * derive(a, D)


@settings(max_examples=100, deadline=None)
@given(elements(), rationals())
def test_rational_homogeneity(a, r):
    assert derive(r * a, D) == r * derive(a, D)


@settings(max_examples=100, deadline=None)
@given(elements(), elements())
def test_logarithmic_part_is_additive(a, b):
    if a.is_zero() or b.is_zero():
        return
    assert logarithmic_part(a * b, D) == logarithmic_part(a, D) + logarithmic_part(b, D)
    assert logarithmic_part(a / b, D) == logarithmic_part(a, D) - logarithmic_part(b, D)
    assert logarithmic_part(a, D) == derive(a, D) / a
