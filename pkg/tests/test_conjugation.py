import math

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from holderconvex import (
    ConvexityPair,
    DomainError,
    Interval,
    SampledFunction,
    classical_jensen_gap,
    conjugate_value,
    interval_image,
    pq_jensen_gap,
)
from holderconvex.conjugation import (
    conjugate,
    exp_affine,
    gap_sign,
    power_function,
    pq_gap_scale,
    random_points,
    random_test_function,
    to_conjugate_coordinate,
)
from holderconvex.power_means import holder_mean

identity = power_function(1)
square = power_function(2)


@pytest.mark.parametrize("p, expected", [(2, (1, 16)), (0, (0, math.log(4))), (-1, (0.25, 1))])
def test_interval_image_examples(p, expected):
    image = interval_image(Interval(1, 4), p)
    assert (image.lo, image.hi) == pytest.approx(expected)


def test_interval_image_unbounded_ends():
    assert interval_image(Interval(0, math.inf), -2) == Interval(0, math.inf)
    assert interval_image(Interval(0, 1), 0) == Interval(-math.inf, 0)


def test_empty_interval_rejected():
    with pytest.raises(DomainError):
        Interval(2, 2)


def test_conjugate_value_examples():
    assert conjugate_value(square, ConvexityPair(2, 1), 9) == pytest.approx(9)
    assert conjugate_value(identity, ConvexityPair(1, 0), math.e) == pytest.approx(1)
    assert conjugate_value(identity, ConvexityPair(1, -1), 2) == pytest.approx(-0.5)


def test_conjugate_value_four_cases():
    f = power_function(3)
    u = 1.7
    assert conjugate_value(f, ConvexityPair(2, 2), u) == pytest.approx((u ** 0.5) ** 6)
    assert conjugate_value(f, ConvexityPair(0, 2), u) == pytest.approx(math.exp(u) ** 6)
    assert conjugate_value(f, ConvexityPair(2, 0), u) == pytest.approx(3 * math.log(u ** 0.5))
    assert conjugate_value(f, ConvexityPair(0, 0), u) == pytest.approx(3 * u)


def test_conjugate_value_outside_image():
    f = SampledFunction(lambda t: t, Interval(1, 4))
    with pytest.raises(DomainError):
        conjugate_value(f, ConvexityPair(2, 1), 20)
    with pytest.raises(DomainError):
        conjugate_value(f, ConvexityPair(-1, 1), 2)


def test_sampled_function_checks_domain_and_sign():
    f = SampledFunction(lambda t: t - 2, Interval(1, 4))
    with pytest.raises(DomainError):
        f(5)
    with pytest.raises(DomainError):
        f(1.5)


def test_pq_gap_examples():
    assert pq_jensen_gap(identity, ConvexityPair(1, 1), 2, 6) == pytest.approx(0, abs=1e-15)
    assert pq_jensen_gap(square, ConvexityPair(1, 1), 1, 3) == pytest.approx(1)


def test_power_conjugation_identity_symbolic():
    x, y, p, b = sympy.symbols("x y p beta", positive=True)
    mean = lambda r, u, v: ((u ** r + v ** r) / 2) ** (1 / r)
    lhs = mean(p / b, x ** b, y ** b)
    rhs = mean(p, x, y) ** b
    assert sympy.simplify(sympy.powsimp(lhs, force=True) - sympy.powsimp(rhs, force=True)) == 0


def test_power_function_sits_on_its_boundary():
    rng = np.random.default_rng(11)
    for _ in range(500):
        beta = rng.uniform(0.2, 3)
        p = rng.uniform(-8, 8)
        x, y = np.exp(rng.uniform(-3, 3, 2))
        f = power_function(beta)
        pq = ConvexityPair(p, p / beta)
        gap = pq_jensen_gap(f, pq, x, y)
        assert abs(gap) <= 1e-12 * pq_gap_scale(f, pq, x, y)


def test_classical_gap_examples():
    assert classical_jensen_gap(lambda t: t, 0, 4) == 0
    assert classical_jensen_gap(lambda t: t * t, 0, 2) == 1
    g = conjugate(square, ConvexityPair(2, 2))
    # here f_{2,2}(u) = u^2
    expected = (1 + 81) / 2 - 25
    assert classical_jensen_gap(g, 1, 9) == pytest.approx(expected)
    assert classical_jensen_gap(g, 1, 9) >= 0


def test_gap_sign_band():
    assert gap_sign(1e-10, 1.0) == 0
    assert gap_sign(2e-9, 1.0) == 1
    assert gap_sign(-2e-9, 1.0) == -1


def _agreement(f, p, q, x, y):
    pq = ConvexityPair(p, q)
    gap = pq_jensen_gap(f, pq, x, y)
    sign = gap_sign(gap, pq_gap_scale(f, pq, x, y))
    if sign == 0:
        return True
    u, v = to_conjugate_coordinate(p, x), to_conjugate_coordinate(p, y)
    classical = classical_jensen_gap(conjugate(f, pq), u, v)
    return (classical > 0) == (sign > 0)


def test_equivalence_on_random_family_members():
    rng = np.random.default_rng(2024)
    disagreements = 0
    for _ in range(2000):
        f = random_test_function(rng)
        p = rng.uniform(-64, 64) if rng.random() < 0.5 else rng.uniform(-3, 3)
        q = 0.0 if rng.random() < 0.1 else rng.uniform(0, 16)
        p = 0.0 if rng.random() < 0.1 else p
        x, y = random_points(f, rng, 2)
        disagreements += not _agreement(f, p, q, x, y)
    assert disagreements == 0


@settings(max_examples=200, deadline=None)
@given(st.floats(-3, 3), st.floats(-8, 8), st.floats(-8, -0.01), st.floats(1e-2, 1e2))
def test_negative_q_conjugate_is_negative(beta, p, q, t):
    f = power_function(beta)
    u = to_conjugate_coordinate(p, t)
    assert conjugate_value(f, ConvexityPair(p, q), u) < 0


def test_monotone_strengthening_in_q():
    rng = np.random.default_rng(5)
    checked = 0
    for _ in range(3000):
        f = random_test_function(rng)
        p, q = rng.uniform(-5, 5), rng.uniform(0, 8)
        x, y = random_points(f, rng, 2)
        if pq_jensen_gap(f, ConvexityPair(p, q), x, y) < 0:
            continue
        q2 = q + rng.uniform(0, 8)
        tol = 1e-12 * max(f(x), f(y))
        assert pq_jensen_gap(f, ConvexityPair(p, q2), x, y) >= -tol
        checked += 1
    assert checked > 1000


def test_exp_affine_domain():
    f = exp_affine(1, 0)
    assert f(1.0) == pytest.approx(math.e)
    with pytest.raises(DomainError):
        f(20.0)
