from fractions import Fraction

import mpmath
import numpy as np
import pytest

from holderconvex import (
    DerivationSpec,
    DomainError,
    FormalElement,
    NumericAssignment,
    PathologicalFunction,
    PathologicalSpec,
    PoweredElement,
    ShapingError,
    discontinuity_demo,
    evaluate_F,
    jensen_probe,
    log_F_components,
    shape_pair,
)
from holderconvex.pathological import random_field_points

from fixtures import EXP_INV_PI, PI, PI_EXP_INV_PI, PI_SQ, PI_SQ_EXP_INV_PI, PI_SQ_JUMP
from strategies import T1

def spec(alpha=1, c=1, precision=50):
    return PathologicalSpec(Fraction(alpha), DerivationSpec([c]), NumericAssignment(precision=precision))


def close(a, b, rel):
    with mpmath.workdps(80):
        a, b = mpmath.mpf(a), mpmath.mpf(b)
        return abs(a - b) <= mpmath.mpf(rel) * abs(b)


def test_log_F_components():
    assert log_F_components(T1, spec()) == (1, T1, 1 / T1)
    alpha, x, ell = log_F_components(FormalElement.constant(Fraction(3, 2)), spec(alpha=3))
    assert (alpha, x, ell.is_zero()) == (3, FormalElement.constant(Fraction(3, 2)), True)
    assert log_F_components(T1 ** 2, spec())[2] == 2 / T1


def test_log_F_rejects_nonpositive():
    with pytest.raises(DomainError):
        log_F_components(FormalElement.constant(0), spec())
    with pytest.raises(DomainError):
        log_F_components(-T1, spec())


@pytest.mark.parametrize("alpha, c, expected", [(1, 0, PI), (2, 0, PI_SQ), (1, 1, PI_EXP_INV_PI),
                                                (2, 1, PI_SQ_EXP_INV_PI)])
def test_evaluate_F_fixtures(alpha, c, expected):
    assert close(evaluate_F(PoweredElement(T1), spec(alpha, c)), expected, "1e-48")


def test_F_is_multiplicative():
    rng = np.random.default_rng(8)
    s = spec(Fraction(3, 2), 1)
    xs = random_field_points(rng, 40)
    for x, y in zip(xs[::2], xs[1::2]):
        with mpmath.workdps(50):
            product = evaluate_F(x, s) * evaluate_F(y, s)
        assert close(evaluate_F(x * y, s), product, "1e-45")


def test_powered_points_agree_with_field_powers():
    rng = np.random.default_rng(9)
    s = spec(2, 1)
    for _ in range(100):
        base = random_field_points(rng, 1)[0]
        m = int(rng.integers(-7, 8))
        n = int(rng.integers(1, 8))
        with mpmath.workdps(50):
            lhs = evaluate_F(PoweredElement(base, Fraction(m, n)), s) ** n
            rhs = evaluate_F(PoweredElement(base), s) ** m
        assert close(lhs, rhs, "1e-42")


def test_field_power_shaping():
    x = PoweredElement(T1, Fraction(1, 3))
    assert x.field_power(3) == T1
    with pytest.raises(ShapingError, match="shape_pair"):
        x.field_power(2)


def test_shape_pair():
    x, y = shape_pair(T1, T1 + 1, Fraction(2, 3))
    assert x.exponent == 3 and x.field_power(Fraction(2, 3)) == T1 ** 2
    assert y.field_power(Fraction(2, 3)) == (T1 + 1) ** 2


def test_probe_shaping_error():
    with pytest.raises(ShapingError):
        jensen_probe(spec(), Fraction(1, 2), [(PoweredElement(T1), PoweredElement(T1 + 1))])


def test_zero_derivation_sits_on_boundary():
    report = jensen_probe(spec(2, 0), 1, [(PoweredElement(T1), PoweredElement(T1 ** 2))])
    assert report.passed
    assert abs(report.samples[0]["value"]) <= mpmath.mpf("1e-40")


def test_equal_arguments_give_zero_gap():
    report = jensen_probe(spec(1, 1), 1, [(PoweredElement(T1), PoweredElement(T1))])
    assert report.passed and abs(report.min_gap) <= mpmath.mpf("1e-45")


def test_zero_derivation_below_boundary_fails():
    rng = np.random.default_rng(12)
    pts = random_field_points(rng, 40)
    pairs = [shape_pair(a, b, 1) for a, b in zip(pts[::2], pts[1::2]) if a != b]
    report = jensen_probe(spec(2, 0), 1, pairs, q=Fraction(2, 5))
    assert not report.passed
    assert len(report.violations) == len(pairs)


@pytest.mark.parametrize("alpha", [1, 2, Fraction(1, 2)])
def test_probe_passes_on_random_pairs(alpha):
    rng = np.random.default_rng(13)
    pts = random_field_points(rng, 60)
    for p in (1, Fraction(2, 3)):
        pairs = [shape_pair(a, b, p) for a, b in zip(pts[::2], pts[1::2])]
        report = jensen_probe(spec(alpha, 1), p, pairs)
        assert report.passed, report.violations[:3]
        stronger = jensen_probe(spec(alpha, 1), p, pairs, q=Fraction(p) / alpha + 1)
        assert stronger.passed


def test_probe_rejects_nonpositive_p():
    with pytest.raises(DomainError):
        jensen_probe(spec(), 0, [])


def test_at_power_mean_matches_direct_mean():
    fn = PathologicalFunction(spec(1, 0))
    x, y = shape_pair(T1, T1 + 2, Fraction(1, 2))
    mean, value = fn.at_power_mean(Fraction(1, 2), x, y)
    with mpmath.workdps(50):
        pi = mpmath.mpf(PI)
        expected = ((pi + pi + 2) / 2) ** 2
    assert close(mean, expected, "1e-45") and close(value, expected, "1e-45")


def test_demo_fixture():
    report = discontinuity_demo(spec(2, 1), k_max=8)
    fv = report.fixture_values
    assert report.passed
    assert close(fv["jump_factor"], EXP_INV_PI, "1e-40")
    assert close(fv["limit_theta_star_pow_alpha"], PI_SQ, "1e-45")
    assert close(fv["F_theta"], PI_SQ_EXP_INV_PI, "1e-45")
    assert fv["terminal_discrepancy"] >= mpmath.mpf(PI_SQ_JUMP) / 2


def test_demo_jump_is_independent_of_alpha():
    a = discontinuity_demo(spec(1, 1)).fixture_values
    b = discontinuity_demo(spec(2, 1)).fixture_values
    with mpmath.workdps(50):
        ra = a["F_theta"] / a["limit_theta_star_pow_alpha"]
        rb = b["F_theta"] / b["limit_theta_star_pow_alpha"]
        assert abs(ra - rb) <= mpmath.mpf("1e-30")


def test_demo_convergents():
    report = discontinuity_demo(spec(2, 1), k_max=6, convergents=True)
    assert report.passed
    assert report.samples[1]["input"] == "q2=22/7"


def test_demo_refuses_zero_derivation():
    with pytest.raises(DomainError):
        discontinuity_demo(spec(1, 0))
