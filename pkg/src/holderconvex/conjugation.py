"""The f_{p,q} change of variables and the two Jensen gap functionals.

A positive function f is (p, q)-Jensen convex, i.e.

    f(H_p(x, y)) <= H_q(f(x), f(y)),

exactly when its conjugate f_{p,q} is Jensen convex on the image interval
I_p.  The conjugate is built from the maps t -> t^p (log for p = 0) on the
argument side and v -> sign(q) v^q (log for q = 0) on the value side.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Dict

import numpy as np

from .errors import DomainError
from .power_means import check_parameter, holder_mean

#: Gaps with magnitude at most this fraction of the compared means carry no sign evidence.
SIGN_RTOL = 1e-9

#: Largest |p| for which randomized round trips through t^p are trusted.
MAX_ABS_P = 64


@dataclass(frozen=True)
class Interval:
    """Open interval (lo, hi); either end may be infinite."""

    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise DomainError(f"empty interval ({self.lo}, {self.hi})")

    def __contains__(self, value):
        return self.lo < value < self.hi


POSITIVE_REALS = Interval(0.0, math.inf)


@dataclass(frozen=True)
class ConvexityPair:
    p: float
    q: float

    def __post_init__(self):
        check_parameter(self.p)
        check_parameter(self.q)


@dataclass(frozen=True)
class SampledFunction:
    """A positive function on an open subinterval of the positive reals."""

    evaluator: Callable[[float], float]
    domain: Interval = POSITIVE_REALS
    name: str = "f"
    params: Dict[str, float] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.domain.lo < 0:
            raise DomainError("sampled functions live on subsets of the positive reals")

    def __call__(self, t):
        if t not in self.domain:
            raise DomainError(f"{self.name}: argument {t} outside ({self.domain.lo}, {self.domain.hi})")
        value = self.evaluator(t)
        if not (value > 0 and math.isfinite(value)):
            raise DomainError(f"{self.name}({t}) = {value} is not a positive finite number")
        return value

    def evaluate_array(self, ts):
        """Vectorized evaluation with the same domain and positivity checks."""
        ts = np.asarray(ts, dtype=float)
        if np.any(ts <= self.domain.lo) or np.any(ts >= self.domain.hi):
            raise DomainError(f"{self.name}: sample outside ({self.domain.lo}, {self.domain.hi})")
        try:
            values = np.asarray(self.evaluator(ts), dtype=float)
        except TypeError:
            values = None
        if values is None or values.shape != ts.shape:
            values = np.array([self.evaluator(float(t)) for t in ts.ravel()]).reshape(ts.shape)
        if not np.all((values > 0) & np.isfinite(values)):
            raise DomainError(f"{self.name} is not positive and finite on the samples")
        return values


def _power(t, p):
    return math.log(t) if p == 0 else t ** p


def _unpower(u, p):
    return math.exp(u) if p == 0 else u ** (1.0 / p)


def interval_image(interval: Interval, p) -> Interval:
    """I_p: the image of ``interval`` under t -> t^p, or under log when p == 0."""
    check_parameter(p)
    if interval.lo < 0:
        raise DomainError("interval must lie in the positive reals")
    if p == 0:
        lo = -math.inf if interval.lo == 0 else math.log(interval.lo)
        return Interval(lo, math.log(interval.hi))
    if p > 0:
        return Interval(interval.lo ** p, interval.hi ** p)
    lo = 0.0 if math.isinf(interval.hi) else interval.hi ** p
    hi = math.inf if interval.lo == 0 else interval.lo ** p
    return Interval(lo, hi)


def to_conjugate_coordinate(p, t):
    """Push a point of the original domain into I_p."""
    return _power(t, p)


def conjugate_value(f: SampledFunction, pq: ConvexityPair, u):
    """Evaluate f_{p,q} at ``u`` in I_p."""
    p, q = pq.p, pq.q
    if u not in interval_image(f.domain, p):
        raise DomainError(f"u = {u} lies outside I_p for p = {p}")
    value = f(_unpower(u, p))
    if q == 0:
        return math.log(value)
    return math.copysign(1.0, q) * value ** q


def conjugate(f: SampledFunction, pq: ConvexityPair) -> Callable[[float], float]:
    """f_{p,q} as a one-argument callable."""
    return lambda u: conjugate_value(f, pq, u)


def pq_jensen_gap(f: SampledFunction, pq: ConvexityPair, x, y):
    """H_q(f(x), f(y)) - f(H_p(x, y)); nonnegative everywhere iff f is (p, q)-Jensen convex."""
    fx, fy = f(x), f(y)
    return holder_mean(pq.q, fx, fy) - f(holder_mean(pq.p, x, y))


def pq_gap_scale(f: SampledFunction, pq: ConvexityPair, x, y):
    """Magnitude of the two means compared by :func:`pq_jensen_gap`."""
    return max(holder_mean(pq.q, f(x), f(y)), f(holder_mean(pq.p, x, y)))


def classical_jensen_gap(g: Callable[[float], float], u, v):
    """(g(u) + g(v)) / 2 - g((u + v) / 2)."""
    return (g(u) + g(v)) / 2 - g((u + v) / 2)


def gap_sign(gap, scale, rtol=SIGN_RTOL):
    """+1 / -1 for a gap that clears the tolerance band, 0 when indeterminate."""
    if abs(gap) <= rtol * scale:
        return 0
    return 1 if gap > 0 else -1


# -- test family -----------------------------------------------------------
#
# Members are positive on their domains and cheap to evaluate.  The family
# is what randomized equivalence checks quantify over.

def power_function(beta) -> SampledFunction:
    return SampledFunction(lambda t: t ** beta, POSITIVE_REALS, f"t^{beta}", {"beta": beta})


def exp_affine(a, b, domain: Interval = Interval(1e-3, 10.0)) -> SampledFunction:
    return SampledFunction(lambda t: math.exp(a * t + b), domain, f"exp({a}t+{b})", {"a": a, "b": b})


def piecewise_linear(knots_t, knots_v, name="spline") -> SampledFunction:
    """Linear interpolant through positive knot values."""
    knots_t = np.asarray(knots_t, dtype=float)
    knots_v = np.asarray(knots_v, dtype=float)
    if np.any(np.diff(knots_t) <= 0):
        raise DomainError("knot abscissae must be strictly increasing")
    if np.any(knots_v <= 0):
        raise DomainError("knot values must be positive")
    domain = Interval(float(knots_t[0]), float(knots_t[-1]))
    return SampledFunction(lambda t: float(np.interp(t, knots_t, knots_v)), domain, name)


def convex_spline(rng: np.random.Generator, knots=8, lo=0.1, hi=10.0) -> SampledFunction:
    ts = np.linspace(lo, hi, knots)
    slopes = np.sort(rng.uniform(-2.0, 2.0, knots - 1))
    values = np.concatenate([[0.0], np.cumsum(slopes * np.diff(ts))])
    values += 1.0 - values.min()
    return piecewise_linear(ts, values, "convex-spline")


def concave_spline(rng: np.random.Generator, knots=8, lo=0.1, hi=10.0) -> SampledFunction:
    ts = np.linspace(lo, hi, knots)
    slopes = np.sort(rng.uniform(-2.0, 2.0, knots - 1))[::-1]
    values = np.concatenate([[0.0], np.cumsum(slopes * np.diff(ts))])
    values += 1.0 - values.min()
    return piecewise_linear(ts, values, "concave-spline")


def _random_power(rng):
    return power_function(float(rng.uniform(-3.0, 3.0)))


def _random_exp(rng):
    return exp_affine(float(rng.uniform(-2.0, 2.0)), float(rng.uniform(-2.0, 2.0)))


TEST_FAMILY: Dict[str, Callable[[np.random.Generator], SampledFunction]] = {
    "pow": _random_power,
    "exp": _random_exp,
    "convex-spline": convex_spline,
    "concave-spline": concave_spline,
}


def random_test_function(rng: np.random.Generator) -> SampledFunction:
    """Draw a member of the registered test family."""
    names = sorted(TEST_FAMILY)
    return TEST_FAMILY[names[rng.integers(len(names))]](rng)


def sampling_box(f: SampledFunction, lo=1e-3, hi=1e3):
    """Finite closed box strictly inside the domain of ``f`` for drawing sample points."""
    a = max(f.domain.lo, lo)
    b = min(f.domain.hi, hi)
    width = b - a
    return a + 1e-6 * width, b - 1e-6 * width


def random_points(f: SampledFunction, rng: np.random.Generator, n):
    """``n`` log-uniform points in the sampling box of ``f``."""
    a, b = sampling_box(f)
    return np.exp(rng.uniform(math.log(a), math.log(b), n))
