"""The multiplicative function F(x) = x^alpha * exp(d(x)/x) built from a derivation d.

On the formal field everything about F is exact: log F(x) splits into
alpha * log x plus the logarithmic part l(x) = d(x)/x, and l is additive
over products.  Multiplicativity gives F(x^r) = F(x)^r for rational r, which
is how F is evaluated on rational powers of field elements.  Only the last
step, turning x and l(x) into numbers at the generator assignment, is
approximate; it runs in mpmath at the configured precision plus guard
digits.

Probes take points as :class:`PoweredElement` pairs.  For p = m/n a point
s^r is usable when r*p is an integer, because then (s^r)^p is again a field
element and the p-th power mean of two such points can be pushed through F
exactly.  :func:`shape_pair` builds such points from plain field elements.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

import mpmath
import numpy as np

from .derivation import DerivationSpec, logarithmic_part
from .errors import DomainError, EvaluationError, ShapingError
from .formal_field import GUARD_DIGITS, FormalElement, NumericAssignment, evaluate_numeric
from .power_means import holder_mean, to_mpf
from .report import ProbeReport

#: Precision at or below which results are treated as plain double precision.
DOUBLE_DIGITS = 16


@dataclass(frozen=True)
class PoweredElement:
    """The positive real base^exponent with a field-element base and a rational exponent."""

    base: FormalElement
    exponent: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "base", FormalElement.coerce(self.base))
        object.__setattr__(self, "exponent", Fraction(self.exponent))
        if self.base.is_zero():
            raise DomainError("powered elements need a nonzero base")

    def __mul__(self, other):
        if not isinstance(other, PoweredElement):
            return NotImplemented
        if other.base != self.base:
            raise DomainError("powered elements combine only over a common base")
        return PoweredElement(self.base, self.exponent + other.exponent)

    def power(self, r) -> "PoweredElement":
        return PoweredElement(self.base, self.exponent * Fraction(r))

    def field_power(self, k) -> FormalElement:
        """(base^exponent)^k as a field element; needs exponent*k to be an integer."""
        e = self.exponent * Fraction(k)
        if e.denominator != 1:
            raise ShapingError(
                f"({self})^{k} = ({self.base})^{e} is not a field element; "
                f"supply the point as an n-th power (see shape_pair)"
            )
        return self.base ** int(e)

    def __str__(self):
        if self.exponent == 1:
            return str(self.base)
        return f"({self.base})^({self.exponent})"


@dataclass(frozen=True)
class PathologicalSpec:
    """Parameters of F = x^alpha exp(d(x)/x) and its numeric shadow."""

    alpha: Fraction = Fraction(1)
    d: DerivationSpec = field(default_factory=lambda: DerivationSpec([1]))
    assignment: NumericAssignment = field(default_factory=NumericAssignment)

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        if self.alpha <= 0:
            raise DomainError(f"alpha must be positive, got {self.alpha}")

    @property
    def jensen_convex(self) -> bool:
        """alpha >= 1, where (1, 1/alpha)-convexity implies plain Jensen convexity."""
        return self.alpha >= 1

    @property
    def precision(self) -> int:
        return self.assignment.precision

    def companion_order(self, p) -> Fraction:
        """The range-side mean order p/alpha paired with domain order p."""
        return Fraction(p) / self.alpha

    def _working(self) -> NumericAssignment:
        return NumericAssignment(self.assignment.values, self.precision + GUARD_DIGITS)

    def default_tolerance(self):
        if self.precision <= DOUBLE_DIGITS:
            return None
        with mpmath.workdps(self.precision):
            return mpmath.mpf(f"1e{10 - self.precision}")


def log_F_components(x, spec: PathologicalSpec) -> Tuple[Fraction, FormalElement, FormalElement]:
    """(alpha, x, l(x)) with log F(x) = alpha * log x + l(x)."""
    x = FormalElement.coerce(x)
    if x.is_zero():
        raise DomainError("F is defined on positive reals; got 0")
    if not evaluate_numeric(x, spec._working()) > 0:
        raise DomainError(f"{x} is not positive at the assignment")
    return spec.alpha, x, logarithmic_part(x, spec.d)


def _log_F(x: FormalElement, spec: PathologicalSpec, va: NumericAssignment):
    if x.is_zero():
        raise DomainError("F is defined on positive reals; got 0")
    with mpmath.workdps(va.precision):
        value = evaluate_numeric(x, va)
        if not value > 0:
            raise DomainError(f"{x} is not positive at the assignment")
        ell = logarithmic_part(x, spec.d)
        return to_mpf(spec.alpha) * mpmath.log(value) + evaluate_numeric(ell, va)


def _log_F_powered(x: PoweredElement, spec, va):
    with mpmath.workdps(va.precision):
        return to_mpf(x.exponent) * _log_F(x.base, spec, va)


def evaluate_F(x, spec: PathologicalSpec):
    """F at a field element or at a :class:`PoweredElement`, as an mpf at the precision of ``spec``."""
    if not isinstance(x, PoweredElement):
        x = PoweredElement(x)
    va = spec._working()
    with mpmath.workdps(va.precision):
        value = mpmath.exp(_log_F_powered(x, spec, va))
    with mpmath.workdps(spec.precision):
        return +value


def numeric_value(x, spec: PathologicalSpec):
    """The positive real denoted by a field element or powered element."""
    if not isinstance(x, PoweredElement):
        x = PoweredElement(x)
    va = spec._working()
    with mpmath.workdps(va.precision):
        base = evaluate_numeric(x.base, va)
        if not base > 0:
            raise DomainError(f"{x.base} is not positive at the assignment")
        value = base ** to_mpf(x.exponent)
    with mpmath.workdps(spec.precision):
        return +value


class PathologicalFunction:
    """F as a callable on powered elements, plus exact evaluation at power means."""

    def __init__(self, spec: PathologicalSpec):
        self.spec = spec
        self.name = f"F[alpha={spec.alpha}, d=({spec.d})]"

    def __call__(self, x):
        return evaluate_F(x, self.spec)

    def value(self, x):
        return numeric_value(x, self.spec)

    def mean_point(self, p, x: PoweredElement, y: PoweredElement) -> Tuple[FormalElement, Fraction]:
        """(s, 1/p) with H_p(x, y) = s^(1/p) and s = (x^p + y^p)/2 in the field."""
        p = Fraction(p)
        if p <= 0:
            raise DomainError(f"field-valued power means need p > 0, got {p}")
        s = (x.field_power(p) + y.field_power(p)) / 2
        return s, 1 / p

    def at_power_mean(self, p, x: PoweredElement, y: PoweredElement):
        """(H_p(x, y), F(H_p(x, y))) evaluated through the field point s = (x^p + y^p)/2."""
        s, r = self.mean_point(p, x, y)
        point = PoweredElement(s, r)
        return numeric_value(point, self.spec), evaluate_F(point, self.spec)


def shape_pair(w, z, p) -> Tuple[PoweredElement, PoweredElement]:
    """Points x = w^n, y = z^n for p = m/n, so x^p = w^m and y^p = z^m are field elements."""
    n = Fraction(p).denominator
    return PoweredElement(w, n), PoweredElement(z, n)


def random_field_points(rng: np.random.Generator, count, spec: Optional[PathologicalSpec] = None,
                        max_coeff=9) -> List[FormalElement]:
    """Positive elements (a t1 + b)/(c t1 + e) with small nonnegative integer coefficients.

    One in eight draws is a rational constant, where F reduces to x^alpha.
    """
    points = []
    t = FormalElement.generator(1)
    while len(points) < count:
        a, b, c, e = (int(v) for v in rng.integers(0, max_coeff + 1, 4))
        if rng.random() < 0.125:
            if b and e:
                points.append(FormalElement.constant(Fraction(b, e)))
            continue
        if (a == 0 and b == 0) or (c == 0 and e == 0):
            continue
        points.append((a * t + b) / (c * t + e))
    return points


def jensen_probe(spec: PathologicalSpec, p, pairs: Sequence[Tuple[PoweredElement, PoweredElement]],
                 q=None, tol=None) -> ProbeReport:
    """Gaps H_q(F(x), F(y)) - F(H_p(x, y)) over ``pairs``; q defaults to p/alpha.

    F(H_p(x, y)) is evaluated as F(s)^(1/p) with s = (x^p + y^p)/2 kept in the
    field.  A pair passes when its gap is at least ``-tol``; the default is
    10^(10 - precision) in extended precision and 1e-9 times the compared
    means in double precision.
    """
    p = Fraction(p)
    if p <= 0:
        raise DomainError(f"the probe covers positive rational p, got {p}")
    q = spec.companion_order(p) if q is None else Fraction(q)
    fn = PathologicalFunction(spec)
    va = spec._working()
    abs_tol = spec.default_tolerance() if tol is None else tol
    report = ProbeReport(
        "pathological probe",
        parameters={
            "alpha": spec.alpha,
            "d": [str(c) for c in spec.d.c],
            "theta": list(spec.assignment.values),
            "p": p,
            "q": q,
            "precision": spec.precision,
            "tol": "relative 1e-9" if abs_tol is None else abs_tol,
        },
        digits=max(spec.precision, 17),
    )
    for x, y in pairs:
        s, _ = fn.mean_point(p, x, y)
        with mpmath.workdps(va.precision):
            fx = mpmath.exp(_log_F_powered(x, spec, va))
            fy = mpmath.exp(_log_F_powered(y, spec, va))
            upper = holder_mean(to_mpf(q), fx, fy)
            lower = mpmath.exp(_log_F(s, spec, va) / to_mpf(p))
            gap = upper - lower
            bound = abs_tol if abs_tol is not None else mpmath.mpf("1e-9") * max(upper, lower)
        with mpmath.workdps(spec.precision):
            gap = +gap
        label = f"x={x}; y={y}"
        report.add_sample(label, gap, gap=gap)
        if gap < -bound:
            report.add_violation(label, gap=gap)
    if spec.d.is_zero():
        report.notes.append("zero derivation: F(t) = t^alpha, so q = p/alpha is the equality boundary")
    return report


def _truncations(theta: str, k_max) -> List[Fraction]:
    value = Fraction(theta)
    return [Fraction(int(value * 10 ** k), 10 ** k) for k in range(1, k_max + 1)]


def _convergents(theta: str, k_max) -> List[Fraction]:
    value = Fraction(theta)
    out = []
    h0, h1, k0, k1 = 0, 1, 1, 0
    x = value
    while len(out) < k_max:
        a = x.numerator // x.denominator
        h0, h1 = h1, a * h1 + h0
        k0, k1 = k1, a * k1 + k0
        out.append(Fraction(h1, k1))
        frac = x - a
        if frac == 0:
            break
        x = 1 / frac
    return out


def discontinuity_demo(spec: PathologicalSpec, k_max=8, convergents=False) -> ProbeReport:
    """Compare F on rational approximants q_k of a generator value with F at the generator.

    F(q_k) = q_k^alpha tends to theta*^alpha, while F(t_i) carries the extra
    factor exp(c_i / theta*).  The run passes when the last approximant is
    still at least half the analytic jump away from F(t_i).
    """
    if spec.d.is_zero():
        raise DomainError("the zero derivation gives the continuous F(x) = x^alpha; nothing to demonstrate")
    index = next(i for i, c in enumerate(spec.d.c, start=1) if c)
    if index > len(spec.assignment.values):
        raise EvaluationError(f"no value assigned to t{index}")
    theta_text = spec.assignment.values[index - 1]
    approximants = (_convergents if convergents else _truncations)(theta_text, k_max)
    generator = FormalElement.generator(index)
    va = spec._working()
    with mpmath.workdps(va.precision):
        theta = mpmath.mpf(theta_text)
        limit = theta ** to_mpf(spec.alpha)
        f_theta = evaluate_F(generator, spec)
        jump_factor = mpmath.exp(evaluate_numeric(logarithmic_part(generator, spec.d), va))
        analytic_jump = limit * (jump_factor - 1)
        report = ProbeReport(
            "pathological demo",
            parameters={
                "alpha": spec.alpha,
                "d": [str(c) for c in spec.d.c],
                "theta": list(spec.assignment.values),
                "generator": f"t{index}",
                "k": k_max,
                "approximants": "convergents" if convergents else "truncations",
                "precision": spec.precision,
            },
            digits=max(spec.precision, 17),
        )
        discrepancy = None
        for k, qk in enumerate(approximants, start=1):
            f_qk = evaluate_F(FormalElement.constant(qk), spec)
            discrepancy = abs(f_qk - f_theta)
            report.samples.append({"input": f"q{k}={qk}", "value": f_qk, "distance_to_F_theta": discrepancy})
        with mpmath.workdps(spec.precision):
            report.fixture_values = {
                "theta_star": +theta,
                "limit_theta_star_pow_alpha": +limit,
                "F_theta": +f_theta,
                "jump_factor": +jump_factor,
                "analytic_jump": +analytic_jump,
                "terminal_discrepancy": +discrepancy,
            }
        if discrepancy < abs(analytic_jump) / 2:
            report.add_violation(
                f"q{len(approximants)}", discrepancy=discrepancy, required=abs(analytic_jump) / 2
            )
    report.notes.append("F(q_k) = q_k^alpha exactly, since derivations vanish on rationals")
    return report
