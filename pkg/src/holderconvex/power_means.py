"""Two-variable and weighted power (Hölder) means.

H_p(x, y) = ((x^p + y^p) / 2)^(1/p) for p != 0 and sqrt(x*y) for p == 0.

Evaluation is done relative to a reference value (the larger argument for
p > 0, the smaller for p < 0) so every ratio raised to the p-th power is at
most one.  With a_i = log(v_i / ref) the mean is

    ref * exp(log1p(p * sigma) / p),   sigma = sum_i w_i * expm1(p a_i) / p,

and both quotients are evaluated as expm1(z)/z and log1p(s)/s so nothing
cancels or underflows when |p| is tiny.  The result is finite for any finite
positive inputs.

Both ``float`` and ``mpmath.mpf`` arguments are accepted; the arithmetic
backend follows the argument type, so mpf inputs are evaluated at the
ambient ``mpmath.mp`` precision.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence, Tuple

import mpmath
import numpy as np

from .errors import DomainError

WEIGHT_SUM_RTOL = 1e-12


class _FloatOps:
    log = staticmethod(math.log)
    exp = staticmethod(math.exp)
    expm1 = staticmethod(math.expm1)
    log1p = staticmethod(math.log1p)
    sqrt = staticmethod(math.sqrt)
    convert = staticmethod(float)


def to_mpf(value):
    """Convert a float, int, Fraction or mpf to an mpf at the ambient precision."""
    if isinstance(value, Fraction):
        return mpmath.mpf(value.numerator) / value.denominator
    return mpmath.mpf(value)


class _MpOps:
    log = staticmethod(mpmath.log)
    exp = staticmethod(mpmath.exp)
    expm1 = staticmethod(mpmath.expm1)
    log1p = staticmethod(mpmath.log1p)
    sqrt = staticmethod(mpmath.sqrt)
    convert = staticmethod(to_mpf)


def _ops(*values):
    if any(isinstance(v, mpmath.mpf) for v in values):
        return _MpOps
    return _FloatOps


def check_parameter(p):
    """Validate a mean parameter and return it unchanged."""
    if isinstance(p, (int, Fraction)):
        return p
    if isinstance(p, mpmath.mpf):
        if not mpmath.isfinite(p):
            raise DomainError(f"mean parameter must be finite, got {p}")
        return p
    try:
        finite = math.isfinite(p)
    except TypeError:
        raise DomainError(f"mean parameter must be a real number, got {p!r}") from None
    if not finite:
        raise DomainError(f"mean parameter must be finite, got {p}")
    return p


def _check_positive(*values):
    for v in values:
        if not v > 0:
            raise DomainError(f"power means are defined for positive arguments, got {v}")
        if isinstance(v, float) and math.isinf(v):
            raise DomainError("power means are defined for finite arguments")


def _expm1_ratio(ops, z):
    return ops.expm1(z) / z if z != 0 else 1


def _log1p_ratio(ops, s):
    return ops.log1p(s) / s if s != 0 else 1


def _power_mean_core(ops, p, weights, logs, ref):
    # logs[i] = log(v_i / ref) <= 0 after the sign of p is accounted for
    sigma = sum(w * a * _expm1_ratio(ops, p * a) for w, a in zip(weights, logs))
    return ref * ops.exp(sigma * _log1p_ratio(ops, p * sigma))


def holder_mean(p, x, y):
    """Power mean of order ``p`` of two positive numbers.

    ``p == 0`` selects the geometric mean exactly; tiny nonzero ``p`` uses the
    literal power formula.
    """
    check_parameter(p)
    _check_positive(x, y)
    ops = _ops(p, x, y)
    x, y = ops.convert(x), ops.convert(y)
    lo, hi = (x, y) if x <= y else (y, x)
    if lo == hi:
        return lo
    if p == 0:
        result = ops.sqrt(lo) * ops.sqrt(hi)
    else:
        p = ops.convert(p)
        ref = hi if p > 0 else lo
        log_ref = ops.log(ref)
        logs = [ops.log(lo) - log_ref, ops.log(hi) - log_ref]
        result = _power_mean_core(ops, p, (ops.convert(0.5), ops.convert(0.5)), logs, ref)
    return min(max(result, lo), hi)


def check_weights(entries: Sequence[Tuple[float, float]]):
    """Validate a weight vector given as ``(weight, value)`` pairs."""
    if not entries:
        raise DomainError("weight vector is empty")
    total = 0
    for w, v in entries:
        if not w > 0 or w > 1:
            raise DomainError(f"weights must lie in ]0, 1], got {w}")
        if not v > 0:
            raise DomainError(f"weighted values must be positive, got {v}")
        total += w
    if abs(total - 1) > WEIGHT_SUM_RTOL:
        raise DomainError(f"weights must sum to 1, got {total}")
    return entries


def weighted_holder_mean(p, entries: Sequence[Tuple[float, float]]):
    """Weighted power mean (sum w_i v_i^p)^(1/p), or prod v_i^w_i for p == 0."""
    check_parameter(p)
    check_weights(entries)
    ops = _ops(p, *(c for e in entries for c in e))
    weights = [ops.convert(w) for w, _ in entries]
    values = [ops.convert(v) for _, v in entries]
    lo, hi = min(values), max(values)
    if lo == hi:
        return lo
    # weights are renormalized so a sum off by rounding does not bias the result
    total = sum(weights)
    if p == 0:
        result = ops.exp(sum(w * ops.log(v) for w, v in zip(weights, values)) / total)
    else:
        p = ops.convert(p)
        ref = hi if p > 0 else lo
        log_ref = ops.log(ref)
        logs = [ops.log(v) - log_ref for v in values]
        result = _power_mean_core(ops, p, [w / total for w in weights], logs, ref)
    return min(max(result, lo), hi)


def holder_mean_array(p, x, y):
    """Elementwise :func:`holder_mean` over numpy arrays of positive floats."""
    check_parameter(p)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any(x <= 0) or np.any(y <= 0):
        raise DomainError("power means are defined for positive arguments")
    lo, hi = np.minimum(x, y), np.maximum(x, y)
    if p == 0:
        result = np.sqrt(lo) * np.sqrt(hi)
    else:
        p = float(p)
        ref = hi if p > 0 else lo
        log_ref = np.log(ref)
        sigma = np.zeros_like(ref)
        for v in (lo, hi):
            a = np.log(v) - log_ref
            z = p * a
            with np.errstate(invalid="ignore", divide="ignore"):
                phi = np.where(z != 0, np.expm1(z) / z, 1.0)
            sigma += 0.5 * a * phi
        s = p * sigma
        with np.errstate(invalid="ignore", divide="ignore"):
            psi = np.where(s != 0, np.log1p(s) / s, 1.0)
        result = ref * np.exp(sigma * psi)
    return np.clip(result, lo, hi)
