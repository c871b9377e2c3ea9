"""Derivations of Q(t1, ..., tn) and their logarithmic parts.

A derivation is fixed on the field by its values c_i = d(t_i).  Additivity
and the Leibniz rule d(xy) = x d(y) + y d(x) then force

    d(r) = sum_i (dr/dt_i) * c_i

for every rational function r, and d vanishes on Q.  Restricting c_i to
rationals keeps d(r) inside the field, so every identity below is exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple

from .errors import DomainError
from .formal_field import FormalElement, _scale


@dataclass(frozen=True)
class DerivationSpec:
    """The values d(t_1), ..., d(t_n); generators past the end are sent to 0."""

    c: Tuple[Fraction, ...]

    def __init__(self, c: Sequence):
        object.__setattr__(self, "c", tuple(Fraction(v) for v in c))

    @classmethod
    def zero(cls, n=1) -> "DerivationSpec":
        return cls([0] * n)

    def is_zero(self) -> bool:
        return not any(self.c)

    def __str__(self):
        return ",".join(str(v) for v in self.c)


def _integer_weights(d: DerivationSpec):
    # L and the integers L*c_i, so that L*d maps Z[t] into Z[t]
    lcm = math.lcm(*(c.denominator for c in d.c)) if d.c else 1
    return lcm, [int(c * lcm) for c in d.c]


def _derive_poly(poly, weights):
    # sum_i w_i * dP/dt_i on a single polynomial
    out = poly.context().from_dict({})
    for i, w in enumerate(weights[: poly.context().nvars()]):
        if w:
            out += poly.derivative(i) * w
    return out


def _reduced(num, den, *shared):
    # num/den is already in lowest terms when every polynomial in ``shared``
    # is constant; otherwise fall back to full normalization
    if all(g.is_constant() for g in shared):
        return FormalElement(*_scale(num, den), _canonical=True)
    return FormalElement(num, den)


def derive(a: FormalElement, d: DerivationSpec) -> FormalElement:
    """d(a) for the derivation with d(t_i) = c_i.

    With a = P/Q and g = gcd(Q, d(Q)) this is (d(P) Q/g - P d(Q)/g) / (Q^2/g),
    the quotient rule applied to sum_i c_i * da/dt_i.
    """
    lcm, weights = _integer_weights(d)
    num, den = a.numerator, a.denominator
    dnum, dden = _derive_poly(num, weights), _derive_poly(den, weights)
    if dden.is_zero():
        if dnum.is_zero():
            return FormalElement.constant(0)
        return _reduced(dnum, den * lcm, dnum.gcd(den))
    g = den.gcd(dden)
    den1 = den / g
    top = dnum * den1 - num * (dden / g)
    if top.is_zero():
        return FormalElement.constant(0)
    return _reduced(top, den * den1 * lcm, g)


def logarithmic_part(a: FormalElement, d: DerivationSpec) -> FormalElement:
    """l(a) = d(a) / a, which turns products into sums."""
    if a.is_zero():
        raise DomainError("the logarithmic part is undefined at 0")
    lcm, weights = _integer_weights(d)
    num, den = a.numerator, a.denominator
    dnum, dden = _derive_poly(num, weights), _derive_poly(den, weights)
    top = dnum * den - num * dden
    if top.is_zero():
        return FormalElement.constant(0)
    # l(P/Q) = d(P)/P - d(Q)/Q with P, Q coprime
    g_num = num.gcd(dnum) if not dnum.is_zero() else num
    g_den = den.gcd(dden) if not dden.is_zero() else den
    return _reduced(top, num * den * lcm, g_num, g_den)
