"""Random elements of Q(t1, t2) for property tests."""
from fractions import Fraction

import numpy as np
from hypothesis import strategies as st

from holderconvex import FormalElement

T1 = FormalElement.generator(1)
T2 = FormalElement.generator(2)


def _poly_from(coeffs, gens):
    out = FormalElement.constant(0)
    for (e1, e2), c in coeffs:
        term = FormalElement.constant(c) * gens[0] ** e1
        if len(gens) > 1:
            term = term * gens[1] ** e2
        out = out + term
    return out


def random_polynomial(rng, max_degree=6, max_coeff=1000, ngens=2, terms=4):
    gens = [T1, T2][:ngens]
    coeffs = []
    for _ in range(int(rng.integers(1, terms + 1))):
        e1 = int(rng.integers(0, max_degree + 1))
        e2 = int(rng.integers(0, max_degree - e1 + 1)) if ngens > 1 else 0
        coeffs.append(((e1, e2), int(rng.integers(-max_coeff, max_coeff + 1))))
    return _poly_from(coeffs, gens)


def random_element(rng, max_degree=6, max_coeff=1000, ngens=2, terms=4):
    """P/Q with deg P, deg Q <= max_degree and integer coefficients |c| <= max_coeff."""
    num = random_polynomial(rng, max_degree, max_coeff, ngens, terms)
    while True:
        den = random_polynomial(rng, max_degree, max_coeff, ngens, terms)
        if not den.is_zero():
            return num / den


@st.composite
def elements(draw, max_degree=3, max_coeff=20, ngens=2):
    seed = draw(st.integers(0, 2 ** 32 - 1))
    return random_element(np.random.default_rng(seed), max_degree, max_coeff, ngens, terms=3)


def rationals(bound=50):
    return st.fractions(min_value=-bound, max_value=bound, max_denominator=bound)
