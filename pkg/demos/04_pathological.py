"""
A discontinuous multiplicative function
=======================================

F(x) = x^alpha exp(d(x)/x) with d(t1) = 1.  F agrees with x^alpha on the
rationals but jumps by exp(1/pi) at t1 = pi, and it still satisfies
F(H_p(x, y)) <= H_{p/alpha}(F(x), F(y)).
"""

# %%
from fractions import Fraction

import numpy as np

from holderconvex import (
    DerivationSpec,
    NumericAssignment,
    PathologicalSpec,
    discontinuity_demo,
    evaluate_F,
    jensen_probe,
    parse_element,
    shape_pair,
)
from holderconvex.pathological import random_field_points

spec = PathologicalSpec(Fraction(2), DerivationSpec([1]), NumericAssignment())
print(evaluate_F(parse_element("t1"), spec))

# %%
report = discontinuity_demo(spec, k_max=8)
for row in report.samples:
    print(row["input"], row["value"])
print(report.fixture_values["jump_factor"])

# %%
p = Fraction(2, 3)
pts = random_field_points(np.random.default_rng(1), 200)
pairs = [shape_pair(pts[2 * i], pts[2 * i + 1], p) for i in range(100)]
probe = jensen_probe(spec, p, pairs)
print(probe.passed, probe.min_gap)
