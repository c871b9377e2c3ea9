"""
Sampled regularity checks
=========================

The convex region of t^beta in the (p, q) plane, the support inequality for
multiplicative functions, and the upper bound on the image of p -> H_p(x, y).
"""

# %%
import numpy as np

from holderconvex import ParameterSet, convexity_region_scan, image_boundedness_probe, support_inequality_check
from holderconvex.conjugation import power_function
from holderconvex.regularity import CONVEX, random_pairs

f = power_function(2)
grid = convexity_region_scan(f, (0, 4), (0, 4), 9, random_pairs(f, np.random.default_rng(0), 200))
for p, row in zip(grid.p_values, grid.verdicts):
    print(f"{p:4.1f}", "".join("#" if v == CONVEX else "." for v in row))

# %%
print(support_inequality_check(2, 2, np.geomspace(0.01, 100, 50)).passed)
print(support_inequality_check(0.5, 0.5, [4.0]).violations)

# %%
report = image_boundedness_probe(f, 1.0, 4.0, ParameterSet(np.linspace(-3, 3, 13), lambda p: p / 2))
print(report.passed, report.fixture_values)
