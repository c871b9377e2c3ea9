"""
Power means
===========

H_p(x, y) for a handful of orders, the geometric limit and the ordering in p.
"""

# %%
import numpy as np

from holderconvex import holder_mean, weighted_holder_mean
from holderconvex.power_means import holder_mean_array

for p in (-1, 0, 1, 2):
    print(f"H_{p}(2, 8) = {holder_mean(p, 2, 8):.6f}")

# %%
# the geometric mean is the limit p -> 0
for p in (1e-2, 1e-5, 1e-8):
    print(p, holder_mean(p, 2, 8) - 4.0)

# %%
# H_p is increasing in p; extreme orders do not overflow
xs = np.full(3, 1e-3)
ys = np.array([1e-3, 1.0, 1e3])
for p in np.linspace(-64, 64, 5):
    print(p, holder_mean_array(p, xs, ys))

# %%
print(weighted_holder_mean(0, [(1 / 3, 8), (2 / 3, 1)]))
