"""
(p, q)-Jensen gaps and the conjugate
====================================

f(H_p(x, y)) <= H_q(f(x), f(y)) is checked through the gap
H_q(f(x), f(y)) - f(H_p(x, y)), and compared with the classical Jensen gap
of the conjugate f_{p,q} on I_p.
"""

# %%
import numpy as np

from holderconvex import ConvexityPair, classical_jensen_gap, interval_image, pq_jensen_gap
from holderconvex.conjugation import conjugate, power_function, to_conjugate_coordinate

square = power_function(2)
print(interval_image(square.domain, -1))

# %%
# t^2 is (p, q)-convex exactly when q >= p/2
for q in (0.25, 0.5, 1.0):
    pq = ConvexityPair(1, q)
    print(q, pq_jensen_gap(square, pq, 1.0, 3.0))

# %%
# same sign after conjugation
pq = ConvexityPair(1, 0.25)
g = conjugate(square, pq)
u, v = to_conjugate_coordinate(1, 1.0), to_conjugate_coordinate(1, 3.0)
print(pq_jensen_gap(square, pq, 1.0, 3.0), classical_jensen_gap(g, u, v))

# %%
rng = np.random.default_rng(0)
xs = np.exp(rng.uniform(-3, 3, (5, 2)))
cube = power_function(3)
# on the boundary q = p/3 the gap vanishes up to rounding
print([float(pq_jensen_gap(cube, ConvexityPair(2, 2 / 3), x, y) / max(cube(x), cube(y))) for x, y in xs])
