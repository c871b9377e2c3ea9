"""
Exact arithmetic in Q(t1, t2)
=============================

Elements print in a form the parser reads back, and derivations act on them
exactly.
"""

# %%
from fractions import Fraction

from holderconvex import DerivationSpec, NumericAssignment, derive, evaluate_numeric, logarithmic_part, parse_element

a = parse_element("(t1^2 - 1)/(t1 - 1)")
b = parse_element("t2/(1 + t1*t2)")
print(a, "|", b, "|", a * b, "|", a / b)

# %%
d = DerivationSpec([1, Fraction(1, 2)])
print(derive(a * b, d))
print(derive(a * b, d) == a * derive(b, d) + b * derive(a, d))

# %%
# the logarithmic part turns products into sums
print(logarithmic_part(a * b, d) == logarithmic_part(a, d) + logarithmic_part(b, d))

# %%
print(evaluate_numeric(1 / parse_element("t1"), NumericAssignment()))
