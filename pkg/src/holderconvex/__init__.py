"""Certification tools for convexity with respect to power means.

Power means and (p, q)-Jensen gaps, exact derivations on Q(t1, ..., tn),
the discontinuous multiplicative function x^alpha exp(d(x)/x) and sampled
regularity probes.
"""
from .conjugation import (
    ConvexityPair,
    Interval,
    SampledFunction,
    classical_jensen_gap,
    conjugate_value,
    interval_image,
    pq_jensen_gap,
)
from .derivation import DerivationSpec, derive, logarithmic_part
from .errors import DomainError, EvaluationError, ParseError, ShapingError
from .formal_field import (
    FormalElement,
    NumericAssignment,
    evaluate_numeric,
    field_arithmetic,
    parse_element,
    partial_derivative,
)
from .pathological import (
    PathologicalFunction,
    PathologicalSpec,
    PoweredElement,
    discontinuity_demo,
    evaluate_F,
    jensen_probe,
    log_F_components,
    shape_pair,
)
from .power_means import holder_mean, weighted_holder_mean
from .regularity import (
    ParameterSet,
    RegionGrid,
    convexity_region_scan,
    image_boundedness_probe,
    support_inequality_check,
)
from .report import ProbeReport

__version__ = "0.1.0"
