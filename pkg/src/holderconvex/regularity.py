"""Sampled regularity checks around (p, q)-Jensen convexity.

* :func:`image_boundedness_probe` follows the upper-bound argument behind
  continuity from convexity over many mean orders: f stays below
  max(f(x), f(y)) on the image of the parameter set under p -> H_p(x, y).
* :func:`support_inequality_check` tests m(t) >= 1 + a(t - 1) for power
  functions m(t) = t^beta and linear a(t) = lambda t, and the Jensen
  convexity that inequality implies.
* :func:`convexity_region_scan` classifies a (p, q) grid by the sign of the
  pq Jensen gap over sample pairs.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import mpmath
import numpy as np

from .conjugation import ConvexityPair, SampledFunction, conjugate_value, to_conjugate_coordinate
from .errors import DomainError
from .power_means import holder_mean, holder_mean_array
from .report import ProbeReport

CONVEX = "convex"
NONCONVEX = "nonconvex"
INDETERMINATE = "indeterminate"

#: A cell is nonconvex only when some gap is below -NONCONVEX_MARGIN * tol.
NONCONVEX_MARGIN = 100

MEASURE_NOTE = (
    "positive inner Lebesgue measure of the parameter set cannot be decided from finitely many "
    "samples; this run exhibits the upper bound on the image set, not continuity"
)


@dataclass(frozen=True)
class ParameterSet:
    """Finitely many mean orders p together with their range orders q(p)."""

    samples: Tuple
    q_map: Dict

    def __init__(self, samples: Sequence, q_map):
        samples = tuple(samples)
        if not samples:
            raise DomainError("parameter set is empty")
        if len(set(samples)) != len(samples):
            raise DomainError("parameter samples must be distinct")
        if callable(q_map):
            q_map = {p: q_map(p) for p in samples}
        missing = [p for p in samples if p not in q_map]
        if missing:
            raise DomainError(f"q is undefined at p = {missing[0]}")
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "q_map", dict(q_map))


def _is_pathological(f):
    return hasattr(f, "at_power_mean")


def image_boundedness_probe(f, x, y, params: ParameterSet, tol=None) -> ProbeReport:
    """Check f(H_p(x, y)) <= max(f(x), f(y)) for every sampled p, and that p -> H_p(x, y) increases.

    ``f`` is either a :class:`SampledFunction` with float points ``x, y`` or a
    pathological F (anything with ``at_power_mean``) with powered-element
    points.  Orders with q(p) < 0 are checked for the sign of f_{p,q}
    instead.  ``tol`` is relative to max(f(x), f(y)).
    """
    pathological = _is_pathological(f)
    if pathological:
        precision = f.spec.precision
        with mpmath.workdps(precision):
            rtol = mpmath.mpf(f"1e{10 - precision}") if tol is None else mpmath.mpf(tol)
        xv, yv = f.value(x), f.value(y)
        digits = max(precision, 17)
    else:
        rtol = 1e-9 if tol is None else tol
        xv, yv = x, y
        digits = 17
    report = ProbeReport(
        "thmp",
        parameters={
            "f": getattr(f, "name", "f"),
            "x": str(x),
            "y": str(y),
            "p_count": len(params.samples),
            "tol": rtol,
        },
        digits=digits,
    )
    report.notes.append(MEASURE_NOTE)
    if xv == yv:
        report.add_violation("x = y", reason="degenerate: the image set is the single point x")
        return report

    fx, fy = f(x), f(y)
    bound = max(fx, fy)
    report.fixture_values["max_f_xy"] = bound
    means = []
    for p in sorted(params.samples):
        q = params.q_map[p]
        label = f"p={p}"
        if q < 0:
            if pathological:
                raise DomainError("negative range orders are not supported for the pathological F")
            pair = ConvexityPair(p, q)
            s = holder_mean(p, x, y)
            worst = max(conjugate_value(f, pair, to_conjugate_coordinate(p, t)) for t in (x, y, s))
            report.add_sample(label, worst, q=q, check="f_pq < 0")
            if not worst < 0:
                report.add_violation(label, q=q, f_pq=worst, reason="f_pq must be negative for q < 0")
            means.append((p, s))
            continue
        if pathological:
            s, fs = f.at_power_mean(p, x, y)
        else:
            s = holder_mean(p, x, y)
            fs = f(s)
        margin = bound - fs
        report.add_sample(label, fs, mean=s, q=q, gap=margin)
        if margin < -rtol * bound:
            report.add_violation(label, mean=s, f_mean=fs, bound=bound)
        means.append((p, s))

    for (p0, s0), (p1, s1) in zip(means, means[1:]):
        if not s1 > s0:
            report.add_violation(f"p={p0} -> p={p1}", reason="p -> H_p(x, y) is not strictly increasing")
    return report


def support_inequality_check(beta, lam, t_samples: Sequence[float], pairs=1000, seed=0,
                             rtol=1e-12) -> ProbeReport:
    """Check t^beta >= 1 + lam (t - 1) on ``t_samples``; on success spot-check Jensen convexity of t^beta."""
    ts = [float(t) for t in t_samples]
    if not ts:
        raise DomainError("no t samples")
    if any(not t > 0 for t in ts):
        raise DomainError("t samples must be positive")
    m = lambda t: t ** beta
    report = ProbeReport(
        "m2",
        parameters={"beta": beta, "lambda": lam, "t_count": len(ts), "pairs": pairs, "seed": seed, "tol": rtol},
    )
    for t in ts:
        lhs, rhs = m(t), 1 + lam * (t - 1)
        gap = lhs - rhs
        report.add_sample(f"t={t!r}", lhs, support=rhs, gap=gap)
        if gap < -rtol * max(abs(lhs), abs(rhs)):
            report.add_violation(f"t={t!r}", m=lhs, support=rhs)
    if report.violations:
        report.notes.append("support inequality fails; Jensen spot-check skipped")
        return report

    rng = np.random.default_rng(seed)
    lo, hi = math.log(min(ts)), math.log(max(ts))
    worst = None
    for x, y in np.exp(rng.uniform(lo, hi, (pairs, 2))):
        x, y = float(x), float(y)
        lhs, rhs = m(x) + m(y), 2 * m((x + y) / 2)
        gap = lhs - rhs
        worst = gap if worst is None else min(worst, gap)
        if gap < -rtol * max(lhs, rhs):
            report.add_violation(f"jensen x={x!r} y={y!r}", lhs=lhs, rhs=rhs)
    report.fixture_values["jensen_min_gap"] = worst
    report.notes.append(f"{pairs} Jensen spot-checks of m(x) + m(y) >= 2 m((x + y)/2)")
    return report


@dataclass
class RegionGrid:
    """Verdicts on a (p, q) grid; ``verdicts[i][j]`` belongs to (p_values[i], q_values[j])."""

    p_range: Tuple[float, float]
    q_range: Tuple[float, float]
    resolution: int
    verdicts: List[List[str]] = field(default_factory=list)
    min_gaps: List[List[float]] = field(default_factory=list)
    tol: float = 1e-9

    def __post_init__(self):
        if self.resolution < 2:
            raise DomainError("grid resolution must be at least 2")
        if self.verdicts and (len(self.verdicts) != self.resolution
                              or any(len(row) != self.resolution for row in self.verdicts)):
            raise DomainError("verdict matrix does not match the resolution")

    @property
    def p_values(self) -> np.ndarray:
        return np.linspace(*self.p_range, self.resolution)

    @property
    def q_values(self) -> np.ndarray:
        return np.linspace(*self.q_range, self.resolution)

    @property
    def q_step(self) -> float:
        return (self.q_range[1] - self.q_range[0]) / (self.resolution - 1)

    def staircase_violations(self, p_direction=1) -> List[Tuple[int, int]]:
        """Cells breaking monotonicity of the convex region.

        Convexity at (p, q) must persist for every larger q.  With
        ``p_direction=1`` (increasing f) it must also persist for every smaller
        p; ``-1`` flips that, ``0`` skips the p direction.
        """
        bad = []
        n = self.resolution
        for i in range(n):
            for j in range(n):
                if self.verdicts[i][j] != CONVEX:
                    continue
                if any(self.verdicts[i][k] == NONCONVEX for k in range(j + 1, n)):
                    bad.append((i, j))
                    continue
                others = range(i) if p_direction > 0 else range(i + 1, n) if p_direction < 0 else ()
                if any(self.verdicts[k][j] == NONCONVEX for k in others):
                    bad.append((i, j))
        return bad

    def boundary_violations(self, threshold: Callable[[float], float]) -> List[Tuple[int, int]]:
        """Cells disagreeing with a known boundary q*(p) by more than one q step."""
        bad = []
        step = self.q_step
        for i, p in enumerate(self.p_values):
            thr = threshold(p)
            for j, q in enumerate(self.q_values):
                v = self.verdicts[i][j]
                if q >= thr + step - 1e-12 and v != CONVEX:
                    bad.append((i, j))
                elif q <= thr - step + 1e-12 and v != NONCONVEX:
                    bad.append((i, j))
        return bad

    def rows(self):
        for i, p in enumerate(self.p_values):
            for j, q in enumerate(self.q_values):
                yield float(p), float(q), self.verdicts[i][j]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["p", "q", "verdict"])
        for p, q, v in self.rows():
            writer.writerow([repr(p), repr(q), v])
        return buf.getvalue()

    def to_json(self) -> str:
        payload = {
            "p_range": list(self.p_range),
            "q_range": list(self.q_range),
            "resolution": self.resolution,
            "tol": self.tol,
            "cells": [{"p": p, "q": q, "verdict": v} for p, q, v in self.rows()],
        }
        return json.dumps(payload, indent=2) + "\n"


def random_pairs(f: SampledFunction, rng: np.random.Generator, count, lo=0.1, hi=10.0):
    """``count`` log-uniform pairs inside ``f``'s domain, clipped to [lo, hi]."""
    a = max(lo, f.domain.lo * (1 + 1e-9) + 1e-12)
    b = min(hi, f.domain.hi * (1 - 1e-9))
    return np.exp(rng.uniform(math.log(a), math.log(b), (count, 2)))


def _cell_min_gap(f: SampledFunction, p, q, xs, ys, fx, fy):
    upper = holder_mean_array(q, fx, fy)
    lower = f.evaluate_array(holder_mean_array(p, xs, ys))
    gaps = (upper - lower) / np.maximum(upper, lower)
    return float(gaps.min())


def convexity_region_scan(f: SampledFunction, p_range, q_range, resolution,
                          domain_samples, tol=1e-9) -> RegionGrid:
    """Classify each (p, q) grid cell by the smallest normalized gap over ``domain_samples``.

    convex: every gap >= -tol; nonconvex: some gap < -100 tol; indeterminate
    otherwise.  Gaps are divided by the larger of the two compared means.
    """
    pairs = np.asarray(domain_samples, dtype=float)
    if pairs.ndim != 2 or pairs.shape[1] != 2 or len(pairs) == 0:
        raise DomainError("domain samples must be a nonempty list of (x, y) pairs")
    xs, ys = pairs[:, 0], pairs[:, 1]
    fx, fy = f.evaluate_array(xs), f.evaluate_array(ys)
    grid = RegionGrid(tuple(p_range), tuple(q_range), resolution, tol=tol)
    for p in grid.p_values:
        row, gap_row = [], []
        for q in grid.q_values:
            g = _cell_min_gap(f, p, q, xs, ys, fx, fy)
            gap_row.append(g)
            if g >= -tol:
                row.append(CONVEX)
            elif g < -NONCONVEX_MARGIN * tol:
                row.append(NONCONVEX)
            else:
                row.append(INDETERMINATE)
        grid.verdicts.append(row)
        grid.min_gaps.append(gap_row)
    return grid
