"""Command-line front end.

Every subcommand prints one report on standard output (JSON by default, CSV
for ``scan``) and exits with 0 when the run passes, 1 on a mathematical
violation or domain error, and 2 on a usage error.  Random draws come from
numpy's PCG64 generator seeded with ``--seed``, so identical arguments give
byte-identical output.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

import numpy as np

from . import __version__
from .conjugation import (
    ConvexityPair,
    classical_jensen_gap,
    conjugate,
    conjugate_value,
    exp_affine,
    interval_image,
    power_function,
    pq_gap_scale,
    pq_jensen_gap,
    random_points,
    to_conjugate_coordinate,
)
from .derivation import DerivationSpec, derive, logarithmic_part
from .errors import DomainError, EvaluationError, ParseError, ShapingError
from .formal_field import PI_50, NumericAssignment, parse_element, partial_derivative
from .pathological import (
    PathologicalFunction,
    PathologicalSpec,
    PoweredElement,
    discontinuity_demo,
    jensen_probe,
    random_field_points,
    shape_pair,
)
from .power_means import holder_mean
from .regularity import (
    ParameterSet,
    convexity_region_scan,
    image_boundedness_probe,
    random_pairs,
    support_inequality_check,
)
from .report import ProbeReport

_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")
_DECIMAL = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")


class UsageError(Exception):
    pass


def rational(text):
    """``m/n`` or an integer."""
    text = text.strip()
    if not _RATIONAL.match(text):
        raise argparse.ArgumentTypeError(f"expected a rational m/n, got {text!r}")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise argparse.ArgumentTypeError(f"zero denominator in {text!r}") from None


def positive_rational(text):
    value = rational(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive rational, got {text!r}")
    return value


def real(text):
    """A rational ``m/n`` or a decimal, returned as float."""
    text = text.strip()
    if _RATIONAL.match(text):
        return float(rational(text))
    if _DECIMAL.match(text):
        return float(text)
    raise argparse.ArgumentTypeError(f"expected a number, got {text!r}")


def rational_list(text):
    return [rational(part) for part in text.split(",")]


def decimal_list(text):
    parts = [part.strip() for part in text.split(",")]
    for part in parts:
        if not _DECIMAL.match(part):
            raise argparse.ArgumentTypeError(f"expected a decimal, got {part!r}")
    return parts


def real_range(text):
    lo, sep, hi = text.partition(":")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}")
    lo, hi = real(lo), real(hi)
    if not lo < hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def _common(parser, precision=None, fmt="json"):
    parser.add_argument("--seed", type=int, default=0, help="PCG64 seed (default 0)")
    parser.add_argument("--precision", type=int, default=precision, help="decimal digits")
    parser.add_argument("--tol", type=float, default=None, help="tolerance")
    parser.add_argument("--format", choices=["json", "csv"], default=fmt)


def _family_args(parser):
    parser.add_argument("--family", choices=["pow", "exp"], default="pow")
    parser.add_argument("--beta", type=real, default=2.0, help="exponent of t^beta")
    parser.add_argument("--a", type=real, default=1.0, help="slope of exp(a t + b)")
    parser.add_argument("--b", type=real, default=0.0, help="offset of exp(a t + b)")


def _pathological_args(parser):
    parser.add_argument("--alpha", type=positive_rational, default=Fraction(1))
    parser.add_argument("--d", type=rational_list, default=[Fraction(1)], help="d(t1),d(t2),...")
    parser.add_argument("--theta", type=decimal_list, default=None, help="generator values")


def build_parser():
    parser = argparse.ArgumentParser(prog="holderconvex", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mean", help="power mean H_p(x, y)")
    p.add_argument("--p", type=real, required=True)
    p.add_argument("x", type=real)
    p.add_argument("y", type=real)
    _common(p)

    p = sub.add_parser("gap", help="pq Jensen gaps of a test-family function")
    _family_args(p)
    p.add_argument("--p", type=real, required=True)
    p.add_argument("--q", type=real, required=True)
    p.add_argument("--pairs", type=int, default=100)
    p.add_argument("points", type=real, nargs="*", help="explicit x y")
    _common(p)

    p = sub.add_parser("transform", help="table of the conjugate f_{p,q}")
    _family_args(p)
    p.add_argument("--p", type=real, required=True)
    p.add_argument("--q", type=real, required=True)
    p.add_argument("--pairs", type=int, default=11, help="number of table points when none are given")
    p.add_argument("u", type=real, nargs="*")
    _common(p)

    p = sub.add_parser("derive", help="apply a derivation to a field element")
    p.add_argument("--d", type=rational_list, default=[Fraction(1)])
    p.add_argument("expression")
    _common(p)

    p = sub.add_parser("pathological", help="the multiplicative function x^alpha exp(d(x)/x)")
    psub = p.add_subparsers(dest="action", required=True)
    pp = psub.add_parser("probe", help="(p, q)-Jensen gaps on shaped field points")
    _pathological_args(pp)
    pp.add_argument("--p", type=positive_rational, default=Fraction(1))
    pp.add_argument("--q", type=rational, default=None, help="defaults to p/alpha")
    pp.add_argument("--pairs", type=int, default=100)
    _common(pp, precision=50)
    pd = psub.add_parser("demo", help="discontinuity along rational approximants")
    _pathological_args(pd)
    pd.add_argument("--k", type=int, default=8)
    pd.add_argument("--convergents", action="store_true", help="use continued-fraction convergents")
    _common(pd, precision=50)

    p = sub.add_parser("scan", help="(p, q) convexity region of a test-family function")
    _family_args(p)
    p.add_argument("--p-range", type=real_range, default=(0.0, 4.0))
    p.add_argument("--q-range", type=real_range, default=(0.0, 4.0))
    p.add_argument("--res", type=int, default=40)
    p.add_argument("--pairs", type=int, default=200)
    _common(p, fmt="csv")

    p = sub.add_parser("m2", help="support inequality t^beta >= 1 + lambda (t - 1)")
    p.add_argument("--beta", type=real, required=True)
    p.add_argument("--lambda", dest="lam", type=real, required=True)
    p.add_argument("--t-range", type=real_range, default=(1e-2, 1e2))
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--t", type=real, action="append", default=[], help="extra t sample (repeatable)")
    p.add_argument("--pairs", type=int, default=1000)
    _common(p)

    p = sub.add_parser("thmp", help="upper bound of f on the image of p -> H_p(x, y)")
    p.add_argument("--family", choices=["pow", "exp", "pathological"], default="pow")
    p.add_argument("--beta", type=real, default=2.0)
    p.add_argument("--a", type=real, default=1.0)
    p.add_argument("--b", type=real, default=0.0)
    _pathological_args(p)
    p.add_argument("--x", default=None, help="first point (number, or field expression for pathological)")
    p.add_argument("--y", default=None, help="second point")
    p.add_argument("--q", type=real, default=None, help="fixed range order; defaults to p (p/alpha for pathological)")
    p.add_argument("--p-range", type=real_range, default=(-4.0, 4.0))
    p.add_argument("--p-count", type=int, default=100)
    p.add_argument("--p-den", type=int, default=20, help="pathological: sample p = k/p_den")
    _common(p)
    return parser


def _family(args):
    if args.family == "pow":
        return power_function(args.beta)
    return exp_affine(args.a, args.b)


def _spec(args):
    precision = args.precision or 50
    n = len(args.d)
    if args.theta is not None:
        if len(args.theta) < n:
            raise UsageError(f"--theta gives {len(args.theta)} values for {n} generators")
        assignment = NumericAssignment(tuple(args.theta), precision)
    elif n == 1 and precision == 50:
        assignment = NumericAssignment((PI_50,), 50)
    else:
        assignment = NumericAssignment.default(n, precision)
    return PathologicalSpec(args.alpha, DerivationSpec(args.d), assignment)


def _rng(args):
    return np.random.Generator(np.random.PCG64(args.seed))


def cmd_mean(args):
    report = ProbeReport("mean", parameters={"p": args.p, "x": args.x, "y": args.y})
    report.add_sample(f"H_{args.p!r}({args.x!r}, {args.y!r})", holder_mean(args.p, args.x, args.y))
    return report


def cmd_gap(args):
    f = _family(args)
    pq = ConvexityPair(args.p, args.q)
    tol = 1e-9 if args.tol is None else args.tol
    if args.points:
        if len(args.points) != 2:
            raise UsageError("give exactly two points x y")
        pairs = [tuple(args.points)]
    else:
        pairs = [tuple(map(float, pair)) for pair in random_pairs(f, _rng(args), args.pairs)]
    report = ProbeReport(
        "gap",
        parameters={"f": f.name, "p": args.p, "q": args.q, "pairs": len(pairs), "seed": args.seed, "tol": tol},
    )
    for x, y in pairs:
        gap = pq_jensen_gap(f, pq, x, y)
        scale = pq_gap_scale(f, pq, x, y)
        label = f"x={x!r} y={y!r}"
        report.add_sample(label, gap, gap=gap)
        if gap < -tol * scale:
            report.add_violation(label, gap=gap)
    return report


def cmd_transform(args):
    f = _family(args)
    pq = ConvexityPair(args.p, args.q)
    us = list(args.u)
    if not us:
        ts = np.sort(random_points(f, _rng(args), args.pairs))
        us = [to_conjugate_coordinate(args.p, float(t)) for t in ts]
    image = interval_image(f.domain, args.p)
    report = ProbeReport(
        "transform",
        parameters={"f": f.name, "p": args.p, "q": args.q, "I_p": [image.lo, image.hi], "seed": args.seed},
    )
    for u in us:
        report.add_sample(f"u={u!r}", conjugate_value(f, pq, u))
    g = conjugate(f, pq)
    for u, v in zip(us, us[1:]):
        report.samples.append({"input": f"jensen u={u!r} v={v!r}", "value": classical_jensen_gap(g, u, v)})
    return report


def cmd_derive(args):
    d = DerivationSpec(args.d)
    a = parse_element(args.expression)
    report = ProbeReport("derive", parameters={"d": [str(c) for c in d.c], "expression": args.expression})
    report.add_sample("a", str(a))
    report.add_sample("d(a)", str(derive(a, d)))
    if not a.is_zero():
        report.add_sample("d(a)/a", str(logarithmic_part(a, d)))
    for i in range(1, a.ngens + 1):
        report.add_sample(f"da/dt{i}", str(partial_derivative(a, i)))
    return report


def cmd_pathological(args):
    spec = _spec(args)
    if args.action == "demo":
        return discontinuity_demo(spec, args.k, convergents=args.convergents)
    rng = _rng(args)
    points = random_field_points(rng, 2 * args.pairs)
    pairs = [shape_pair(points[2 * i], points[2 * i + 1], args.p) for i in range(args.pairs)]
    report = jensen_probe(spec, args.p, pairs, q=args.q, tol=args.tol)
    report.parameters["pairs"] = args.pairs
    report.parameters["seed"] = args.seed
    return report


def cmd_scan(args):
    f = _family(args)
    tol = 1e-9 if args.tol is None else args.tol
    pairs = random_pairs(f, _rng(args), args.pairs)
    grid = convexity_region_scan(f, args.p_range, args.q_range, args.res, pairs, tol=tol)
    if args.family == "pow":
        direction = 1 if args.beta > 0 else -1 if args.beta < 0 else 0
    else:
        direction = 1 if args.a > 0 else -1 if args.a < 0 else 0
    problems = {"staircase": grid.staircase_violations(direction)}
    if args.family == "pow" and args.beta > 0:
        problems["oracle"] = grid.boundary_violations(lambda p: p / args.beta)
    return grid, problems


def cmd_m2(args):
    ts = list(np.geomspace(*args.t_range, args.samples)) + list(args.t)
    tol = 1e-12 if args.tol is None else args.tol
    return support_inequality_check(args.beta, args.lam, ts, pairs=args.pairs, seed=args.seed, rtol=tol)


def cmd_thmp(args):
    if args.family == "pathological":
        spec = _spec(args)
        f = PathologicalFunction(spec)
        n = args.p_den
        x = PoweredElement(parse_element(args.x or "t1"), n)
        y = PoweredElement(parse_element(args.y or "t1+1"), n)
        samples = [Fraction(k, n) for k in range(1, args.p_count + 1)]
        q_map = spec.companion_order if args.q is None else (lambda p: args.q)
        return image_boundedness_probe(f, x, y, ParameterSet(samples, q_map), tol=args.tol)
    f = _family(args)
    try:
        x = real(args.x) if args.x else 1.0
        y = real(args.y) if args.y else 4.0
    except argparse.ArgumentTypeError as exc:
        raise UsageError(str(exc)) from None
    samples = [float(p) for p in np.linspace(*args.p_range, args.p_count)]
    q_map = (lambda p: p) if args.q is None else (lambda p: args.q)
    return image_boundedness_probe(f, x, y, ParameterSet(samples, q_map), tol=args.tol)


_COMMANDS = {
    "mean": cmd_mean,
    "gap": cmd_gap,
    "transform": cmd_transform,
    "derive": cmd_derive,
    "pathological": cmd_pathological,
    "m2": cmd_m2,
    "thmp": cmd_thmp,
}


def _report_csv(report: ProbeReport) -> str:
    data = report.to_dict()
    lines = ["input,value"]
    for s in data["samples"]:
        lines.append(f"\"{s['input']}\",{s['value']}")
    return "\n".join(lines) + "\n"


def _error_report(command, exc):
    payload = {
        "command": command,
        "error": {"type": type(exc).__name__, "message": str(exc)},
        "pass": False,
    }
    return json.dumps(payload, indent=2) + "\n"


_RANGE_FLAGS = ("--p-range", "--q-range", "--t-range")


def _attach_ranges(argv):
    # argparse reads "-1:1" as an option; glue range values onto their flag
    out = []
    it = iter(argv)
    for item in it:
        if item in _RANGE_FLAGS:
            value = next(it, None)
            out.append(item if value is None else f"{item}={value}")
        else:
            out.append(item)
    return out


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    argv = _attach_ranges(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    command = args.command if args.command != "pathological" else f"pathological {args.action}"
    try:
        if args.command == "scan":
            grid, problems = cmd_scan(args)
            passed = not any(problems.values())
            if args.format == "csv":
                stdout.write(grid.to_csv())
            else:
                payload = json.loads(grid.to_json())
                payload["violations"] = {k: [list(c) for c in v] for k, v in problems.items()}
                payload["pass"] = passed
                stdout.write(json.dumps(payload, indent=2) + "\n")
            if not passed:
                print(f"scan: {sum(map(len, problems.values()))} inconsistent cells", file=stderr)
            return 0 if passed else 1
        report = _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        return 2
    except (DomainError, EvaluationError, ShapingError, ParseError) as exc:
        stdout.write(_error_report(command, exc))
        print(f"{command}: {exc}", file=stderr)
        return 1
    stdout.write(_report_csv(report) if args.format == "csv" else report.to_json())
    return 0 if report.passed else 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
