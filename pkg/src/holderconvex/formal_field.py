"""Exact arithmetic in the rational function field Q(t1, ..., tn).

Elements are kept in a canonical form:

* numerator and denominator have integer coefficients, no common polynomial
  factor and no common integer content,
* the denominator's leading coefficient under graded-lex order
  (t1 > t2 > ...) is positive,
* zero is 0/1,
* the polynomials live in the smallest ring t1..tn that holds them.

With this form, structural equality is field equality.  Polynomial arithmetic and
multivariate gcds come from FLINT (python-flint's fmpz_mpoly); the normal
form, derivatives, printing, parsing and numeric evaluation live here.

The text grammar, which is also what ``str`` prints::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('-' | '+') unary | power
    power  := atom ('^' unary)?          # exponent must be an integer constant
    atom   := INTEGER | 't' | 't' INDEX | '(' expr ')'
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Tuple

import flint
import mpmath

from .errors import DomainError, EvaluationError, ParseError

MAX_EXPONENT = 1000

#: Extra decimal digits carried while evaluating, on top of the requested precision.
GUARD_DIGITS = 10


@lru_cache(maxsize=None)
def _ring(n):
    return flint.fmpz_mpoly_ctx.get(tuple(f"t{i}" for i in range(1, n + 1)), "deglex")


def _nvars(poly):
    return poly.context().nvars()


def _used_generators(poly):
    degrees = poly.degrees()
    for i in range(len(degrees) - 1, -1, -1):
        if degrees[i] > 0:
            return i + 1
    return 0


def _lift(poly, n):
    return poly if _nvars(poly) == n else poly.project_to_context(_ring(n))


class FormalElement:
    """An element of Q(t1, ..., tn) in canonical form.  Immutable."""

    __slots__ = ("_num", "_den", "_hash")

    def __init__(self, num, den=None, _canonical=False):
        if den is None:
            den = num.context().from_dict({(0,) * _nvars(num): 1})
        if _canonical:
            self._num, self._den = num, den
        else:
            self._num, self._den = _normalize(num, den)
        self._hash = None

    # -- construction ------------------------------------------------------

    @classmethod
    def constant(cls, value) -> "FormalElement":
        return _constant(Fraction(value))

    @classmethod
    def generator(cls, i) -> "FormalElement":
        if i < 1:
            raise DomainError(f"generator index must be >= 1, got {i}")
        return cls(_ring(i).gens()[i - 1], _canonical=True)

    @classmethod
    def coerce(cls, value) -> "FormalElement":
        if isinstance(value, FormalElement):
            return value
        if isinstance(value, (int, Fraction)):
            return cls.constant(value)
        raise TypeError(f"cannot coerce {type(value).__name__} into the formal field")

    # -- inspection --------------------------------------------------------

    @property
    def numerator(self):
        """Integer-coefficient numerator polynomial (a FLINT fmpz_mpoly)."""
        return self._num

    @property
    def denominator(self):
        return self._den

    @property
    def ngens(self) -> int:
        return _nvars(self._num)

    def is_zero(self) -> bool:
        return self._num.is_zero()

    def is_constant(self) -> bool:
        return self._num.is_constant() and self._den.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise DomainError(f"{self} is not a rational constant")
        if self.is_zero():
            return Fraction(0)
        return Fraction(int(self._num.leading_coefficient()), int(self._den.leading_coefficient()))

    def degree(self) -> int:
        """Largest total degree of numerator and denominator."""
        return max(_total_degree(self._num), _total_degree(self._den))

    # -- field operations --------------------------------------------------

    def _pair(self, other):
        other = FormalElement.coerce(other)
        n = max(self.ngens, other.ngens)
        return (_lift(self._num, n), _lift(self._den, n), _lift(other._num, n), _lift(other._den, n))

    def __add__(self, other):
        try:
            a, b, c, d = self._pair(other)
        except TypeError:
            return NotImplemented
        if b == d:
            return FormalElement(a + c, b)
        # Henrici: only the common part of the denominators can cancel
        g = b.gcd(d)
        b1, d1 = b / g, d / g
        top = a * d1 + c * b1
        if top.is_zero():
            return FormalElement.constant(0)
        if g.is_constant():
            return FormalElement(*_scale(top, b1 * d), _canonical=True)
        g2 = top.gcd(g)
        return FormalElement(*_scale(top / g2, b1 * (d / g2)), _canonical=True)

    __radd__ = __add__

    def __neg__(self):
        return FormalElement(-self._num, self._den, _canonical=True)

    def __sub__(self, other):
        try:
            return self + (-FormalElement.coerce(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        return FormalElement.coerce(other) - self

    def __mul__(self, other):
        try:
            a, b, c, d = self._pair(other)
        except TypeError:
            return NotImplemented
        if a.is_zero() or c.is_zero():
            return FormalElement.constant(0)
        # cross-cancel; the cofactor products are then coprime
        g1, g2 = a.gcd(d), c.gcd(b)
        return FormalElement(*_scale((a / g1) * (c / g2), (b / g2) * (d / g1)), _canonical=True)

    __rmul__ = __mul__

    def inverse(self) -> "FormalElement":
        if self.is_zero():
            raise DomainError("division by the zero element")
        # already coprime with unit content; only the sign may need fixing
        if self._num.leading_coefficient() < 0:
            return FormalElement(-self._den, -self._num, _canonical=True)
        return FormalElement(self._den, self._num, _canonical=True)

    def __truediv__(self, other):
        try:
            other = FormalElement.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return FormalElement.coerce(other) * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            raise DomainError(f"only integer exponents stay in the field, got {k!r}")
        if abs(k) > MAX_EXPONENT:
            raise DomainError(f"exponent {k} exceeds the supported bound {MAX_EXPONENT}")
        if k < 0:
            return self.inverse() ** (-k)
        # powers of coprime polynomials stay coprime
        return FormalElement(self._num ** k, self._den ** k, _canonical=True)

    # -- comparison and hashing -------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = FormalElement.constant(other)
        if not isinstance(other, FormalElement):
            return NotImplemented
        if self.ngens != other.ngens:
            return False
        return self._num == other._num and self._den == other._den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((_poly_key(self._num), _poly_key(self._den)))
        return self._hash

    # -- printing ---------------------------------------------------------

    def __str__(self):
        num = _format_poly(self._num)
        if self._den.is_one():
            return num
        den = _format_poly(self._den)
        if len(self._num) > 1:
            num = f"({num})"
        if not _is_bare(self._den):
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self):
        return f"FormalElement('{self}')"


def _poly_key(poly):
    return tuple(sorted((tuple(map(int, monom)), int(c)) for monom, c in poly.terms()))


@lru_cache(maxsize=1024)
def _constant(value: Fraction) -> FormalElement:
    ctx = _ring(1)
    num = ctx.from_dict({(0,): value.numerator}) if value else ctx.from_dict({})
    den = ctx.from_dict({(0,): value.denominator if value else 1})
    return FormalElement(num, den, _canonical=True)


def _total_degree(poly):
    return max((sum(m) for m in poly.monoms()), default=0)


def _normalize(num, den):
    if _nvars(num) != _nvars(den):
        n = max(_nvars(num), _nvars(den))
        num, den = _lift(num, n), _lift(den, n)
    if den.is_zero():
        raise DomainError("division by the zero polynomial")
    if num.is_zero():
        return _constant(Fraction(0))._num, _constant(Fraction(0))._den
    g = num.gcd(den)
    if not g.is_one():
        num, den = num / g, den / g
    return _scale(num, den)


def _scale(num, den):
    """Joint integer content 1, positive leading denominator coefficient, fewest generators."""
    content = math.gcd(int(num.content()), int(den.content()))
    if den.leading_coefficient() < 0:
        content = -content
    if content != 1:
        num, den = num / content, den / content
    n = max(1, _used_generators(num), _used_generators(den))
    return _lift(num, n), _lift(den, n)


def _format_monomial(monom):
    parts = []
    for i, e in enumerate(monom, start=1):
        if e == 1:
            parts.append(f"t{i}")
        elif e > 1:
            parts.append(f"t{i}^{e}")
    return "*".join(parts)


def _format_poly(poly):
    if not poly:
        return "0"
    out = []
    for monom, coeff in poly.terms():
        c = int(coeff)
        mono = _format_monomial(monom)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(f"-{body}" if c < 0 else body)
        else:
            out.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(out)


def _is_bare(poly):
    # a denominator that can follow '/' without parentheses
    if len(poly) != 1:
        return False
    monom, coeff = next(iter(poly.terms()))
    if not any(monom):
        return True
    return coeff == 1 and sum(1 for e in monom if e) == 1


# -- parsing ---------------------------------------------------------------

_TOKEN = re.compile(r"(\d+)|(t\d*)|([-+*/^()])")


def _tokenize(text):
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.group(1):
            tokens.append(("int", m.group(1), pos))
        elif m.group(2):
            tokens.append(("gen", m.group(2), pos))
        else:
            tokens.append((m.group(3), m.group(3), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            expected = "end of input" if kind == "end" else repr(kind)
            found = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {expected}, found {found}", tok[2])
        self.i += 1
        return tok

    def expr(self):
        value = self.term()
        while self.peek()[0] in "+-":
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek()[0] in "*/":
            op, _, pos = self.take()
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise ParseError("division by the zero polynomial", pos)
                value = value / rhs
        return value

    def unary(self):
        kind = self.peek()[0]
        if kind == "-":
            self.take()
            return -self.unary()
        if kind == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] != "^":
            return base
        pos = self.take()[2]
        exponent = self.unary()
        if not exponent.is_constant() or exponent.constant_value().denominator != 1:
            raise ParseError(f"non-integer exponent {exponent}", pos)
        k = int(exponent.constant_value())
        if abs(k) > MAX_EXPONENT:
            raise ParseError(f"exponent {k} exceeds {MAX_EXPONENT}", pos)
        if k < 0 and base.is_zero():
            raise ParseError("division by the zero polynomial", pos)
        return base ** k

    def atom(self):
        kind, text, pos = self.take()
        if kind == "int":
            return FormalElement.constant(int(text))
        if kind == "gen":
            index = int(text[1:]) if len(text) > 1 else 1
            if index < 1:
                raise ParseError(f"unknown generator {text!r}", pos)
            return FormalElement.generator(index)
        if kind == "(":
            value = self.expr()
            self.take(")")
            return value
        found = "end of input" if kind == "end" else repr(text)
        raise ParseError(f"unexpected {found}", pos)


def parse_element(text: str) -> FormalElement:
    """Parse an expression over Q(t1, ..., tn) into canonical form."""
    parser = _Parser(text)
    value = parser.expr()
    parser.take("end")
    return value


# -- operations ------------------------------------------------------------

_OPS = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
    "div": lambda a, b: a / b,
}


def field_arithmetic(op: str, a, b) -> FormalElement:
    try:
        fn = _OPS[op]
    except KeyError:
        raise DomainError(f"unknown field operation {op!r}") from None
    return fn(FormalElement.coerce(a), FormalElement.coerce(b))


def partial_derivative(a: FormalElement, i: int) -> FormalElement:
    """d a / d t_i by the quotient rule."""
    if i < 1:
        raise DomainError(f"generator index must be >= 1, got {i}")
    if i > a.ngens:
        return FormalElement.constant(0)
    num, den = a.numerator, a.denominator
    top = num.derivative(i - 1) * den - num * den.derivative(i - 1)
    if not top:
        return FormalElement.constant(0)
    return FormalElement(top, den * den)


# -- numeric shadow ----------------------------------------------------------

PI_50 = "3.14159265358979323846264338327950288419716939937510"

_DEFAULT_CONSTANTS = (mpmath.pi, mpmath.e, mpmath.ln2)


def decimal_constant(index, precision):
    """Decimal string of the default value for generator ``index`` (pi, e, log 2)."""
    with mpmath.workdps(precision + GUARD_DIGITS):
        value = +_DEFAULT_CONSTANTS[index - 1]
        return mpmath.nstr(value, precision, strip_zeros=False)


@dataclass(frozen=True)
class NumericAssignment:
    """Positive real stand-ins for the generators, given as decimal strings.

    ``precision`` is the number of significant decimal digits used for
    evaluation.
    """

    values: Tuple[str, ...] = (PI_50,)
    precision: int = 50

    def __post_init__(self):
        if self.precision < 1:
            raise DomainError("precision must be a positive number of digits")
        for v in self.values:
            if not mpmath.mpf(v) > 0:
                raise DomainError(f"generator values must be positive, got {v}")

    @classmethod
    def default(cls, ngens=1, precision=50) -> "NumericAssignment":
        if ngens > len(_DEFAULT_CONSTANTS):
            raise DomainError(f"no default values for more than {len(_DEFAULT_CONSTANTS)} generators")
        if precision == 50 and ngens == 1:
            return cls()
        return cls(tuple(decimal_constant(i, precision) for i in range(1, ngens + 1)), precision)

    def mp_values(self):
        return [mpmath.mpf(v) for v in self.values]


def _eval_poly(poly, values):
    total = mpmath.mpf(0)
    magnitude = mpmath.mpf(0)
    for monom, coeff in poly.terms():
        term = mpmath.mpf(int(coeff))
        for v, e in zip(values, monom):
            if e:
                term *= v ** int(e)
        total += term
        magnitude += abs(term)
    return total, magnitude


def evaluate_numeric(a: FormalElement, va: NumericAssignment):
    """Numerator over denominator at the assigned generator values, as an mpf."""
    needed = max(_used_generators(a.numerator), _used_generators(a.denominator))
    if needed > len(va.values):
        raise EvaluationError(f"no value assigned to t{needed}")
    with mpmath.workdps(va.precision + GUARD_DIGITS):
        values = va.mp_values()
        num, _ = _eval_poly(a.numerator, values)
        den, den_scale = _eval_poly(a.denominator, values)
        if abs(den) <= mpmath.mpf(10) ** (-va.precision + 4) * den_scale:
            raise EvaluationError(f"denominator of {a} vanishes numerically at the assignment")
        value = num / den
    with mpmath.workdps(va.precision):
        return +value
