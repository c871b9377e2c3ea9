"""Structured outcome of a verification run and its JSON/CSV encodings."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional

import mpmath

#: Significant digits used when printing mpf values that carry no precision hint.
DEFAULT_DIGITS = 17


def encode_value(value, digits=DEFAULT_DIGITS):
    """JSON-safe form of a number: floats stay numbers, exact and extended values become strings."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, mpmath.mpf):
        return mpmath.nstr(value, digits, strip_zeros=False, min_fixed=-4, max_fixed=8)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        return value if value == value and abs(value) != float("inf") else repr(value)
    if isinstance(value, dict):
        return {str(k): encode_value(v, digits) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode_value(v, digits) for v in value]
    try:
        return float(value)
    except (TypeError, ValueError):
        return str(value)


@dataclass
class ProbeReport:
    """Per-sample values, the minimum gap, violations and the verdict of one run.

    ``passed`` is derived from ``violations``; it is serialized under the key
    ``pass``.
    """

    command: str
    parameters: Dict[str, Any] = field(default_factory=dict)
    samples: List[Dict[str, Any]] = field(default_factory=list)
    min_gap: Optional[Any] = None
    violations: List[Dict[str, Any]] = field(default_factory=list)
    fixture_values: Dict[str, Any] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)
    digits: int = DEFAULT_DIGITS

    @property
    def passed(self) -> bool:
        return not self.violations

    def add_sample(self, description, value, **extra):
        entry = {"input": description, "value": value}
        entry.update(extra)
        self.samples.append(entry)
        if "gap" in extra:
            gap = extra["gap"]
            if self.min_gap is None or gap < self.min_gap:
                self.min_gap = gap

    def add_violation(self, description, **details):
        entry = {"input": description}
        entry.update(details)
        self.violations.append(entry)

    def to_dict(self):
        enc = lambda v: encode_value(v, self.digits)
        return {
            "command": self.command,
            "parameters": enc(self.parameters),
            "samples": enc(self.samples),
            "min_gap": enc(self.min_gap),
            "violations": enc(self.violations),
            "pass": self.passed,
            "fixture_values": enc(self.fixture_values),
            "notes": list(self.notes),
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2) + "\n"
