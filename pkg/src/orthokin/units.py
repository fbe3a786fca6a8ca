"""Quantity parsing for CLI arguments: ``100mm`` -> 0.1, ``10Nm`` -> 10.0.

Bare numbers are taken as SI, except angles, which are always degrees.
"""

from __future__ import annotations

import re

from .errors import InvalidInputError

_SCALES = {
    "length": {"": 1.0, "m": 1.0, "cm": 1e-2, "mm": 1e-3},
    "area": {"": 1.0, "m2": 1.0, "cm2": 1e-4, "mm2": 1e-6},
    "torque": {"": 1.0, "nm": 1.0, "n.m": 1.0, "n*m": 1.0, "nmm": 1e-3, "knm": 1e3},
    "angle": {"": 1.0, "deg": 1.0, "rad": 57.29577951308232},
    "force": {"": 1.0, "n": 1.0, "kn": 1e3},
    "stress": {"": 1.0, "pa": 1.0, "kpa": 1e3, "mpa": 1e6},
}

_QUANTITY = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*([A-Za-z][A-Za-z0-9.*²]*)?\s*$")


def parse_quantity(text, kind: str) -> float:
    if isinstance(text, (int, float)):
        return float(text)
    m = _QUANTITY.match(str(text))
    if not m:
        raise InvalidInputError(f"cannot parse {kind} quantity {text!r}")
    unit = (m.group(2) or "").lower().replace("²", "2")
    scales = _SCALES[kind]
    if unit not in scales:
        known = ", ".join(u for u in scales if u)
        raise InvalidInputError(f"unknown {kind} unit {m.group(2)!r} (expected one of: {known})")
    return float(m.group(1)) * scales[unit]
