"""Parallelogram bar loads under a couple applied at the tool.

Moment balance about the coupler: 2 * (F_b cos(alpha)) * (d / 2) = C,
hence F_b = C / (d cos(alpha)). The parallelogram cannot be balanced
when alpha reaches 90 degrees.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidInputError, ParallelogramSingularityError

SINGULAR_ANGLE_TOL_DEG = 1e-9


@dataclass(frozen=True)
class ParallelogramLoad:
    C: float
    alpha: float
    d: float
    S_bar: float

    def __post_init__(self):
        for name in ("C", "alpha", "d", "S_bar"):
            try:
                value = float(getattr(self, name))
            except (TypeError, ValueError):
                raise InvalidInputError(f"{name} must be a number") from None
            if not math.isfinite(value):
                raise InvalidInputError(f"{name} must be finite")
            object.__setattr__(self, name, value)
        if self.C < 0:
            raise InvalidInputError("couple magnitude C must be non-negative")
        if self.d <= 0:
            raise InvalidInputError("bar separation d must be positive")
        if self.S_bar <= 0:
            raise InvalidInputError("bar section must be positive")
        if self.alpha < 0:
            raise InvalidInputError("alpha must be non-negative")
        if not static_balance_check(self.alpha):
            raise ParallelogramSingularityError(
                f"parallelogram singular at alpha = {self.alpha!r} deg: bar force unbounded"
            )


@dataclass(frozen=True)
class StaticsResult:
    F_b: float
    sigma: float
    balanced: bool


def static_balance_check(alpha: float) -> bool:
    return alpha < 90.0 - SINGULAR_ANGLE_TOL_DEG


def bar_stress(F_b: float, S_bar: float) -> float:
    if not S_bar > 0:
        raise InvalidInputError("bar section must be positive")
    return F_b / S_bar


def bar_force(load: ParallelogramLoad) -> StaticsResult:
    if not static_balance_check(load.alpha):
        raise ParallelogramSingularityError(
            f"parallelogram singular at alpha = {load.alpha!r} deg: bar force unbounded"
        )
    F_b = load.C / (load.d * math.cos(math.radians(load.alpha)))
    return StaticsResult(F_b=F_b, sigma=bar_stress(F_b, load.S_bar), balanced=True)
