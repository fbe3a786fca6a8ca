"""Minimal screw algebra for the pure-translation test.

Screws are stored as (angular; linear) pairs expressed at the tool point.
Only the couple subspace spanned by a set of leg wrench systems is ever
rank-tested, so the choice of reference point does not change any result.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Iterable, Sequence

import numpy as np

from .errors import DegenerateFrameError, InvalidInputError

if TYPE_CHECKING:
    from .model import LegFrame

UNIT_TOL = 1e-9
RANK_RTOL = 1e-9
PARALLEL_TOL = 1e-9


def _vec3(v, name="vector") -> np.ndarray:
    a = np.asarray(v, dtype=float).reshape(-1)
    if a.shape != (3,):
        raise InvalidInputError(f"{name} must have 3 components, got {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InvalidInputError(f"{name} has non-finite components")
    return a


@dataclass(frozen=True)
class Screw:
    angular: np.ndarray
    linear: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self):
        ang = _vec3(self.angular, "angular part").copy()
        lin = _vec3(self.linear, "linear part").copy()
        ang.setflags(write=False)
        lin.setflags(write=False)
        object.__setattr__(self, "angular", ang)
        object.__setattr__(self, "linear", lin)

    @property
    def degenerate(self) -> bool:
        return not (np.any(self.angular) or np.any(self.linear))

    @property
    def is_pure_couple(self) -> bool:
        return not np.any(self.linear) and bool(np.any(self.angular))

    def as_array(self) -> np.ndarray:
        return np.concatenate([self.angular, self.linear])

    def __eq__(self, other):
        if not isinstance(other, Screw):
            return NotImplemented
        return np.array_equal(self.angular, other.angular) and np.array_equal(
            self.linear, other.linear
        )

    def __hash__(self):
        return hash((self.angular.tobytes(), self.linear.tobytes()))


@dataclass(frozen=True)
class WrenchSystem:
    """Screws a leg can transmit passively to the tool."""

    wrenches: tuple[Screw, ...]

    def __post_init__(self):
        object.__setattr__(self, "wrenches", tuple(self.wrenches))

    def couple_axes(self) -> np.ndarray:
        """Angular parts of the pure couples, one per row (shape (k, 3))."""
        rows = [w.angular for w in self.wrenches if w.is_pure_couple]
        if not rows:
            return np.zeros((0, 3))
        return np.vstack(rows)


def pure_couple(axis, magnitude: float = 1.0) -> Screw:
    axis = _vec3(axis, "axis")
    if abs(np.linalg.norm(axis) - 1.0) > UNIT_TOL:
        raise InvalidInputError(f"couple axis must be unit-norm, |axis| = {np.linalg.norm(axis)!r}")
    return Screw(angular=float(magnitude) * axis, linear=np.zeros(3))


def leg_wrench_system(frame: "LegFrame") -> WrenchSystem:
    """Two unit couples: about the rail axis T, and about the normal of plane (T, U)."""
    t = _vec3(frame.T, "T")
    u = _vec3(frame.U, "U")
    for name, v in (("T", t), ("U", u)):
        if abs(np.linalg.norm(v) - 1.0) > UNIT_TOL:
            raise InvalidInputError(f"frame vector {name} is not unit-norm")
    n = np.cross(t, u)
    sin_tu = np.linalg.norm(n)
    if sin_tu < PARALLEL_TOL:
        raise DegenerateFrameError("rail axis T and transverse axis U are parallel")
    return WrenchSystem((pure_couple(t), pure_couple(n / sin_tu)))


def couple_matrix(systems: Iterable[WrenchSystem]) -> np.ndarray:
    blocks = [s.couple_axes() for s in systems]
    if not blocks:
        return np.zeros((0, 3))
    return np.vstack(blocks)


def couple_space_rank(systems: Sequence[WrenchSystem]) -> int:
    m = couple_matrix(systems)
    if m.size == 0:
        return 0
    sv = np.linalg.svd(m, compute_uv=False)
    if sv[0] == 0.0:
        return 0
    return int(np.count_nonzero(sv > sv[0] * RANK_RTOL))


def is_pure_translational(systems: Sequence[WrenchSystem]) -> bool:
    # Rank 3 means every tool rotation is resisted by some leg couple.
    return couple_space_rank(systems) == 3
