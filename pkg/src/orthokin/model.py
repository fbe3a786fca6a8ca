"""Geometric description of the Orthoglide and of the 2-PRR biglide fixture.

The platform is reduced to the tool point P. Leg i has its foot point at
rho_i * e_i on rail i and a bar of length L to P, so every leg satisfies
|P - rho_i e_i| = L. The isotropic configuration sits at P = 0 with
rho = (L, L, L), where each bar points straight back along its rail.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .errors import InconsistentConfigurationError, InvalidInputError

ORTHO_TOL = 1e-9
CONSTRAINT_RTOL = 1e-6


class LegVariant(str, enum.Enum):
    V1_STAR = "V1_STAR"
    V2_INTERMEDIATE = "V2_INTERMEDIATE"
    V3_ORTHOGLIDE = "V3_ORTHOGLIDE"


def _readonly(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


def _finite3(v, name) -> np.ndarray:
    a = np.asarray(v, dtype=float).reshape(-1)
    if a.shape != (3,):
        raise InvalidInputError(f"{name} must have 3 components")
    if not np.all(np.isfinite(a)):
        raise InvalidInputError(f"{name} has non-finite components")
    return a


@dataclass(frozen=True)
class OrthoglideGeometry:
    bar_length: float = 1.0
    rail_axes: np.ndarray = field(default_factory=lambda: np.eye(3))
    parallelogram_width: float = 0.1
    bar_section: float = 1.44e-4
    leg_variant: LegVariant = LegVariant.V3_ORTHOGLIDE
    joint_limits: np.ndarray | None = None
    alpha_max: float = 14.0

    def __post_init__(self):
        if not self.bar_length > 0:
            raise InvalidInputError("bar_length must be positive")
        if not self.parallelogram_width > 0:
            raise InvalidInputError("parallelogram_width must be positive")
        if not self.bar_section > 0:
            raise InvalidInputError("bar_section must be positive")
        if not 0.0 < self.alpha_max < 90.0:
            raise InvalidInputError("alpha_max must lie in (0, 90) degrees")
        try:
            variant = LegVariant(self.leg_variant)
        except ValueError:
            raise InvalidInputError(f"unknown leg variant {self.leg_variant!r}") from None

        axes = np.asarray(self.rail_axes, dtype=float)
        if axes.shape != (3, 3) or not np.all(np.isfinite(axes)):
            raise InvalidInputError("rail_axes must be three finite 3-vectors")
        if np.max(np.abs(axes @ axes.T - np.eye(3))) > ORTHO_TOL:
            raise InvalidInputError("rail axes must be pairwise orthogonal unit vectors")

        if self.joint_limits is None:
            limits = np.tile([0.0, 2.0 * self.bar_length], (3, 1))
        else:
            limits = np.asarray(self.joint_limits, dtype=float)
        if limits.shape != (3, 2) or not np.all(limits[:, 0] < limits[:, 1]):
            raise InvalidInputError("joint_limits must be three [lo, hi] pairs with lo < hi")

        object.__setattr__(self, "bar_length", float(self.bar_length))
        object.__setattr__(self, "parallelogram_width", float(self.parallelogram_width))
        object.__setattr__(self, "bar_section", float(self.bar_section))
        object.__setattr__(self, "alpha_max", float(self.alpha_max))
        object.__setattr__(self, "leg_variant", variant)
        object.__setattr__(self, "rail_axes", _readonly(axes))
        object.__setattr__(self, "joint_limits", _readonly(limits))

    def rail(self, leg: int) -> np.ndarray:
        """Unit axis e_i of rail ``leg`` (1-based)."""
        return self.rail_axes[leg - 1]

    def transverse(self, leg: int) -> np.ndarray:
        # U_1 = e2, U_2 = e3, U_3 = e1: each orthogonal to its own rail,
        # and the three parallelogram planes mutually orthogonal.
        return self.rail_axes[leg % 3]

    @property
    def isotropic_pose(self) -> "ToolPose":
        return ToolPose(np.zeros(3))

    @property
    def isotropic_joints(self) -> "JointVector":
        return JointVector(np.full(3, self.bar_length))

    def with_variant(self, variant) -> "OrthoglideGeometry":
        return replace(self, leg_variant=LegVariant(variant))


@dataclass(frozen=True)
class ToolPose:
    P: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "P", _readonly(_finite3(self.P, "tool position")))


@dataclass(frozen=True)
class JointVector:
    rho: np.ndarray
    # 1-based legs whose coordinate lies outside the geometry's joint limits
    limit_violations: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "rho", _readonly(_finite3(self.rho, "joint vector")))
        object.__setattr__(self, "limit_violations", tuple(self.limit_violations))

    @property
    def within_limits(self) -> bool:
        return not self.limit_violations


@dataclass(frozen=True)
class LegFrame:
    T: np.ndarray
    U: np.ndarray
    W: np.ndarray
    S: np.ndarray
    B: np.ndarray


@dataclass(frozen=True)
class BiglideGeometry:
    strut_length: float = 1.0
    rail_axis: np.ndarray = field(default_factory=lambda: np.array([1.0, 0.0, 0.0]))

    def __post_init__(self):
        if not self.strut_length > 0:
            raise InvalidInputError("strut_length must be positive")
        u = _finite3(self.rail_axis, "rail_axis")
        if abs(np.linalg.norm(u) - 1.0) > ORTHO_TOL:
            raise InvalidInputError("rail_axis must be unit-norm")
        object.__setattr__(self, "rail_axis", _readonly(u))


def as_pose(pose) -> ToolPose:
    return pose if isinstance(pose, ToolPose) else ToolPose(pose)


def as_joints(joints) -> JointVector:
    return joints if isinstance(joints, JointVector) else JointVector(joints)


def default_orthoglide(**overrides) -> OrthoglideGeometry:
    """Reference machine: unit bar length, d = 100 mm, S = 144 mm^2, alpha_max = 14 deg."""
    return OrthoglideGeometry(**overrides)


def leg_frames(geom: OrthoglideGeometry, pose, joints) -> tuple[LegFrame, LegFrame, LegFrame]:
    P = as_pose(pose).P
    rho = as_joints(joints).rho
    L = geom.bar_length
    frames = []
    for leg in (1, 2, 3):
        e = geom.rail(leg)
        bar = P - rho[leg - 1] * e
        length = np.linalg.norm(bar)
        if abs(length - L) > CONSTRAINT_RTOL * L:
            raise InconsistentConfigurationError(
                f"leg {leg}: |P - rho*e| = {length:.12g}, expected bar length {L:.12g}"
            )
        W = bar / L
        U = geom.transverse(leg)
        n = np.cross(W, U)
        norm = np.linalg.norm(n)
        # W parallel to U only at the folded parallelogram; fall back to the rail-plane normal.
        S = n / norm if norm > ORTHO_TOL else np.cross(e, U)
        frames.append(
            LegFrame(
                T=_readonly(e),
                U=_readonly(U),
                W=_readonly(W),
                S=_readonly(S),
                B=_readonly(P + 0.5 * geom.parallelogram_width * U),
            )
        )
    return tuple(frames)


CONFIG_KEYS = {
    "bar_length_m",
    "parallelogram_width_m",
    "bar_section_m2",
    "leg_variant",
    "alpha_max_deg",
    "joint_limits_m",
}


def geometry_from_dict(data: dict) -> OrthoglideGeometry:
    if not isinstance(data, dict):
        raise InvalidInputError("geometry config must be a JSON object")
    unknown = set(data) - CONFIG_KEYS
    if unknown:
        raise InvalidInputError(f"unknown geometry config keys: {sorted(unknown)}")
    kwargs = {}
    mapping = {
        "bar_length_m": "bar_length",
        "parallelogram_width_m": "parallelogram_width",
        "bar_section_m2": "bar_section",
        "leg_variant": "leg_variant",
        "alpha_max_deg": "alpha_max",
        "joint_limits_m": "joint_limits",
    }
    for key, attr in mapping.items():
        if key in data:
            kwargs[attr] = data[key]
    try:
        return default_orthoglide(**kwargs)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InvalidInputError):
            raise
        raise InvalidInputError(f"bad geometry config: {exc}") from exc


def load_geometry(path: str | Path | None) -> OrthoglideGeometry:
    """Read a JSON geometry file; ``None`` gives the default machine."""
    if path is None:
        return default_orthoglide()
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInputError(f"cannot read geometry config {path}: {exc}") from exc
    return geometry_from_dict(data)
