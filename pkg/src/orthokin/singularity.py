"""Singularity classification for the Orthoglide and the biglide fixture.

Serial (type 1): some W_i . e_i vanishes, a finite tool velocity needs an
infinite joint rate. Parallel (type 2): the bar directions W_i become
linearly dependent and the tool can no longer resist every load.

The leg-variant degeneracies are geometric predicates:

* V1_STAR: the parallelogram's base link runs along the rail, so when the
  bars line up with the rail (isotropic pose) the parallelogram folds flat
  and can flip into an antiparallelogram.
* V2_INTERMEDIATE: when the bars line up with the rail the whole
  parallelogram can spin passively about T_i. Output and input motions are
  both blocked along that leg (RPM with IO and II).
* V3_ORTHOGLIDE: neither occurs.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import InvalidInputError, SerialSingularityError, ParallelSingularityError
from .grid import grid_points
from .kinematics import JacobianPair, inverse_kinematics, is_reachable, leg_matrices
from .kinetostatics import INFINITY, conditioning_index
from .model import BiglideGeometry, LegFrame, LegVariant, OrthoglideGeometry, as_pose, leg_frames
from .screw import couple_space_rank, leg_wrench_system
from .statics import SINGULAR_ANGLE_TOL_DEG

SERIAL_TOL = 1e-9
PARALLEL_TOL = 1e-9
COLLINEAR_TOL = 1e-9
BIGLIDE_TOL_DEG = 1e-9


class VariantLabel(str, enum.Enum):
    ANTIPARALLELOGRAM = "ANTIPARALLELOGRAM"
    RPM_IO_II = "RPM_IO_II"
    NONE = "NONE"


@dataclass(frozen=True)
class VariantFinding:
    label: VariantLabel
    leg: int
    description: str


@dataclass(frozen=True)
class SingularityReport:
    serial_legs: frozenset[int]
    parallel_singular: bool
    parallelogram_singular_legs: frozenset[int]
    variant_findings: tuple[VariantFinding, ...]
    kappa: float
    alpha: tuple[float, float, float] = field(default=(0.0, 0.0, 0.0))

    @property
    def is_regular(self) -> bool:
        return not (
            self.serial_legs
            or self.parallel_singular
            or self.parallelogram_singular_legs
            or self.variant_findings
        )


@dataclass(frozen=True)
class ConstraintFinding:
    P: tuple[float, float, float]
    rank: int


class BiglideState(str, enum.Enum):
    REGULAR = "REGULAR"
    SERIAL = "SERIAL"
    PARALLEL = "PARALLEL"


def _coupler_axis(geom: OrthoglideGeometry, leg: int) -> np.ndarray:
    # V1 carries the parallelogram's base link along the rail itself.
    if geom.leg_variant is LegVariant.V1_STAR:
        return geom.rail(leg)
    return geom.transverse(leg)


def _angle_to_plane_normal(w: np.ndarray, a: np.ndarray) -> float:
    # angle between w and the direction orthogonal to a in span(w, a); atan2 stays
    # accurate near 90 degrees where asin would not
    return math.degrees(math.atan2(abs(float(w @ a)), float(np.linalg.norm(np.cross(w, a)))))


def parallelogram_angle(geom: OrthoglideGeometry, pose, leg: int) -> float:
    """Distortion angle alpha of parallelogram ``leg`` in degrees, 0 for the rectangle."""
    if leg not in (1, 2, 3):
        raise InvalidInputError(f"leg must be 1, 2 or 3, got {leg!r}")
    W, _ = leg_matrices(geom, pose)
    return _angle_to_plane_normal(W[leg - 1], _coupler_axis(geom, leg))


def _variant_findings(geom: OrthoglideGeometry, W: np.ndarray, alphas) -> list[VariantFinding]:
    findings = []
    for leg in (1, 2, 3):
        i = leg - 1
        if geom.leg_variant is LegVariant.V1_STAR:
            if alphas[i] > 90.0 - SINGULAR_ANGLE_TOL_DEG:
                findings.append(
                    VariantFinding(
                        VariantLabel.ANTIPARALLELOGRAM,
                        leg,
                        "bars collinear with the base link; passive rotation normal "
                        "to the parallelogram plane",
                    )
                )
        elif geom.leg_variant is LegVariant.V2_INTERMEDIATE:
            if np.linalg.norm(np.cross(W[i], geom.rail(leg))) < COLLINEAR_TOL:
                findings.append(
                    VariantFinding(
                        VariantLabel.RPM_IO_II,
                        leg,
                        "redundant passive rotation about T_i; impossible output "
                        "and impossible input along the leg",
                    )
                )
    return findings


def classify_configuration(geom: OrthoglideGeometry, pose) -> SingularityReport:
    W, diag = leg_matrices(geom, pose)  # raises OutOfWorkspaceError
    serial = frozenset(i + 1 for i in range(3) if abs(diag[i]) < SERIAL_TOL)
    parallel = bool(np.linalg.svd(W, compute_uv=False)[-1] < PARALLEL_TOL)
    if serial or parallel:
        kappa = INFINITY
    else:
        kappa = conditioning_index(JacobianPair(W / diag[:, None]))
        parallel = math.isinf(kappa)
    alphas = tuple(_angle_to_plane_normal(W[i], _coupler_axis(geom, i + 1)) for i in range(3))
    pgram = frozenset(i + 1 for i in range(3) if alphas[i] > 90.0 - SINGULAR_ANGLE_TOL_DEG)
    return SingularityReport(
        serial_legs=serial,
        parallel_singular=parallel,
        parallelogram_singular_legs=pgram,
        variant_findings=tuple(_variant_findings(geom, W, alphas)),
        kappa=kappa,
        alpha=alphas,
    )


FrameTransform = Callable[[Sequence[LegFrame]], Sequence[LegFrame]]


def constraint_singularity_scan(
    geom: OrthoglideGeometry, box, n: int, frame_transform: FrameTransform | None = None
) -> list[ConstraintFinding]:
    """Grid poses where the legs' couple space drops below rank 3.

    ``frame_transform`` lets a caller re-orient the leg frames before the rank
    test, e.g. to model a mis-assembled machine.
    """
    findings = []
    scanned = 0
    for P in grid_points(box, n):
        if not is_reachable(geom, P):
            continue
        scanned += 1
        frames = leg_frames(geom, P, inverse_kinematics(geom, P))
        if frame_transform is not None:
            frames = frame_transform(frames)
        rank = couple_space_rank([leg_wrench_system(f) for f in frames])
        if rank < 3:
            findings.append(ConstraintFinding(tuple(float(c) for c in P), rank))
    if scanned == 0:
        warnings.warn("constraint singularity scan: no reachable samples in box", stacklevel=2)
    return findings


def _check_theta(theta: float) -> float:
    theta = float(theta)
    if not 0.0 <= theta <= 90.0:
        raise InvalidInputError(f"biglide strut angle must lie in [0, 90] degrees, got {theta!r}")
    return theta


def biglide_classify(geom: BiglideGeometry, theta: float) -> BiglideState:
    theta = _check_theta(theta)
    if abs(theta - 90.0) < BIGLIDE_TOL_DEG:
        return BiglideState.SERIAL
    if theta < BIGLIDE_TOL_DEG:
        return BiglideState.PARALLEL
    return BiglideState.REGULAR


def biglide_vertical_amplification(theta: float) -> float:
    """Vertical tool speed per unit of slider-rate difference, 1 / (2 tan(theta))."""
    theta = _check_theta(theta)
    if theta < BIGLIDE_TOL_DEG:
        return INFINITY
    if abs(theta - 90.0) < BIGLIDE_TOL_DEG:
        return 0.0
    return 1.0 / (2.0 * math.tan(math.radians(theta)))


def biglide_jacobian(geom: BiglideGeometry, theta: float) -> JacobianPair:
    """Jacobian pair of the symmetric biglide in (along-rail, vertical) coordinates.

    Sliders sit at a_1 = x - l cos(theta) and a_2 = x + l cos(theta). Each strut
    constraint |P - a_i u| = l differentiates to w_i . p_dot = a_dot_i (w_i . u).
    """
    theta = math.radians(_check_theta(theta))
    l = geom.strut_length
    P = np.array([0.0, l * math.sin(theta)])
    feet = np.array([-l * math.cos(theta), l * math.cos(theta)])
    w = (P[None, :] - np.column_stack([feet, np.zeros(2)])) / l
    diag = w[:, 0]
    serial = [i + 1 for i in range(2) if abs(diag[i]) < SERIAL_TOL]
    if serial:
        raise SerialSingularityError("biglide struts orthogonal to the rail", legs=serial)
    J_inv = w / diag[:, None]
    if np.linalg.svd(J_inv, compute_uv=False)[-1] < PARALLEL_TOL:
        raise ParallelSingularityError("biglide struts aligned with the rail")
    return JacobianPair(J_inv, np.linalg.inv(J_inv))
