"""Conditioning index, velocity/force amplification and the manipulability ellipsoid.

The conditioning index is taken as the 2-norm condition number of the
inverse Jacobian (ratio of extreme singular values). Singular cases are
reported with ``INFINITY`` plus an explicit ``singular`` flag.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError, ParallelSingularityError
from .kinematics import JacobianPair

INFINITY = math.inf
SINGULAR_RTOL = 1e-15
NEAR_SINGULAR_KAPPA = 1e6


@dataclass(frozen=True)
class KinetostaticReport:
    kappa: float
    velocity_factors: np.ndarray
    force_factors: np.ndarray
    ellipsoid_axes: np.ndarray | None
    ellipsoid_lengths: np.ndarray | None
    singular: bool

    @property
    def near_singular(self) -> bool:
        return self.singular or self.kappa > NEAR_SINGULAR_KAPPA


def _inverse_singular_values(jac: JacobianPair) -> np.ndarray:
    J_inv = np.asarray(jac.J_inv, dtype=float)
    if not np.all(np.isfinite(J_inv)):
        raise InvalidInputError("inverse Jacobian has non-finite entries")
    return np.linalg.svd(J_inv, compute_uv=False)


def conditioning_index(jac: JacobianPair) -> float:
    sv = _inverse_singular_values(jac)
    if sv[0] == 0.0 or sv[-1] < SINGULAR_RTOL * sv[0]:
        return INFINITY
    return float(sv[0] / sv[-1])


def amplification_factors(jac: JacobianPair) -> tuple[np.ndarray, np.ndarray]:
    """Velocity factors (singular values of J, ascending) and their reciprocals.

    Computed from the singular values of J_inv, so a parallel singularity
    shows up as an infinite velocity factor paired with a zero force factor.
    """
    sv = _inverse_singular_values(jac)  # descending
    velocity = np.full_like(sv, INFINITY)
    np.divide(1.0, sv, out=velocity, where=sv > 0.0)
    force = sv.copy()
    return velocity, force


def manipulability_ellipsoid(jac: JacobianPair) -> tuple[np.ndarray, np.ndarray]:
    """Axes (columns) and lengths from the eigen-decomposition of (J J^T)^-1.

    (J J^T)^-1 = J_inv^T J_inv, so the inverse Jacobian is used directly.
    Lengths come out ascending.
    """
    sv = _inverse_singular_values(jac)
    if sv[0] == 0.0 or sv[-1] < SINGULAR_RTOL * sv[0]:
        raise ParallelSingularityError("J is not computable: inverse Jacobian is singular")
    J_inv = np.asarray(jac.J_inv, dtype=float)
    M = J_inv.T @ J_inv
    eigvals, eigvecs = np.linalg.eigh(0.5 * (M + M.T))
    lengths = np.sqrt(np.clip(eigvals, 0.0, None))
    return eigvecs, lengths


def kinetostatic_report(jac: JacobianPair) -> KinetostaticReport:
    kappa = conditioning_index(jac)
    velocity, force = amplification_factors(jac)
    singular = math.isinf(kappa)
    if singular:
        axes = lengths = None
    else:
        axes, lengths = manipulability_ellipsoid(jac)
    return KinetostaticReport(kappa, velocity, force, axes, lengths, singular)
