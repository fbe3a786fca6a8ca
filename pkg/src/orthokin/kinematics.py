"""Position kinematics and the analytic Jacobian pair."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    BranchError,
    NonConvergenceError,
    OutOfWorkspaceError,
    ParallelSingularityError,
    SerialSingularityError,
    SingularIterateError,
)
from .model import JointVector, OrthoglideGeometry, ToolPose, as_joints, as_pose

SERIAL_TOL = 1e-12
PARALLEL_TOL = 1e-12
FK_RTOL = 1e-12
FK_MAX_ITER = 50


@dataclass(frozen=True)
class JacobianPair:
    """``J_inv`` maps tool velocity to joint rates; ``J`` maps joint rates to tool velocity."""

    J_inv: np.ndarray
    J: np.ndarray | None = None

    @classmethod
    def from_inverse(cls, J_inv) -> "JacobianPair":
        J_inv = np.array(J_inv, dtype=float)
        try:
            J = np.linalg.inv(J_inv)
        except np.linalg.LinAlgError:
            J = None
        return cls(J_inv, J)

    @classmethod
    def from_forward(cls, J) -> "JacobianPair":
        J = np.array(J, dtype=float)
        return cls(np.linalg.inv(J), J)


@dataclass(frozen=True)
class FKResult:
    pose: ToolPose
    iterations: int
    residual: float


def _reach_terms(geom: OrthoglideGeometry, P: np.ndarray) -> np.ndarray:
    # L^2 - |P|^2 + p_i^2 per leg, p_i being the coordinate along rail i
    p = geom.rail_axes @ P
    return geom.bar_length**2 - P @ P + p**2


def is_reachable(geom: OrthoglideGeometry, pose) -> bool:
    return bool(np.all(_reach_terms(geom, as_pose(pose).P) >= 0.0))


def inverse_kinematics(geom: OrthoglideGeometry, pose) -> JointVector:
    """Joint coordinates on the '+' branch, rho_i = p_i + sqrt(L^2 - |P|^2 + p_i^2)."""
    P = as_pose(pose).P
    disc = _reach_terms(geom, P)
    bad = [i + 1 for i in range(3) if disc[i] < 0.0]
    if bad:
        raise OutOfWorkspaceError(
            f"pose {P.tolist()} unreachable by leg(s) {bad}", legs=bad
        )
    rho = geom.rail_axes @ P + np.sqrt(disc)
    lo, hi = geom.joint_limits[:, 0], geom.joint_limits[:, 1]
    violations = tuple(i + 1 for i in range(3) if not lo[i] <= rho[i] <= hi[i])
    return JointVector(rho, violations)


def constraint_residuals(geom: OrthoglideGeometry, P: np.ndarray, rho: np.ndarray) -> np.ndarray:
    bars = P[None, :] - rho[:, None] * geom.rail_axes
    return np.einsum("ij,ij->i", bars, bars) - geom.bar_length**2


def solve_forward(geom: OrthoglideGeometry, joints, guess) -> FKResult:
    """Newton iteration on f_i = |P - rho_i e_i|^2 - L^2, no line search."""
    rho = as_joints(joints).rho
    P = np.array(as_pose(guess).P, dtype=float)
    L2 = geom.bar_length**2
    tol = FK_RTOL * L2
    E = geom.rail_axes
    for it in range(FK_MAX_ITER + 1):
        f = constraint_residuals(geom, P, rho)
        res = float(np.max(np.abs(f)))
        if res < tol:
            break
        if it == FK_MAX_ITER:
            raise NonConvergenceError(
                f"forward kinematics did not converge in {FK_MAX_ITER} iterations "
                f"(max residual {res:.3e})"
            )
        grad = 2.0 * (P[None, :] - rho[:, None] * E)
        if np.linalg.svd(grad, compute_uv=False)[-1] < PARALLEL_TOL * geom.bar_length:
            raise SingularIterateError(f"residual Jacobian singular at iterate {it}, P = {P.tolist()}")
        P = P - np.linalg.solve(grad, f)
    # '+' branch: each foot point lies beyond the tool projection on its rail
    along = rho - E @ P
    wrong = [i + 1 for i in range(3) if along[i] < 0.0]
    if wrong:
        raise BranchError(f"solution P = {P.tolist()} lies on the rejected branch for leg(s) {wrong}")
    return FKResult(ToolPose(P), it, res)


def forward_kinematics(geom: OrthoglideGeometry, joints, guess) -> ToolPose:
    return solve_forward(geom, joints, guess).pose


def leg_matrices(geom: OrthoglideGeometry, pose) -> tuple[np.ndarray, np.ndarray]:
    """Unit bar directions W (rows) and the diagonal terms W_i . e_i."""
    P = as_pose(pose).P
    rho = inverse_kinematics(geom, P).rho
    W = (P[None, :] - rho[:, None] * geom.rail_axes) / geom.bar_length
    return W, np.einsum("ij,ij->i", W, geom.rail_axes)


def jacobian_pair(geom: OrthoglideGeometry, pose) -> JacobianPair:
    """Differentiating the leg constraints gives rho_dot_i = W_i . p_dot / (W_i . e_i)."""
    W, diag = leg_matrices(geom, pose)
    serial = [i + 1 for i in range(3) if abs(diag[i]) < SERIAL_TOL]
    if serial:
        raise SerialSingularityError(f"serial singularity on leg(s) {serial}", legs=serial)
    if np.linalg.svd(W, compute_uv=False)[-1] < PARALLEL_TOL:
        raise ParallelSingularityError("bar directions are linearly dependent")
    J_inv = W / diag[:, None]
    return JacobianPair(J_inv, np.linalg.inv(J_inv))
