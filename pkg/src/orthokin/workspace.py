"""Grid sampling of a Cartesian box with per-pose kinetostatic records."""

from __future__ import annotations

import csv
import io
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import InvalidInputError, OrthokinError
from .grid import grid_points
from .kinematics import JacobianPair, inverse_kinematics, is_reachable, leg_matrices
from .kinetostatics import INFINITY, amplification_factors
from .model import OrthoglideGeometry
from .singularity import classify_configuration
from .statics import ParallelogramLoad, bar_force, bar_stress, static_balance_check

CSV_COLUMNS = (
    "px", "py", "pz", "reachable",
    "rho1", "rho2", "rho3",
    "kappa", "v_min", "v_max",
    "alpha1", "alpha2", "alpha3",
    "Fb1", "Fb2", "Fb3",
    "serial_flag", "parallel_flag", "pgram_flag",
)
THREADS_ENV = "ORTHOKIN_THREADS"


@dataclass(frozen=True)
class WorkspaceSample:
    P: tuple[float, float, float]
    reachable: bool
    rho: tuple[float, float, float] | None = None
    kappa: float | None = None
    v_min: float | None = None
    v_max: float | None = None
    alpha: tuple[float, float, float] | None = None
    F_b: tuple[float, float, float] | None = None
    serial: bool | None = None
    parallel: bool | None = None
    pgram: bool | None = None


@dataclass(frozen=True)
class WorkspaceSummary:
    kappa_max: float
    v_amp_range: tuple[float, float]
    alpha_max_observed: float
    F_b_max: float
    sigma_max: float
    reachable_fraction: float
    alpha_feasible: bool

    def as_dict(self) -> dict:
        return {
            "kappa_max": self.kappa_max,
            "v_amp_range": list(self.v_amp_range),
            "alpha_max_observed_deg": self.alpha_max_observed,
            "F_b_max_N": self.F_b_max,
            "sigma_max_Pa": self.sigma_max,
            "reachable_fraction": self.reachable_fraction,
            "alpha_feasible": self.alpha_feasible,
        }


def _velocity_extremes(W: np.ndarray, diag: np.ndarray, report) -> tuple[float, float]:
    if report.serial_legs:
        if report.parallel_singular:
            return 0.0, INFINITY
        # J = W^-1 diag(W_i . e_i) stays finite at a serial singularity and loses rank
        sv = np.linalg.svd(np.linalg.solve(W, np.diag(diag)), compute_uv=False)
        return 0.0, float(sv[0])
    velocity, _ = amplification_factors(JacobianPair(W / diag[:, None]))
    v_max = INFINITY if report.parallel_singular else float(velocity[-1])
    return float(velocity[0]), v_max


def evaluate_pose(geom: OrthoglideGeometry, P, load_C: float) -> WorkspaceSample:
    P = np.asarray(P, dtype=float)
    key = tuple(float(c) for c in P)
    if not is_reachable(geom, P):
        return WorkspaceSample(P=key, reachable=False)
    rho = inverse_kinematics(geom, P).rho
    report = classify_configuration(geom, P)
    v_min, v_max = _velocity_extremes(*leg_matrices(geom, P), report)
    forces = []
    for a in report.alpha:
        if static_balance_check(a):
            load = ParallelogramLoad(C=load_C, alpha=a, d=geom.parallelogram_width, S_bar=geom.bar_section)
            forces.append(bar_force(load).F_b)
        else:
            forces.append(INFINITY)
    return WorkspaceSample(
        P=key,
        reachable=True,
        rho=tuple(float(r) for r in rho),
        kappa=float(report.kappa),
        v_min=v_min,
        v_max=v_max,
        alpha=tuple(float(a) for a in report.alpha),
        F_b=tuple(forces),
        serial=bool(report.serial_legs),
        parallel=report.parallel_singular,
        pgram=bool(report.parallelogram_singular_legs),
    )


def default_workers() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw:
        try:
            value = int(raw)
        except ValueError:
            raise InvalidInputError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None
        if value < 1:
            raise InvalidInputError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
        return value
    return os.cpu_count() or 1


def sample_box(
    geom: OrthoglideGeometry, box, n: int, load_C: float, workers: int | None = None
) -> list[WorkspaceSample]:
    """Evaluate every grid point; output order is the grid order whatever ``workers`` is."""
    if not (math.isfinite(load_C) and load_C >= 0):
        raise InvalidInputError("load couple must be a finite non-negative number")
    points = grid_points(box, n)
    workers = default_workers() if workers is None else int(workers)
    if workers <= 1:
        return [evaluate_pose(geom, P, load_C) for P in points]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda P: evaluate_pose(geom, P, load_C), points, chunksize=64))


def summarize(samples, geom: OrthoglideGeometry) -> WorkspaceSummary:
    samples = list(samples)
    if not samples:
        raise InvalidInputError("no samples to summarize")
    reach = [s for s in samples if s.reachable]
    if not reach:
        raise OrthokinError("empty workspace: no reachable samples")
    F_b_max = max(max(s.F_b) for s in reach)
    alpha_max = max(max(s.alpha) for s in reach)
    return WorkspaceSummary(
        kappa_max=max(s.kappa for s in reach),
        v_amp_range=(min(s.v_min for s in reach), max(s.v_max for s in reach)),
        alpha_max_observed=alpha_max,
        F_b_max=F_b_max,
        sigma_max=bar_stress(F_b_max, geom.bar_section),
        reachable_fraction=len(reach) / len(samples),
        alpha_feasible=alpha_max <= geom.alpha_max,
    )


def reachable_fraction(samples) -> float:
    samples = list(samples)
    return sum(s.reachable for s in samples) / len(samples) if samples else 0.0


def _fmt(x: float) -> str:
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".9g")


def _row(s: WorkspaceSample) -> list[str]:
    row = [_fmt(c) for c in s.P] + ["1" if s.reachable else "0"]
    if not s.reachable:
        return row + [""] * (len(CSV_COLUMNS) - len(row))
    row += [_fmt(r) for r in s.rho]
    row += [_fmt(s.kappa), _fmt(s.v_min), _fmt(s.v_max)]
    row += [_fmt(a) for a in s.alpha]
    row += [_fmt(f) for f in s.F_b]
    row += [str(int(flag)) for flag in (s.serial, s.parallel, s.pgram)]
    return row


def samples_to_csv(samples) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for s in samples:
        writer.writerow(_row(s))
    return buf.getvalue()


def write_csv(samples, path) -> Path:
    path = Path(path)
    path.write_text(samples_to_csv(samples), encoding="utf-8")
    return path


def read_csv(path) -> list[dict]:
    """Parse a workspace CSV back into rows of floats (None for empty cells)."""
    with open(path, newline="", encoding="utf-8") as fh:
        rows = []
        for rec in csv.DictReader(fh):
            rows.append({k: (float(v) if v != "" else None) for k, v in rec.items()})
    return rows
