"""Command-line entry point.

Examples:
  orthokin ik 0.1 0 0
  orthokin analyze 0 0.2419mm 0 --torque 10Nm
  orthokin workspace --box -0.2 0.2 -0.2 0.2 -0.2 0.2 --n 11 --out map.csv
  orthokin verify --config machine.json
  orthokin statics 10Nm 100mm 14deg 144mm2

Reports go to stdout as JSON. Exit codes: 0 success, 1 invalid input or
config, 2 singular or infeasible configuration, 3 numerical nonconvergence.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from dataclasses import dataclass

import numpy as np

from . import kinematics, kinetostatics, singularity, statics, workspace
from .errors import InvalidInputError, OrthokinError
from .model import BiglideGeometry, LegVariant, leg_frames, load_geometry
from .screw import couple_space_rank, leg_wrench_system
from .units import parse_quantity

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_SINGULAR = 2
EXIT_NONCONVERGENCE = 3

VERIFY_TOL = 1e-9
_NEGATIVE_QUANTITY = re.compile(r"^-(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?[A-Za-z0-9.*²]*$")


@dataclass
class CommandOutcome:
    exit_code: int
    payload: dict


def _clean(obj):
    """Make a payload JSON-safe: numpy to Python, infinities to the ``"inf"`` marker."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [_clean(v) for v in items]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    return obj


def _error_payload(exc: Exception) -> dict:
    return {"error": {"type": type(exc).__name__, "message": str(exc)}}


def _point(values) -> np.ndarray:
    return np.array([parse_quantity(v, "length") for v in values])


def cmd_ik(config_path, point) -> CommandOutcome:
    geom = load_geometry(config_path)
    P = _point(point)
    joints = kinematics.inverse_kinematics(geom, P)
    residuals = kinematics.constraint_residuals(geom, P, joints.rho)
    return CommandOutcome(
        EXIT_OK,
        {
            "rho": joints.rho,
            "residuals": residuals,
            "limit_violations": list(joints.limit_violations),
        },
    )


def cmd_fk(config_path, rho, guess=None) -> CommandOutcome:
    geom = load_geometry(config_path)
    rho = _point(rho)
    guess = np.zeros(3) if guess is None else _point(guess)
    result = kinematics.solve_forward(geom, rho, guess)
    return CommandOutcome(
        EXIT_OK,
        {"P": result.pose.P, "iterations": result.iterations, "residual": result.residual},
    )


def cmd_analyze(config_path, point, torque_C: float) -> CommandOutcome:
    geom = load_geometry(config_path)
    P = _point(point)
    rho = kinematics.inverse_kinematics(geom, P).rho
    report = singularity.classify_configuration(geom, P)
    payload = {
        "P": P,
        "rho": rho,
        "kappa": report.kappa,
        "alpha_deg": list(report.alpha),
        "singularity": {
            "serial_legs": report.serial_legs,
            "parallel": report.parallel_singular,
            "parallelogram_legs": report.parallelogram_singular_legs,
            "variant_findings": [
                {"label": f.label.value, "leg": f.leg, "description": f.description}
                for f in report.variant_findings
            ],
        },
        "near_singular": bool(math.isinf(report.kappa) or report.kappa > kinetostatics.NEAR_SINGULAR_KAPPA),
    }
    exit_code = EXIT_OK if report.is_regular else EXIT_SINGULAR

    if not (report.serial_legs or report.parallel_singular):
        jac = kinematics.jacobian_pair(geom, P)
        ks = kinetostatics.kinetostatic_report(jac)
        payload["velocity_factors"] = ks.velocity_factors
        payload["force_factors"] = ks.force_factors
        payload["ellipsoid_lengths"] = ks.ellipsoid_lengths
        payload["ellipsoid_axes"] = None if ks.ellipsoid_axes is None else ks.ellipsoid_axes.T

    forces, sigmas = [], []
    for a in report.alpha:
        try:
            res = statics.bar_force(
                statics.ParallelogramLoad(
                    C=torque_C, alpha=a, d=geom.parallelogram_width, S_bar=geom.bar_section
                )
            )
        except statics.ParallelogramSingularityError:
            forces.append(math.inf)
            sigmas.append(math.inf)
        else:
            forces.append(res.F_b)
            sigmas.append(res.sigma)
    payload["F_b"] = forces
    payload["sigma"] = sigmas
    payload["torque_C"] = torque_C
    return CommandOutcome(exit_code, payload)


def cmd_workspace(config_path, box, n: int, torque_C: float, out_path) -> CommandOutcome:
    geom = load_geometry(config_path)
    if n < 2:
        raise InvalidInputError("--n must be at least 2")
    samples = workspace.sample_box(geom, box, n, torque_C)
    workspace.write_csv(samples, out_path)
    payload = {"csv": str(out_path), "samples": len(samples)}
    try:
        summary = workspace.summarize(samples, geom)
    except OrthokinError:
        payload["summary"] = {"reachable_fraction": 0.0}
        return CommandOutcome(EXIT_OK, payload)
    payload["summary"] = summary.as_dict()
    return CommandOutcome(EXIT_OK, payload)


def verify_checks(geom) -> list[dict]:
    """Isotropy and leg-design checklist evaluated at the isotropic configuration."""
    P = geom.isotropic_pose.P
    checks = []

    def add(name, passed, detail):
        checks.append({"name": name, "passed": bool(passed), "detail": detail})

    jac = kinematics.jacobian_pair(geom, P)
    kappa = kinetostatics.conditioning_index(jac)
    add("isotropic_conditioning", abs(kappa - 1.0) < VERIFY_TOL, {"kappa": kappa})
    velocity, _ = kinetostatics.amplification_factors(jac)
    add(
        "unit_amplification",
        np.max(np.abs(velocity - 1.0)) < VERIFY_TOL,
        {"velocity_factors": velocity},
    )

    frames = leg_frames(geom, P, kinematics.inverse_kinematics(geom, P))
    W = np.array([f.W for f in frames])
    off = W @ W.T - np.eye(3)
    add("bars_orthogonal", np.max(np.abs(off)) < VERIFY_TOL, {"max_abs_dot": np.max(np.abs(off))})
    cross = [float(np.linalg.norm(np.cross(f.T, f.W))) for f in frames]
    add("rail_bar_collinear", max(cross) < VERIFY_TOL, {"cross_norms": cross})

    rank = couple_space_rank([leg_wrench_system(f) for f in frames])
    add("couple_space_rank_3", rank == 3, {"rank": rank})
    half = 0.2 * geom.bar_length
    findings = singularity.constraint_singularity_scan(geom, [[-half, half]] * 3, 11)
    add("no_constraint_singularity", not findings, {"findings": len(findings), "grid": 11})

    report = singularity.classify_configuration(geom, P)
    anti = [f.leg for f in report.variant_findings if f.label is singularity.VariantLabel.ANTIPARALLELOGRAM]
    add(
        "no_parallelogram_singularity",
        not anti and not report.parallelogram_singular_legs,
        {"legs": sorted(set(anti) | set(report.parallelogram_singular_legs))},
    )
    rpm = [f.leg for f in report.variant_findings if f.label is singularity.VariantLabel.RPM_IO_II]
    add("no_rpm_leg_singularity", not rpm, {"legs": rpm})
    add(
        "no_serial_or_parallel_singularity",
        not report.serial_legs and not report.parallel_singular,
        {"serial_legs": report.serial_legs, "parallel": report.parallel_singular},
    )
    return checks


def cmd_verify(config_path) -> CommandOutcome:
    geom = load_geometry(config_path)
    checks = verify_checks(geom)
    passed = all(c["passed"] for c in checks)
    payload = {"variant": geom.leg_variant.value, "checks": checks, "passed": passed}
    return CommandOutcome(EXIT_OK if passed else EXIT_SINGULAR, payload)


def cmd_biglide(theta: float, strut_length: float = 1.0) -> CommandOutcome:
    geom = BiglideGeometry(strut_length=strut_length)
    state = singularity.biglide_classify(geom, theta)
    amp = singularity.biglide_vertical_amplification(theta)
    return CommandOutcome(
        EXIT_OK,
        {"theta_deg": theta, "classification": state.value, "vertical_amplification": amp},
    )


def cmd_statics(C: float, d: float, alpha: float, section: float) -> CommandOutcome:
    load = statics.ParallelogramLoad(C=C, alpha=alpha, d=d, S_bar=section)
    res = statics.bar_force(load)
    return CommandOutcome(
        EXIT_OK,
        {
            "C_Nm": load.C,
            "d_m": load.d,
            "alpha_deg": load.alpha,
            "section_m2": load.S_bar,
            "F_b_N": res.F_b,
            "sigma_Pa": res.sigma,
            "sigma_MPa": res.sigma / 1e6,
            "balanced": res.balanced,
        },
    )


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let "-10mm" through as a value, not an option
        self._negative_number_matcher = _NEGATIVE_QUANTITY

    # usage errors must map to exit code 1, not argparse's default 2
    def error(self, message):
        raise InvalidInputError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", default=None, help="geometry JSON file (defaults applied when omitted)")

    ap = _Parser(prog="orthokin", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ik", parents=[common], help="inverse kinematics")
    p.add_argument("point", nargs=3, metavar="COORD", help="tool point x y z (m, or with unit suffix)")

    p = sub.add_parser("fk", parents=[common], help="forward kinematics (Newton)")
    p.add_argument("rho", nargs=3, metavar="RHO", help="joint coordinates rho1 rho2 rho3")
    p.add_argument("--guess", nargs=3, metavar=("X", "Y", "Z"), default=None)

    p = sub.add_parser("analyze", parents=[common], help="kinetostatic and singularity report at a point")
    p.add_argument("point", nargs=3, metavar="COORD", help="tool point x y z (m, or with unit suffix)")
    p.add_argument("--torque", default="10Nm", help="couple applied about each parallelogram normal")

    p = sub.add_parser("workspace", parents=[common], help="grid map of a Cartesian box to CSV")
    p.add_argument("--box", nargs=6, required=True, metavar=("XLO", "XHI", "YLO", "YHI", "ZLO", "ZHI"))
    p.add_argument("--n", type=int, default=11, help="samples per axis")
    p.add_argument("--torque", default="10Nm")
    p.add_argument("--out", required=True, help="CSV output path")

    sub.add_parser("verify", parents=[common], help="isotropy and leg-design checklist")

    p = sub.add_parser("biglide", help="classify the symmetric 2-PRR biglide at strut angle THETA")
    p.add_argument("theta", help="strut angle from the rail, degrees")

    p = sub.add_parser("statics", help="parallelogram bar force and stress")
    p.add_argument("C", help="couple, e.g. 10Nm")
    p.add_argument("d", help="bar separation, e.g. 100mm")
    p.add_argument("alpha", help="distortion angle, e.g. 14deg")
    p.add_argument("section", help="bar cross-section, e.g. 144mm2")
    return ap


def run(argv=None) -> CommandOutcome:
    args = build_parser().parse_args(argv)
    cmd = args.command
    if cmd == "ik":
        return cmd_ik(args.config, args.point)
    if cmd == "fk":
        return cmd_fk(args.config, args.rho, args.guess)
    if cmd == "analyze":
        return cmd_analyze(args.config, args.point, parse_quantity(args.torque, "torque"))
    if cmd == "workspace":
        box = np.array([parse_quantity(v, "length") for v in args.box]).reshape(3, 2)
        return cmd_workspace(args.config, box, args.n, parse_quantity(args.torque, "torque"), args.out)
    if cmd == "verify":
        return cmd_verify(args.config)
    if cmd == "biglide":
        return cmd_biglide(parse_quantity(args.theta, "angle"))
    if cmd == "statics":
        return cmd_statics(
            parse_quantity(args.C, "torque"),
            parse_quantity(args.d, "length"),
            parse_quantity(args.alpha, "angle"),
            parse_quantity(args.section, "area"),
        )
    raise InvalidInputError(f"unknown command {cmd!r}")


def main(argv=None) -> int:
    try:
        outcome = run(argv)
    except OrthokinError as exc:
        outcome = CommandOutcome(exc.exit_code, _error_payload(exc))
        print(f"orthokin: {exc}", file=sys.stderr)
    print(json.dumps(_clean(outcome.payload), indent=2, sort_keys=True))
    return outcome.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
