"""Exit criteria for the package. Each test prints one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines, or
``python tests/test_acceptance.py`` for a standalone summary.
"""

import json
import math
import time

import numpy as np
import pytest

from orthokin import (
    BiglideGeometry,
    BiglideState,
    ParallelogramLoad,
    amplification_factors,
    bar_force,
    biglide_classify,
    biglide_vertical_amplification,
    conditioning_index,
    constraint_singularity_scan,
    couple_space_rank,
    default_orthoglide,
    inverse_kinematics,
    is_reachable,
    jacobian_pair,
    leg_frames,
    leg_wrench_system,
    solve_forward,
)
from orthokin.cli import main
from orthokin.model import LegFrame

from conftest import random_work_poses

L = 1.0


def report(tag, name, passed, detail=""):
    print(f"[{'PASS' if passed else 'FAIL'}] {tag} {name}: {detail}")
    assert passed, f"{tag} {name}: {detail}"


def reachable_sample(n, seed, half_width=0.7):
    """Uniform rejection sample over the reachable set inside a cube."""
    geom = default_orthoglide()
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        P = rng.uniform(-half_width, half_width, 3)
        if is_reachable(geom, P):
            out.append(P)
    return np.array(out)


def cli_json(capsys, *argv):
    code = main(list(argv))
    return code, json.loads(capsys.readouterr().out)


def test_ac1_statics_reproduction(capsys):
    t0 = time.perf_counter()
    code, out = cli_json(capsys, "statics", "10Nm", "100mm", "14deg", "144mm2")
    elapsed = time.perf_counter() - t0
    F_b, sigma = out["F_b_N"], out["sigma_MPa"]
    ok = code == 0 and abs(F_b - 103.0) <= 0.5 and abs(sigma - 0.715) <= 0.02 and elapsed < 1.0
    report("AC1", "statics reproduction", ok, f"F_b={F_b:.3f} N sigma={sigma:.4f} MPa t={elapsed:.3f}s")


def test_ac2_isotropy():
    t0 = time.perf_counter()
    geom = default_orthoglide()
    jac = jacobian_pair(geom, [0.0, 0.0, 0.0])
    kappa = conditioning_index(jac)
    velocity, _ = amplification_factors(jac)
    elapsed = time.perf_counter() - t0
    ok = abs(kappa - 1.0) < 1e-9 and np.max(np.abs(velocity - 1.0)) < 1e-9 and elapsed < 1.0
    report("AC2", "isotropy", ok, f"kappa={kappa!r} factors={velocity.tolist()} t={elapsed:.3f}s")


def test_ac3_jacobian_oracle():
    geom = default_orthoglide()
    h = 1e-6 * L
    worst = 0.0
    for P in reachable_sample(1000, seed=303):
        jac = jacobian_pair(geom, P)
        cols = []
        for j in range(3):
            dp = np.zeros(3)
            dp[j] = h
            cols.append((inverse_kinematics(geom, P + dp).rho - inverse_kinematics(geom, P - dp).rho) / (2 * h))
        fd = np.column_stack(cols)
        worst = max(worst, np.linalg.norm(jac.J_inv - fd) / np.linalg.norm(jac.J_inv))
    report("AC3", "Jacobian finite-difference oracle", worst < 1e-6, f"worst relative error {worst:.2e} over 1000 poses")


def test_ac4_round_trip():
    geom = default_orthoglide()
    rng = np.random.default_rng(404)
    worst_err, worst_iter = 0.0, 0
    for P in random_work_poses(1000, seed=404):
        rho = inverse_kinematics(geom, P)
        step = rng.normal(size=3)
        guess = P + 0.05 * L * step / np.linalg.norm(step)
        res = solve_forward(geom, rho, guess)
        worst_err = max(worst_err, float(np.max(np.abs(res.pose.P - P))))
        worst_iter = max(worst_iter, res.iterations)
    ok = worst_err < 1e-9 * L and worst_iter <= 10
    report("AC4", "FK/IK round trip", ok, f"max error {worst_err:.2e} m, max iterations {worst_iter}")


def test_ac5_biglide_taxonomy():
    g = BiglideGeometry()
    serial = biglide_classify(g, 90.0) is BiglideState.SERIAL
    parallel = biglide_classify(g, 0.0) is BiglideState.PARALLEL
    sweep = [biglide_vertical_amplification(t) for t in range(1, 90)]
    decreasing = len(sweep) == 89 and all(a > b for a, b in zip(sweep, sweep[1:]))
    report("AC5", "biglide taxonomy", serial and parallel and decreasing,
           f"90deg serial={serial} 0deg parallel={parallel} monotone over 89 points={decreasing}")


def _forced_parallel(frames):
    # legs 1 and 2 pushed into parallel parallelogram planes on one rail direction,
    # leg 3 sharing their transverse axis
    x, y, z = np.eye(3)
    return [LegFrame(T=T, U=y, W=f.W, S=f.S, B=f.B) for T, f in zip((x, x, z), frames)]


def test_ac6_pure_translation():
    t0 = time.perf_counter()
    geom = default_orthoglide()
    ranks = set()
    for P in reachable_sample(1000, seed=606):
        frames = leg_frames(geom, P, inverse_kinematics(geom, P))
        ranks.add(couple_space_rank([leg_wrench_system(f) for f in frames]))
    P0 = np.zeros(3)
    forced = _forced_parallel(leg_frames(geom, P0, inverse_kinematics(geom, P0)))
    forced_rank = couple_space_rank([leg_wrench_system(f) for f in forced])
    findings = constraint_singularity_scan(geom, [[-0.35, 0.35]] * 3, 11)
    elapsed = time.perf_counter() - t0
    ok = ranks == {3} and forced_rank < 3 and findings == [] and elapsed < 10.0
    report("AC6", "pure translation", ok,
           f"ranks={sorted(ranks)} forced-parallel rank={forced_rank} scan findings={len(findings)} t={elapsed:.2f}s")


def test_ac7_variant_audit(capsys, tmp_path):
    results = {}
    for variant in ("V3_ORTHOGLIDE", "V1_STAR", "V2_INTERMEDIATE"):
        cfg = tmp_path / f"{variant}.json"
        cfg.write_text(json.dumps({"leg_variant": variant}))
        code, out = cli_json(capsys, "verify", "--config", str(cfg))
        results[variant] = (code, {c["name"] for c in out["checks"] if not c["passed"]})
    ok = (
        results["V3_ORTHOGLIDE"] == (0, set())
        and results["V1_STAR"][0] == 2 and "no_parallelogram_singularity" in results["V1_STAR"][1]
        and results["V2_INTERMEDIATE"][0] == 2 and "no_rpm_leg_singularity" in results["V2_INTERMEDIATE"][1]
    )
    report("AC7", "variant audit", ok, "; ".join(f"{k}: exit {c}, failed {sorted(f)}" for k, (c, f) in results.items()))


def test_ac8_statics_limits(capsys):
    def force(alpha, C=10.0, d=0.1):
        return bar_force(ParallelogramLoad(C=C, alpha=alpha, d=d, S_bar=1.44e-4)).F_b

    ratio = force(89.0) / force(0.0)
    expected = 1.0 / math.cos(math.radians(89.0))
    ratio_ok = abs(ratio - expected) <= 1e-9 * expected

    codes = [cli_json(capsys, "statics", "10Nm", "100mm", a, "144mm2")[0] for a in ("90deg", "95deg", "90")]
    reject_ok = codes == [2, 2, 2]

    rng = np.random.default_rng(808)
    worst_ulp = 0.0
    for _ in range(10_000):
        C = rng.uniform(0.0, 1e3)
        alpha = rng.uniform(0.0, 89.9)
        d = rng.uniform(1e-3, 1.0)
        F_b = force(alpha, C, d)
        residual = abs(F_b * d * math.cos(math.radians(alpha)) - C)
        worst_ulp = max(worst_ulp, residual / np.spacing(C) if C > 0 else residual)
    balance_ok = worst_ulp <= 4.0
    report("AC8", "statics limit behaviour", ratio_ok and reject_ok and balance_ok,
           f"ratio={ratio:.9f} (1/cos89={expected:.9f}) exit codes={codes} worst balance={worst_ulp:.0f} ulp")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
