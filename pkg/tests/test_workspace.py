import math

import numpy as np
import pytest

from orthokin import (
    InvalidInputError,
    OrthokinError,
    bar_stress,
    constraint_singularity_scan,
    sample_box,
    summarize,
)
from orthokin.grid import grid_points
from orthokin.workspace import CSV_COLUMNS, read_csv, reachable_fraction, samples_to_csv, write_csv

SIN14 = math.sin(math.radians(14.0))


def test_grid_order_lexicographic():
    pts = grid_points([[0, 1], [0, 1], [0, 1]], 2)
    assert pts.tolist()[:3] == [[0, 0, 0], [0, 0, 1], [0, 1, 0]]
    assert len(pts) == 8


@pytest.mark.parametrize("box, n", [([[0, 1], [0, 1]], 3), ([[1, 0], [0, 1], [0, 1]], 3), ([[0, 1]] * 3, 1)])
def test_bad_grid(box, n):
    with pytest.raises(InvalidInputError):
        grid_points(box, n)


def test_tight_box_center_is_isotropic(geom):
    samples = sample_box(geom, [[-0.01, 0.01]] * 3, 3, 10.0)
    assert len(samples) == 27
    center = samples[13]
    assert center.P == (0.0, 0.0, 0.0)
    assert center.kappa == pytest.approx(1.0, abs=1e-12)
    assert center.alpha == (0.0, 0.0, 0.0)
    assert center.F_b == pytest.approx((100.0, 100.0, 100.0))
    assert summarize(samples, geom).kappa_max == pytest.approx(1.0, abs=0.05)


def test_default_box_all_regular(geom):
    box = [[-0.2, 0.2]] * 3
    samples = sample_box(geom, box, 11, 10.0)
    assert all(s.reachable for s in samples)
    assert all(max(s.alpha) < 90.0 for s in samples)
    assert constraint_singularity_scan(geom, box, 11) == []


def test_box_outside_workspace(geom):
    samples = sample_box(geom, [[2, 3]] * 3, 3, 10.0)
    assert reachable_fraction(samples) == 0.0
    assert all(s.rho is None and s.kappa is None for s in samples)
    with pytest.raises(OrthokinError):
        summarize(samples, geom)


def test_engineered_alpha_max_box(geom):
    box = [[-0.01, 0.01], [-SIN14, SIN14], [-0.01, 0.01]]
    summary = summarize(sample_box(geom, box, 5, 10.0), geom)
    assert summary.alpha_max_observed == pytest.approx(14.0, abs=1e-9)
    assert summary.F_b_max == pytest.approx(103.0, abs=0.5)
    assert summary.sigma_max == bar_stress(summary.F_b_max, geom.bar_section)


def test_alpha_feasibility_verdict(geom):
    wide = summarize(sample_box(geom, [[-0.3, 0.3]] * 3, 5, 10.0), geom)
    assert wide.alpha_max_observed > 14.0 and not wide.alpha_feasible
    tight = summarize(sample_box(geom, [[-0.1, 0.1]] * 3, 5, 10.0), geom)
    assert tight.alpha_feasible


def test_serial_boundary_point(geom):
    samples = sample_box(geom, [[-1, 1]] * 3, 3, 10.0)
    s = next(s for s in samples if s.P == (0.0, 1.0, 0.0))
    assert s.reachable and s.serial
    assert math.isinf(s.kappa)
    assert s.v_min == 0.0


def test_csv_format(geom, tmp_path):
    samples = sample_box(geom, [[-1, 1]] * 3, 3, 10.0)
    path = write_csv(samples, tmp_path / "map.csv")
    lines = path.read_text().splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) == 28
    unreachable = [l for l in lines[1:] if l.split(",")[3] == "0"]
    assert unreachable, "box should contain unreachable points"
    for line in unreachable:
        assert line.split(",")[4:] == [""] * (len(CSV_COLUMNS) - 4)
    reach = [l for l in lines[1:] if l.split(",")[3] == "1"]
    assert any(",inf," in l for l in reach)


def test_summary_matches_csv_recomputation(geom, tmp_path):
    samples = sample_box(geom, [[-0.35, 0.35]] * 3, 7, 10.0)
    summary = summarize(samples, geom)
    rows = read_csv(write_csv(samples, tmp_path / "m.csv"))
    reach = [r for r in rows if r["reachable"] == 1.0]
    assert max(r["kappa"] for r in reach) == pytest.approx(summary.kappa_max, rel=1e-8)
    assert max(max(r["alpha1"], r["alpha2"], r["alpha3"]) for r in reach) == pytest.approx(
        summary.alpha_max_observed, rel=1e-8
    )
    assert max(max(r["Fb1"], r["Fb2"], r["Fb3"]) for r in reach) == pytest.approx(summary.F_b_max, rel=1e-8)
    assert min(r["v_min"] for r in reach) == pytest.approx(summary.v_amp_range[0], rel=1e-8)
    assert max(r["v_max"] for r in reach) == pytest.approx(summary.v_amp_range[1], rel=1e-8)
    assert len(reach) / len(rows) == summary.reachable_fraction


@pytest.mark.parametrize("n", [3, 5, 6])
def test_nested_refinement_monotone(geom, n):
    box = [[-0.4, 0.3], [-0.3, 0.4], [-0.2, 0.35]]
    coarse = summarize(sample_box(geom, box, n, 10.0), geom)
    fine = summarize(sample_box(geom, box, 2 * n - 1, 10.0), geom)
    assert fine.kappa_max >= coarse.kappa_max
    assert fine.alpha_max_observed >= coarse.alpha_max_observed


def test_output_independent_of_parallelism(geom, monkeypatch):
    box = [[-0.5, 0.5]] * 3
    serial = samples_to_csv(sample_box(geom, box, 7, 10.0, workers=1))
    assert samples_to_csv(sample_box(geom, box, 7, 10.0, workers=4)) == serial
    monkeypatch.setenv("ORTHOKIN_THREADS", "3")
    assert samples_to_csv(sample_box(geom, box, 7, 10.0)) == serial


def test_bad_thread_env(geom, monkeypatch):
    monkeypatch.setenv("ORTHOKIN_THREADS", "zero")
    with pytest.raises(InvalidInputError):
        sample_box(geom, [[0, 0.1]] * 3, 2, 10.0)


def test_negative_load_rejected(geom):
    with pytest.raises(InvalidInputError):
        sample_box(geom, [[0, 0.1]] * 3, 2, -1.0)


def test_nine_significant_digits(geom):
    text = samples_to_csv(sample_box(geom, [[0.1, 0.123456789123]] * 3, 2, 10.0, workers=1))
    row = text.splitlines()[-1].split(",")
    assert row[0] == "0.123456789"
    assert np.isfinite(float(row[7]))
