import math

import pytest

from orthokin import InvalidInputError
from orthokin.units import parse_quantity


@pytest.mark.parametrize(
    "text, kind, value",
    [
        ("100mm", "length", 0.1),
        ("0.1", "length", 0.1),
        ("0.1m", "length", 0.1),
        ("-25mm", "length", -0.025),
        ("10Nm", "torque", 10.0),
        ("10N.m", "torque", 10.0),
        ("10000Nmm", "torque", 10.0),
        ("14deg", "angle", 14.0),
        ("14", "angle", 14.0),
        ("144mm2", "area", 1.44e-4),
        ("144mm²", "area", 1.44e-4),
        ("1.44e-4", "area", 1.44e-4),
        ("0.7MPa", "stress", 0.7e6),
    ],
)
def test_parse(text, kind, value):
    assert parse_quantity(text, kind) == pytest.approx(value, rel=1e-12)


def test_radians_converted_to_degrees():
    assert parse_quantity(f"{math.pi / 2}rad", "angle") == pytest.approx(90.0, rel=1e-12)


@pytest.mark.parametrize("text, kind", [("10kg", "length"), ("mm", "length"), ("1..2", "length"), ("10Nm", "area")])
def test_rejects(text, kind):
    with pytest.raises(InvalidInputError):
        parse_quantity(text, kind)
