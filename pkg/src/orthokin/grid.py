"""Regular Cartesian grids over an axis-aligned box."""

from __future__ import annotations

import itertools

import numpy as np

from .errors import InvalidInputError


def as_box(box) -> np.ndarray:
    """Coerce ``[[xlo, xhi], [ylo, yhi], [zlo, zhi]]`` (or 6 flat numbers) to a (3, 2) array."""
    try:
        b = np.asarray(box, dtype=float).reshape(3, 2)
    except (TypeError, ValueError):
        raise InvalidInputError("box must be three [lo, hi] intervals") from None
    if not np.all(np.isfinite(b)) or np.any(b[:, 0] > b[:, 1]):
        raise InvalidInputError("box intervals must be finite with lo <= hi")
    return b


def grid_points(box, n: int) -> np.ndarray:
    """All n**3 grid points in lexicographic (x outermost, z innermost) order."""
    if int(n) != n or n < 2:
        raise InvalidInputError("need at least 2 samples per axis")
    b = as_box(box)
    axes = [np.linspace(lo, hi, int(n)) for lo, hi in b]
    return np.array(list(itertools.product(*axes)), dtype=float)
