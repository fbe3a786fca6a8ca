import numpy as np
import pytest

from orthokin import default_orthoglide

# Every point of this cube is reachable for the default machine, and the
# conditioning index stays below ~3.5 inside it.
WORK_HALF_WIDTH = 0.35


def random_work_poses(n, seed, bar_length=1.0):
    rng = np.random.default_rng(seed)
    h = WORK_HALF_WIDTH * bar_length
    return rng.uniform(-h, h, size=(n, 3))


@pytest.fixture
def geom():
    return default_orthoglide()


@pytest.fixture(scope="session")
def work_poses():
    return random_work_poses(1000, seed=20021)


def rotation_matrix(axis, angle):
    axis = np.asarray(axis, dtype=float)
    axis = axis / np.linalg.norm(axis)
    K = np.array([[0, -axis[2], axis[1]], [axis[2], 0, -axis[0]], [-axis[1], axis[0], 0]])
    return np.eye(3) + np.sin(angle) * K + (1 - np.cos(angle)) * K @ K
