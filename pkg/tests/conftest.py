import numpy as np
import pytest

from hsrkit import RobotGeometry


@pytest.fixture
def geom() -> RobotGeometry:
    """Default bench geometry: L = 0.16 m, r = 0.02 m, phi_max = pi."""
    return RobotGeometry()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260818)
