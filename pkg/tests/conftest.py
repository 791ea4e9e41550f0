import math
import os
import sys

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

SRC = os.path.join(os.path.dirname(__file__), os.pardir, "src")
if SRC not in sys.path:
    sys.path.insert(0, SRC)

settings.register_profile(
    "ci",
    max_examples=60,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")

from ellcover.elliptic import Lattice  # noqa: E402


@pytest.fixture
def square():
    """Unit square lattice: periods 1 and i."""
    return Lattice(0.5, 0.5j)


def random_lattice(rng) -> Lattice:
    """Random oriented lattice with 0.2 <= Im(omega2/omega1) <= 5."""
    theta = rng.uniform(0.0, 2.0 * math.pi)
    mag = rng.uniform(0.5, 2.0)
    omega1 = mag * complex(math.cos(theta), math.sin(theta))
    tau = complex(rng.uniform(-0.5, 0.5), rng.uniform(0.2, 5.0))
    return Lattice(omega1, tau * omega1)


def interior_points(lattice: Lattice, rng, count: int) -> np.ndarray:
    """Sample points well inside the fundamental cell, away from the poles."""
    a = rng.uniform(0.06, 0.44, count)
    b = rng.uniform(0.06, 0.44, count)
    p1, p2 = lattice.periods
    return a * p1 + b * p2
