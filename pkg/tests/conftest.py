import math

import numpy as np
import pytest

from sprlab.bases import (
    exponential_basis,
    iid_basis,
    lacunary_sine_basis,
    rudin_2d_basis,
)

TERNARY = [(math.sqrt(1.5), 1 / 3), (0.0, 1 / 3), (-math.sqrt(1.5), 1 / 3)]


def complex_four_point():
    r = math.sqrt(1.5)
    w = 2 * math.pi / 3
    return [(0j, 1 / 3)] + [
        (r * complex(math.cos(k * w), math.sin(k * w)), 2 / 9) for k in range(3)
    ]


@pytest.fixture(scope="session")
def sine4():
    return lacunary_sine_basis(4, base=4, grid_n=4096)


@pytest.fixture(scope="session")
def sine3():
    return lacunary_sine_basis(3, base=3, grid_n=1024)


@pytest.fixture(scope="session")
def rudin():
    return rudin_2d_basis([1, 2, 5], 3, 64)


@pytest.fixture(scope="session")
def ternary():
    return iid_basis(TERNARY, 5)


@pytest.fixture(scope="session")
def complex_iid():
    return iid_basis(complex_four_point(), 3)


@pytest.fixture(scope="session")
def expo12():
    return exponential_basis([1, 2], 64)


def unit_vector(rng, m, field="real"):
    z = rng.standard_normal(m) + 1j * rng.standard_normal(m)
    if field == "real":
        z = z.real.astype(np.complex128)
    return z / np.linalg.norm(z)
