import numpy as np
import pytest

from cloneleak import bloch_grid

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)


def kron_chain(*mats):
    out = np.array([[1.0]], dtype=complex)
    for m in mats:
        out = np.kron(out, m)
    return out


@pytest.fixture(scope="session")
def grid():
    return bloch_grid(26, 0)


@pytest.fixture
def rng():
    return np.random.default_rng(20260809)
