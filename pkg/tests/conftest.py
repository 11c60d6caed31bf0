import sys

import numpy as np
import pytest

from eofbound.states import BipartiteDims, DensityMatrix, PureState


def bell_vector():
    return np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)


@pytest.fixture
def bell_pure():
    return PureState(BipartiteDims(2, 2), bell_vector())


@pytest.fixture
def bell():
    v = bell_vector()
    return DensityMatrix(BipartiteDims(2, 2), np.outer(v, v.conj()))


@pytest.fixture
def product_00():
    rho = np.zeros((4, 4))
    rho[0, 0] = 1
    return DensityMatrix(BipartiteDims(2, 2), rho)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)



def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
