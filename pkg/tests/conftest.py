import numpy as np
import pytest

from transrad import validate_pair

JORDAN = np.array([[0, 1], [0, 0]], dtype=complex)
I2 = np.eye(2, dtype=complex)
D_PM = np.diag([1.0, -1.0]).astype(complex)
D_12 = np.diag([1.0, 2.0]).astype(complex)
D4 = np.diag([1, -1, 1j, -1j])


@pytest.fixture
def jordan_pair():
    return validate_pair(JORDAN, I2)


@pytest.fixture
def pm_pair():
    return validate_pair(D_PM, I2)


@pytest.fixture
def pm_12_pair():
    return validate_pair(D_PM, D_12)


def rng_for(seed):
    return np.random.default_rng(seed)


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
