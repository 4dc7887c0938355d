import math

import pytest

from thermoifs import IfsSpec, MapSpec, PotentialSpec, middle_thirds

DELTA_CANTOR = math.log(2) / math.log(3)


def nonlinear_system():
    return IfsSpec((MapSpec.nonlinear(0.3, 0.05, 0.05), MapSpec.nonlinear(0.35, 0.6, -0.05)))


def darst_01_05():
    return IfsSpec.affine((0.1, 0.5))


def darst_001_08():
    return IfsSpec.affine((0.01, 0.8))


def falconer():
    return IfsSpec.affine((0.25, 0.4))


# (name, system, potential, alpha) for every test configuration
CONFIGS = [
    ("middle-thirds", middle_thirds, PotentialSpec.delta_geometric(), 1.0),
    ("darst-01-05", darst_01_05, PotentialSpec.darst(), 1.0),
    ("darst-001-08", darst_001_08, PotentialSpec.darst(), 1.0),
    ("falconer", falconer, PotentialSpec.delta_geometric(), 1.0),
    ("nonlinear", nonlinear_system, PotentialSpec.delta_geometric(), 1.0),
]


@pytest.fixture
def cantor():
    return middle_thirds()


# one line per acceptance criterion, printed after the run
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)
