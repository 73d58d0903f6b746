import pytest

from fincoh import catalog
from fincoh.actions import build_action, trivial_action

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def Z2():
    return catalog.get("Z2")


@pytest.fixture
def Z3():
    return catalog.get("Z3")


@pytest.fixture
def Z4():
    return catalog.get("Z4")


@pytest.fixture
def S3():
    return catalog.get("S3")


@pytest.fixture
def inv_z3(Z2, Z3):
    """Z/2 acting on Z/3 by inversion."""
    return build_action(Z2, Z3, {1: [0, 2, 1]})


@pytest.fixture
def inv_z4(Z2, Z4):
    """Z/2 acting on Z/4 by inversion."""
    return build_action(Z2, Z4, {1: [0, 3, 2, 1]})


@pytest.fixture
def triv_z2(Z2):
    return trivial_action(Z2, Z2)


@pytest.fixture
def conj_s3(Z2, S3):
    """Z/2 acting on S3 by conjugation with the transposition (0 1)."""
    t = 2  # permutation (1, 0, 2)
    assert S3.inv(t) == t
    return build_action(Z2, S3, {1: [S3.conj(t, g) for g in S3.elements]})


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
