import pytest

from cpw import CircleRotation, FinitePermutation, GaussianRational, IntegerShift

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


def q(text):
    return GaussianRational(text)


@pytest.fixture
def swap():
    return FinitePermutation([1, 0])


@pytest.fixture
def two_orbit():
    return FinitePermutation([1, 0, 2])


@pytest.fixture
def three_cycle():
    return FinitePermutation([1, 2, 0])


@pytest.fixture
def shift():
    return IntegerShift()


@pytest.fixture
def circle_i():
    return CircleRotation(q("i"))


@pytest.fixture
def circle_irr():
    return CircleRotation(q("3/5+4/5i"))
