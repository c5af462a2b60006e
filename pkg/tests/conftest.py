import pytest
import sympy as sp

from rotpoly.measures import MeasureSpec, radial_moments

# One line per acceptance criterion, filled in by test_acceptance and
# echoed after the run so the verdicts survive output capture.
acceptance_verdicts = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if acceptance_verdicts:
        terminalreporter.section("acceptance verdicts")
        for line in acceptance_verdicts:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def gaussian_m():
    return radial_moments(MeasureSpec("gaussian", {"sigma": sp.Integer(1)}), 20)


@pytest.fixture(scope="session")
def disc_m():
    return radial_moments(MeasureSpec("uniform-disc", {"radius": sp.Integer(1)}), 20)


@pytest.fixture(scope="session")
def circle_m():
    return radial_moments(MeasureSpec("unit-circle"), 8)


@pytest.fixture(scope="session")
def gaussian_float_m():
    return radial_moments(MeasureSpec("gaussian", {"sigma": 0.8}), 20)


@pytest.fixture(scope="session")
def disc_float_m():
    return radial_moments(MeasureSpec("uniform-disc", {"radius": 1.3}), 20)
