from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile(
    "default", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def rationals(lo=-20, hi=20, max_den=12):
    return st.builds(Fraction, st.integers(lo, hi), st.integers(1, max_den))


def radial(n, lo=-20, hi=20):
    return st.lists(rationals(lo, hi), min_size=n + 1, max_size=n + 1)


@pytest.fixture(scope="session")
def ham7():
    from delsarte.params import hamming_parameters

    return hamming_parameters(7, 2)


@pytest.fixture(scope="session")
def ham8():
    from delsarte.params import hamming_parameters

    return hamming_parameters(8, 2)


@pytest.fixture(scope="session")
def j42():
    from delsarte.params import johnson_parameters

    return johnson_parameters(4, 2)


# one PASS/FAIL line per acceptance criterion, printed after the run
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
