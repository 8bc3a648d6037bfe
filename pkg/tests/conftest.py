import pytest
from hypothesis import settings
from mpmath import mp, mpf

from rcf.numerics import PrecisionContext

settings.register_profile("rcf", deadline=None, max_examples=40)
settings.load_profile("rcf")


@pytest.fixture
def ctx():
    return PrecisionContext(256)


@pytest.fixture
def ctx128():
    return PrecisionContext(128)


def close(a, b, tol):
    """Relative-or-absolute closeness at the precision the values carry."""
    with mp.workprec(512):
        return abs(mpf(a) - mpf(b)) <= tol * max(1, abs(mpf(b)))


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
