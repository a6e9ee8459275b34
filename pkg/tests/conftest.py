import math

import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

ACCEPTANCE = {}


@pytest.fixture
def acceptance():
    """Collects one verdict line per acceptance criterion."""
    return ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[key])


def ang_close(a, b, tol):
    """Angles equal modulo 2*pi."""
    d = math.remainder(a - b, 2 * math.pi)
    return abs(d) <= tol
