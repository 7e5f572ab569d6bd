import numpy as np
import pytest

from ophh.matrices import rng_stream

CUBIC_A = np.array([[3.0, -1.0], [-1.0, 1.0]])
CUBIC_B = np.diag([1.0, 0.0])


@pytest.fixture
def rng():
    return rng_stream(1234, 0)


@pytest.fixture
def cubic_pair():
    return CUBIC_A.astype(complex), CUBIC_B.astype(complex)


ACCEPTANCE_KEY = pytest.StashKey[dict]()


@pytest.fixture
def acceptance_log(request):
    """Collects one verdict line per acceptance criterion for the terminal summary."""
    return request.config.stash.setdefault(ACCEPTANCE_KEY, {})


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE_KEY, {})
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(lines):
        terminalreporter.write_line(lines[number])
