import numpy as np
import pytest

from ncdbell import BitString


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_bits(n, seed=0, p_one=0.5):
    r = np.random.default_rng(seed)
    return BitString.from_bits((r.random(n) < p_one).astype(np.uint8))


ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE:
        terminalreporter.write_line(line)
