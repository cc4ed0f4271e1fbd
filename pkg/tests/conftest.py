import numpy as np
import pytest

from grmkit.field import GF

SMALL_ORDERS = [2, 3, 4, 5, 7, 8, 9]

_acceptance_lines: list[str] = []


@pytest.fixture
def rng():
    return np.random.default_rng(0)


@pytest.fixture(params=SMALL_ORDERS, ids=lambda q: f"GF{q}")
def field(request):
    return GF(request.param)


@pytest.fixture
def acceptance_log():
    return _acceptance_lines


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
