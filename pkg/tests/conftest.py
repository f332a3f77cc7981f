import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from sixpg.discretization import get_discretization  # noqa: E402


@pytest.fixture(scope="session")
def disc30():
    return get_discretization(30)


@pytest.fixture(scope="session")
def disc100():
    return get_discretization(100)


ACCEPTANCE_LINES = {}


@pytest.fixture
def report():
    """Record a one-line verdict for an acceptance criterion."""
    def _record(number, ok, detail):
        line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES[number] = line
        print(line)
        return ok
    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
