import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from coxtile import build_system, table_row  # noqa: E402


@pytest.fixture(scope="session")
def a3():
    return build_system("A3")


@pytest.fixture(scope="session")
def a4():
    return build_system("A4")


@pytest.fixture(scope="session")
def d4():
    return build_system("D4")


@pytest.fixture(scope="session")
def rows():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = table_row(name)
        return cache[name]

    return get


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import VERDICTS
    except ImportError:
        return
    if not VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(VERDICTS):
        terminalreporter.write_line(VERDICTS[n])
