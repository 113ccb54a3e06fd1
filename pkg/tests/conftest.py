import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import _report  # noqa: E402


def pytest_terminal_summary(terminalreporter):
    if _report.LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(_report.LINES):
            terminalreporter.write_line(_report.LINES[k])


import pytest  # noqa: E402

from cext.cayley import enumerate_ball  # noqa: E402
from cext.presentations import indexed_presentation  # noqa: E402


@pytest.fixture(scope="session")
def ball2():
    return enumerate_ball(2, indexed_presentation())


@pytest.fixture(scope="session")
def ball3():
    return enumerate_ball(3, indexed_presentation())


@pytest.fixture(scope="session")
def ball4():
    return enumerate_ball(4, indexed_presentation())
