import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

_LINES: list[str] = []


@pytest.fixture(scope="session")
def acceptance_lines():
    return _LINES


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for text in sorted(_LINES, key=lambda s: int(s.split(":")[0].split()[1])):
        terminalreporter.write_line(text)
