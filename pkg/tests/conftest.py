import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_CRITERIA = {}


@pytest.fixture
def criterion():
    """``criterion(tag, ok, detail)`` records one acceptance line and returns ``ok``."""

    def record(tag, ok, detail=""):
        _CRITERIA[tag] = (bool(ok), detail)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for tag in sorted(_CRITERIA):
        ok, detail = _CRITERIA[tag]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {tag}: {detail}")
