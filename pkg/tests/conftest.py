import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_CRITERIA: list[tuple[str, bool, str]] = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line; the test body fills in ``detail``."""
    entry = {"detail": ""}
    yield entry
    rep = getattr(request.node, "rep_call", None)
    passed = bool(rep and rep.passed)
    _CRITERIA.append((request.node.name, passed, entry["detail"]))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in sorted(_CRITERIA):
        mark = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{mark}] {name}  {detail}".rstrip())
