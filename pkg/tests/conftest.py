import pytest

_ACCEPTANCE: dict = {}


@pytest.fixture
def criterion(request):
    """Record a one-line outcome for an acceptance criterion.

    Usage: ``criterion("AC1", "description", passed, detail)``.
    """

    def record(cid, title, passed, detail=""):
        _ACCEPTANCE[cid] = (title, bool(passed), detail)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(_ACCEPTANCE, key=lambda c: int(c[2:])):
        title, passed, detail = _ACCEPTANCE[cid]
        mark = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{mark}] {cid:<5s} {title}  {detail}")
