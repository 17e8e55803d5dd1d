import pytest

_CRITERIA: list[tuple[str, bool, str]] = []


@pytest.fixture
def criterion():
    """Record one acceptance line: ``criterion(name, ok, detail)``."""

    def record(name, ok, detail=""):
        _CRITERIA.append((name, bool(ok), detail))
        print(f"[{'PASS' if ok else 'FAIL'}] {name} {detail}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _CRITERIA:
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {name} {detail}")
