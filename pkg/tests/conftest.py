"""Shared fixtures; collects one PASS/FAIL line per acceptance criterion."""

import pytest

_ACCEPTANCE = {}


@pytest.fixture
def acceptance_line():
    def record(number: int, title: str, ok: bool, detail: str = "") -> None:
        _ACCEPTANCE[number] = (title, bool(ok), detail)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, ok, detail = _ACCEPTANCE[number]
        tail = f"  ({detail})" if detail else ""
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} [{number:2d}] {title}{tail}")
