import pytest

_VERDICTS: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def criterion():
    """Record ``(number, ok, detail)`` for the acceptance summary, then assert ``ok``."""

    def record(number: int, ok: bool, detail: str) -> None:
        _VERDICTS[number] = (bool(ok), detail)
        print(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail

    return record


def pytest_terminal_summary(terminalreporter):
    if not _VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_VERDICTS):
        ok, detail = _VERDICTS[number]
        terminalreporter.write_line(f"criterion {number:2}: {'PASS' if ok else 'FAIL'}  {detail}")
