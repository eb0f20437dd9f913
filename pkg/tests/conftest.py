import pytest

_ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def record():
    def _record(criterion: int, passed: bool, detail: str) -> None:
        _ACCEPTANCE[criterion] = f"criterion {criterion:>2}: {'PASS' if passed else 'FAIL'}  {detail}"
    return _record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_ACCEPTANCE):
        terminalreporter.write_line(_ACCEPTANCE[key])
