import pytest

CRITERIA: dict[int, str] = {}


@pytest.fixture
def record():
    def _record(number: int, ok: bool, detail: str) -> None:
        CRITERIA[number] = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
        print(CRITERIA[number])

    return _record


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for n in sorted(CRITERIA):
            terminalreporter.write_line(CRITERIA[n])
