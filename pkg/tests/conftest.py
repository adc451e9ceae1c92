import pytest

# one line per acceptance criterion, printed at the end of the session
CRITERIA: list[str] = []


def report(number: int, ok: bool, detail: str) -> str:
    line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    CRITERIA.append(line)
    print(line)
    return line


@pytest.fixture
def criterion():
    return report


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in sorted(CRITERIA):
            terminalreporter.write_line(line)
