import pytest

from symcover.characters import configure_tables

ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture(autouse=True, scope="session")
def _memory_tables():
    # tests never touch the user's cache directory
    configure_tables(None, 1, False)
    yield


@pytest.fixture
def record_criterion():
    def record(number: int, passed: bool, detail: str) -> None:
        ACCEPTANCE_LINES[number] = f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}"
        print(ACCEPTANCE_LINES[number])
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[number])
