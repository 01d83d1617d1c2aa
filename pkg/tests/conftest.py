import pytest

ACCEPTANCE_LINES: dict = {}


@pytest.fixture
def record_criterion():
    def record(result):
        ACCEPTANCE_LINES[result.name] = result.line()
        print(result.line())
        return result

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[name])
