import pytest

ACCEPTANCE_LINES = []


@pytest.fixture
def record_criterion():
    def record(result):
        ACCEPTANCE_LINES.append(result.line() + "  [%.1fs]" % result.seconds)
        print(ACCEPTANCE_LINES[-1])
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
