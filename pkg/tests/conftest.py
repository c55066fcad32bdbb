import pytest

from darknode import acceptance

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def sweeps():
    """Default-resolution scenario runs shared by every test in the session."""
    return acceptance.Sweeps()


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
