import pytest

from legdga.laurent import Field

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def gf5():
    return Field.parse("fp:5")


@pytest.fixture(scope="session")
def qq():
    return Field.parse("q")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
