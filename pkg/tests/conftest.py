import pytest

from modbgg.rootdata import group


@pytest.fixture(scope="session")
def gsp4():
    return group("gsp4")


@pytest.fixture(scope="session")
def gl3():
    return group("gl3")


def pytest_terminal_summary(terminalreporter):
    from tests.test_acceptance import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for number in sorted(LINES):
            terminalreporter.write_line(LINES[number])
