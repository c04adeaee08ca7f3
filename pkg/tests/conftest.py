import pytest

from stackyfan import io


@pytest.fixture(scope="session")
def docs():
    return {name: io.fixture(name) for name in io.FIXTURES}


@pytest.fixture(scope="session")
def fans(docs):
    return {name: d.stacky_fan for name, d in docs.items()}


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
