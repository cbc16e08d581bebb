import pytest

from qlat.lattice import boolean, chain
from qlat.polyfn import FunctionTable


@pytest.fixture(scope="session")
def C2():
    return chain(2)


@pytest.fixture(scope="session")
def C3():
    return chain(3)


@pytest.fixture(scope="session")
def B2():
    return boolean(2)


@pytest.fixture(scope="session")
def xor(C2):
    return FunctionTable(2, C2, C2, [0, 1, 1, 0])


@pytest.fixture(scope="session")
def med3(C3):
    """med(x1, m, x2) on the three-element chain."""
    return FunctionTable.from_callable(2, C3, C3, lambda a, b: C3.med(a, 1, b))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
