import pytest

from oracles import SMALL
from flagmono.matroid import from_bases, uniform


@pytest.fixture(scope="session")
def small_catalog():
    return SMALL


@pytest.fixture
def u23():
    return uniform(2, 3)


@pytest.fixture
def u34():
    return uniform(3, 4)


@pytest.fixture
def par23():
    """Rank 2 on [3] with 2 parallel to 3."""
    return from_bases(3, [(1, 2), (1, 3)])


@pytest.fixture
def par34():
    """U(3,4) with 3 and 4 made parallel."""
    return from_bases(4, [(1, 2, 3), (1, 2, 4)])


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[k])
