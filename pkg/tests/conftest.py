import pytest

from nonassoc.algebra import direct_product, field_algebra
from nonassoc.families import cayley_dickson, minimal_instances, split_cayley

# lines printed by the acceptance module, echoed in the terminal summary
ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def instances():
    return minimal_instances()


@pytest.fixture(scope="session")
def quaternions():
    return cayley_dickson((-1, -1))


@pytest.fixture(scope="session")
def octonions():
    return cayley_dickson((-1, -1, -1))


@pytest.fixture(scope="session")
def cayley():
    return split_cayley()


@pytest.fixture(scope="session")
def fxf():
    return direct_product(field_algebra(), field_algebra(), name="FxF")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
