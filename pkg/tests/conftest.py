import pytest

from octaglue.census import compute_octahedron_records
from octaglue.octahedron import enumerate_patterns, octahedron_classes


@pytest.fixture(scope="session")
def patterns():
    return enumerate_patterns()


@pytest.fixture(scope="session")
def classes():
    return octahedron_classes()


@pytest.fixture(scope="session")
def records():
    return compute_octahedron_records()


def pytest_terminal_summary(terminalreporter):
    from tests import test_acceptance

    if test_acceptance.VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.VERDICTS:
            terminalreporter.write_line(line)
