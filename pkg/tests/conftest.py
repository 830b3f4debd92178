import hypothesis
import pytest

from spectrum_eq.game import GameDefinition

hypothesis.settings.register_profile("default", max_examples=100, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.load_profile("default")

# filled by tests/test_acceptance.py, printed once at the end of the run
ACCEPTANCE_LINES = []


@pytest.fixture
def duo():
    return GameDefinition(2, 10, 1)


@pytest.fixture
def trio():
    return GameDefinition(3, 10, 1)


@pytest.fixture
def duo_grid():
    return GameDefinition(2, 10, 1, "discrete")


@pytest.fixture
def trio_grid():
    return GameDefinition(3, 10, 1, "discrete")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
