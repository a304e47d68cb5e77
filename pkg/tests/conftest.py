import pytest

from casimir_fluct.quantities import AtomSpec


@pytest.fixture
def unit_atom():
    """alpha = 1 m^3 so natural-unit values follow from d in metres."""
    return AtomSpec(1.0, label="unit")


@pytest.fixture
def atom():
    return AtomSpec(2.4e-29, omega0=3.2e15, label="test")


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
