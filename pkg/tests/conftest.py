"""Shared fixtures: the default-resolution field runs cost seconds each,
so they run once per session and feed both the unit and acceptance tests."""

import sys

import pytest

from qdifflab.pde import (scenario_closure_free, scenario_quantum_free,
                          scenario_thermal_cosine)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Replay the acceptance-criterion PASS/FAIL lines after the run."""
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None) if mod else None
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def quantum_free_report():
    return scenario_quantum_free()


@pytest.fixture(scope="session")
def closure_free_report():
    return scenario_closure_free()


@pytest.fixture(scope="session")
def thermal_cosine_report():
    return scenario_thermal_cosine()
