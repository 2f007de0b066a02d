"""Shared fixtures for the simulator test suite."""

import pytest

from adrsim import Scenario, ScenarioConfig, generate_scenario
from support import ACCEPTANCE_LINES


@pytest.fixture(scope="session")
def default_scenario() -> Scenario:
    """One 50-debris scenario reused by read-only tests."""
    return generate_scenario(ScenarioConfig(seed=42))


@pytest.fixture()
def small_config() -> ScenarioConfig:
    """Three-debris config for fast stepping tests."""
    return ScenarioConfig(n_debris=3, seed=7)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance verdicts")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
