"""Shared helpers for the test suite."""

import numpy as np
import pytest

from agejam.scenario import scenario_from_dict


def make_scenario(**sections):
    """Scenario from sparse section overrides, e.g. traffic={"lambda": 0.4}."""
    return scenario_from_dict(dict(sections))


@pytest.fixture
def rng():
    return np.random.default_rng(0xA6E1A5)
