"""
Shared fixtures: the forced mass-action family

    Lambda = mu = 2, eps = 1, gamma = 0.02, eta = 0, beta(t) = beta0 (1 + b cos 2 pi t)
"""

import pytest

from seirs.model import forced_mass_action_params, mass_action


@pytest.fixture
def inc():
    return mass_action()


@pytest.fixture
def forced():
    """Factory (beta0, b[, phase]) -> ModelParams"""
    return forced_mass_action_params


@pytest.fixture
def unforced():
    return forced_mass_action_params(6.9, 0.0)


@pytest.fixture
def endemic_cell():
    return forced_mass_action_params(6.9, 0.6)


@pytest.fixture
def extinction_cell():
    return forced_mass_action_params(5.9, 0.1)
