import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from seirs.errors import ModelValidationError, NegativeStateError, NonFiniteStateError
from seirs.model import (
    InvariantBox,
    ModelParams,
    StateVec,
    forced_mass_action_params,
    jacobian,
    mass_action,
    michaelis_menten,
    standard,
    vector_field,
)
from seirs.periodic import PeriodicCoefficient

component = st.floats(min_value=0.0, max_value=2.0)


def test_vector_field_at_published_state(unforced, inc):
    dx = vector_field(unforced, inc, 0.0, StateVec(0.1, 0.1, 0.1, 0.1))
    np.testing.assert_allclose(dx, [1.731, -0.231, -0.102, -0.198], atol=1e-12)


def test_vector_field_at_published_state_with_forcing(forced, inc):
    dx = vector_field(forced(6.9, 0.1), inc, 0.0, StateVec(0.1, 0.1, 0.1, 0.1))
    np.testing.assert_allclose(dx, [1.7241, -0.2241, -0.102, -0.198], atol=1e-12)


def test_vector_field_uses_forcing_at_t(endemic_cell, inc):
    x = np.array([0.5, 0.1, 0.2, 0.1])
    at_peak = vector_field(endemic_cell, inc, 0.0, x)
    at_trough = vector_field(endemic_cell, inc, 0.5, x)
    assert at_peak[1] - at_trough[1] == pytest.approx(6.9 * 1.2 * 0.5 * 0.2)


@given(
    beta=st.floats(min_value=0.5, max_value=10.0),
    b=st.floats(min_value=0.0, max_value=0.9),
    t=st.floats(min_value=0.0, max_value=3.0),
    s=component, e=component, i=component, r=component,
)
@settings(max_examples=100, deadline=None)
def test_components_sum_to_population_balance(beta, b, t, s, e, i, r):
    params = forced_mass_action_params(beta, b)
    dx = vector_field(params, mass_action(), t, np.array([s, e, i, r]))
    n = s + e + i + r
    assert dx.sum() == pytest.approx(2.0 - 2.0 * n, abs=1e-12 * (1.0 + beta * n * n))


def test_disease_free_states_stay_disease_free(endemic_cell, inc):
    dx = vector_field(endemic_cell, inc, 0.3, np.array([0.7, 0.0, 0.0, 0.2]))
    assert dx[1] == 0.0
    assert dx[2] == 0.0


@pytest.mark.parametrize("incidence", [mass_action(), standard(), michaelis_menten("N / (1 + N)")])
def test_jacobian_matches_finite_differences(endemic_cell, incidence):
    x = np.array([0.6, 0.15, 0.2, 0.05])
    analytic = jacobian(endemic_cell, incidence, 0.25, x)
    numeric = np.empty((4, 4))
    h = 1e-6
    for k in range(4):
        step = np.zeros(4)
        step[k] = h
        numeric[:, k] = (
            vector_field(endemic_cell, incidence, 0.25, x + step) - vector_field(endemic_cell, incidence, 0.25, x - step)
        ) / (2.0 * h)
    np.testing.assert_allclose(analytic, numeric, rtol=1e-6, atol=1e-8)


def test_non_finite_state_rejected(unforced, inc):
    with pytest.raises(NonFiniteStateError):
        vector_field(unforced, inc, 0.0, np.array([np.nan, 0.1, 0.1, 0.1]))


class TestModelParams:
    def test_bars(self, endemic_cell):
        bars = endemic_cell.bars()
        assert (bars.lam, bars.mu, bars.beta, bars.eta, bars.eps, bars.gamma) == (2.0, 2.0, 6.9, 0.0, 1.0, 0.02)
        assert bars.population == 1.0

    def test_rates(self, endemic_cell):
        assert endemic_cell.rates(0.0) == pytest.approx((2.0, 2.0, 6.9 * 1.6, 0.0, 1.0, 0.02))

    def test_nonpositive_beta_rejected(self):
        with pytest.raises(ValueError):
            forced_mass_action_params(6.9, 1.2)

    def test_negative_gamma_rejected(self, unforced):
        with pytest.raises(ValueError):
            ModelParams(
                lam=unforced.lam, mu=unforced.mu, beta=unforced.beta, eta=unforced.eta, eps=unforced.eps,
                gamma=PeriodicCoefficient.constant_value(-0.1), period=1.0,
            )

    def test_period_mismatch_rejected(self, unforced):
        with pytest.raises(ValueError):
            ModelParams(
                lam=PeriodicCoefficient.constant_value(2.0, period=2.0), mu=unforced.mu, beta=unforced.beta,
                eta=unforced.eta, eps=unforced.eps, gamma=unforced.gamma, period=1.0,
            )

    def test_with_beta_revalidates(self, unforced):
        assert unforced.with_beta(PeriodicCoefficient.cosine(5.9, 0.1)).bars().beta == 5.9
        with pytest.raises(ValueError):
            unforced.with_beta(PeriodicCoefficient.constant_value(0.0))

    def test_population_bounds(self):
        params = forced_mass_action_params(6.9, 0.6)
        assert params.population_bounds() == (1.0, 1.0)


class TestStateVec:
    def test_population(self):
        assert StateVec(0.1, 0.2, 0.3, 0.4).n == pytest.approx(1.0)

    def test_negative_rejected(self):
        with pytest.raises(NegativeStateError):
            StateVec(-0.1, 0.0, 0.0, 0.0)

    def test_from_values_clamps_round_off(self):
        state = StateVec.from_values([0.5, -1e-14, 0.1, 0.0])
        assert state.e == 0.0

    def test_from_values_rejects_real_undershoot(self):
        with pytest.raises(NegativeStateError):
            StateVec.from_values([0.5, -1e-3, 0.1, 0.0])


class TestInvariantBox:
    def test_collapsed_interval_is_widened(self, unforced):
        box = InvariantBox.from_params(unforced)
        assert box.n_lower == pytest.approx(0.95)
        assert box.n_upper == pytest.approx(1.05)

    def test_varying_recruitment(self, unforced):
        params = ModelParams(
            lam=PeriodicCoefficient.cosine(2.0, 0.5), mu=unforced.mu, beta=unforced.beta,
            eta=unforced.eta, eps=unforced.eps, gamma=unforced.gamma, period=1.0,
        )
        box = InvariantBox.from_params(params)
        assert (box.n_lower, box.n_upper) == pytest.approx((0.5, 1.5))

    def test_degenerate_box_rejected(self):
        with pytest.raises(ModelValidationError):
            InvariantBox(n_lower=1.0, n_upper=0.5)
        with pytest.raises(ModelValidationError):
            InvariantBox(n_lower=0.0, n_upper=1.0)
