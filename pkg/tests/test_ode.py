import math

import numpy as np
import pytest
from scipy.linalg import expm

from seirs.errors import ModelValidationError, NegativeStateError
from seirs.model import INITIAL_CONDITIONS, InvariantBox, StateVec
from seirs.ode import (
    Trajectory,
    clamp_negative,
    eigenvalues,
    floquet_moduli,
    flow_jacobian,
    flow_map,
    flow_with_jacobian,
    fundamental_matrix,
    integrate,
    simulate,
    spectral_radius,
)
from seirs.sampling import random_initial_conditions


class TestIntegrate:
    def test_linear_scalar_closed_form(self):
        trajectory = integrate(lambda t, y: 2.0 - 2.0 * y, 0.0, [0.0], 1.0, t_eval=[0.5, 1.0])
        assert trajectory.final[0] == pytest.approx(1.0 - math.exp(-2.0), abs=1e-9)
        assert trajectory.states[0, 0] == pytest.approx(1.0 - math.exp(-1.0), abs=1e-9)

    def test_zero_horizon_returns_initial_row(self):
        trajectory = integrate(lambda t, y: -y, 3.0, [0.5, 0.25], 3.0)
        assert len(trajectory) == 1
        assert trajectory.times.tolist() == [3.0]
        assert trajectory.final.tolist() == [0.5, 0.25]

    def test_backwards_horizon_rejected(self):
        with pytest.raises(ModelValidationError):
            integrate(lambda t, y: -y, 1.0, [1.0], 0.0)

    @pytest.mark.parametrize("rel_tol", [0.0, -1e-6, 0.5])
    def test_tolerance_range(self, rel_tol):
        with pytest.raises(ModelValidationError):
            integrate(lambda t, y: -y, 0.0, [1.0], 1.0, rel_tol=rel_tol)

    def test_dense_output_matches_samples(self):
        grid = np.linspace(0.0, 2.0, 11)
        sampled = integrate(lambda t, y: np.cos(t) * y, 0.0, [1.0], 2.0, t_eval=grid, dense=True)
        assert sampled.has_dense_output
        for t, row in zip(grid, sampled.states):
            assert sampled.at(t)[0] == pytest.approx(row[0], rel=1e-7)
            assert row[0] == pytest.approx(math.exp(math.sin(t)), rel=1e-7)

    def test_at_without_dense_output(self):
        trajectory = integrate(lambda t, y: -y, 0.0, [1.0], 1.0)
        with pytest.raises(ValueError):
            trajectory.at(0.5)

    def test_large_undershoot_raises(self):
        with pytest.raises(NegativeStateError):
            integrate(lambda t, y: np.array([-1.0]), 0.0, [0.1], 1.0)

    def test_clamp_negative(self):
        clamped = clamp_negative(np.array([[0.5, -1e-13]]), 1e-12)
        assert clamped.tolist() == [[0.5, 0.0]]
        with pytest.raises(NegativeStateError):
            clamp_negative(np.array([[0.5, -1e-6]]), 1e-12)


class TestTrajectory:
    def test_times_must_increase(self):
        with pytest.raises(ValueError):
            Trajectory(times=np.array([0.0, 0.0]), states=np.zeros((2, 4)))

    def test_frame_columns(self, unforced, inc):
        trajectory = simulate(unforced, inc, INITIAL_CONDITIONS[0], 0.0, 1.0, t_eval=np.linspace(0.0, 1.0, 5))
        frame = trajectory.to_frame()
        assert list(frame.columns) == ["t", "S", "E", "I", "R", "N"]
        assert len(frame) == 5
        assert frame["N"].iloc[0] == pytest.approx(0.4)
        assert trajectory.state(0) == INITIAL_CONDITIONS[0]


class TestSimulate:
    def test_population_relaxes_at_rate_mu(self, endemic_cell, inc):
        # N' = 2 - 2N whatever the incidence
        grid = np.linspace(0.0, 3.0, 31)
        trajectory = simulate(endemic_cell, inc, StateVec(0.1, 0.1, 0.1, 0.1), 0.0, 3.0, t_eval=grid)
        expected = 1.0 - 0.6 * np.exp(-2.0 * grid)
        np.testing.assert_allclose(trajectory.population, expected, atol=1e-8)
        assert trajectory.population[10] == pytest.approx(0.9187988, abs=1e-7)

    @pytest.mark.parametrize("x0", INITIAL_CONDITIONS)
    def test_states_stay_nonnegative(self, endemic_cell, inc, x0):
        trajectory = simulate(endemic_cell, inc, x0, 0.0, 20.0)
        assert np.all(trajectory.states >= 0.0)

    @pytest.mark.slow
    def test_random_trajectories_stay_in_invariant_region(self, endemic_cell, inc):
        lower, upper = endemic_cell.population_bounds()
        for x0 in random_initial_conditions(InvariantBox(n_lower=0.2, n_upper=3.0), 100, seed=5):
            trajectory = simulate(endemic_cell, inc, x0, 0.0, 20.0)
            assert np.all(trajectory.states >= 0.0)
            population = trajectory.population
            assert population.min() >= min(x0.n, lower) - 1e-8
            assert population.max() <= max(x0.n, upper) + 1e-8
            # N' = 2 - 2N
            assert abs(population[-1] - 1.0) <= abs(x0.n - 1.0)


class TestFundamentalMatrix:
    def test_diagonal_matrix_exponential(self):
        phi = fundamental_matrix(lambda t: np.diag([-1.0, 0.5]), 0.0, 2.0)
        np.testing.assert_allclose(phi, np.diag([math.exp(-2.0), math.exp(1.0)]), rtol=1e-8, atol=1e-12)

    def test_constant_matrix_matches_expm(self):
        A = np.array([[-3.0, 6.9], [1.0, -2.02]])
        np.testing.assert_allclose(fundamental_matrix(lambda t: A, 0.0, 1.0), expm(A), rtol=1e-8)

    def test_cocycle(self):
        def A(t):
            return np.array([[-1.0 + np.cos(2.0 * np.pi * t), 1.0], [0.5, -2.0 + 0.3 * np.sin(2.0 * np.pi * t)]])

        whole = fundamental_matrix(A, 0.0, 2.0)
        first = fundamental_matrix(A, 0.0, 1.0)
        second = fundamental_matrix(A, 1.0, 2.0)
        np.testing.assert_allclose(whole, second @ first, rtol=1e-7, atol=1e-10)
        # periodic A: both periods share one monodromy matrix
        np.testing.assert_allclose(first, second, rtol=1e-7, atol=1e-10)

    def test_zero_horizon_identity(self):
        assert fundamental_matrix(lambda t: np.ones((3, 3)), 1.0, 1.0).tolist() == np.eye(3).tolist()


class TestFlow:
    def test_flow_map_composes(self, endemic_cell, inc):
        x0 = np.array([0.5, 0.1, 0.1, 0.1])
        direct = flow_map(endemic_cell, inc, x0, 0.0, 1.0)
        halves = flow_map(endemic_cell, inc, flow_map(endemic_cell, inc, x0, 0.0, 0.4), 0.4, 0.6)
        np.testing.assert_allclose(direct, halves, atol=1e-8)

    def test_flow_jacobian_matches_finite_differences(self, endemic_cell, inc):
        x0 = np.array([0.5, 0.1, 0.1, 0.1])
        analytic = flow_jacobian(endemic_cell, inc, x0, 0.0, 0.5, rel_tol=1e-11, abs_tol=1e-13)
        numeric = np.empty((4, 4))
        h = 1e-4
        for k in range(4):
            step = np.zeros(4)
            step[k] = h
            plus = flow_map(endemic_cell, inc, x0 + step, 0.0, 0.5, rel_tol=1e-11, abs_tol=1e-13)
            minus = flow_map(endemic_cell, inc, x0 - step, 0.0, 0.5, rel_tol=1e-11, abs_tol=1e-13)
            numeric[:, k] = (plus - minus) / (2.0 * h)
        np.testing.assert_allclose(analytic, numeric, rtol=1e-5, atol=1e-6)

    def test_flow_with_jacobian_end_state(self, endemic_cell, inc):
        x0 = np.array([0.5, 0.1, 0.1, 0.1])
        end, _ = flow_with_jacobian(endemic_cell, inc, x0, 0.0, 1.0)
        np.testing.assert_allclose(end, flow_map(endemic_cell, inc, x0, 0.0, 1.0), atol=1e-8)

    def test_zero_time_flow(self, endemic_cell, inc):
        end, jac = flow_with_jacobian(endemic_cell, inc, np.array([0.5, 0.1, 0.1, 0.1]), 0.0, 0.0)
        assert end.tolist() == [0.5, 0.1, 0.1, 0.1]
        assert jac.tolist() == np.eye(4).tolist()


class TestEigenvalues:
    def test_quadratic_formula_for_two_by_two(self):
        A = np.array([[-3.0, 6.9], [1.0, -2.02]])
        got = np.sort_complex(eigenvalues(A))
        expected = np.sort_complex(np.array([(-5.02 - math.sqrt(28.5604)) / 2, (-5.02 + math.sqrt(28.5604)) / 2]))
        np.testing.assert_allclose(got, expected, rtol=1e-12)

    def test_complex_pair(self):
        rotation = np.array([[0.0, -1.0], [1.0, 0.0]])
        assert spectral_radius(rotation) == pytest.approx(1.0)
        assert np.abs(eigenvalues(rotation).imag).tolist() == pytest.approx([1.0, 1.0])

    def test_larger_matrices(self):
        M = np.diag([0.5, -2.0, 0.1, 1.5])
        assert spectral_radius(M) == pytest.approx(2.0)
        assert floquet_moduli(M) == pytest.approx([2.0, 1.5, 0.5, 0.1])

    @pytest.mark.parametrize("M", [np.ones((2, 3)), np.array([[np.inf, 0.0], [0.0, 1.0]])])
    def test_invalid_input(self, M):
        with pytest.raises(ValueError):
            eigenvalues(M)
