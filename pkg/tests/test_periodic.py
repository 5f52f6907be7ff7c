import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from pydantic import ValidationError
from scipy.integrate import quad

from seirs.periodic import Harmonic, PeriodicCoefficient

finite = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False, allow_infinity=False)
harmonics = st.lists(
    st.builds(
        Harmonic,
        amplitude=finite,
        k=st.integers(min_value=1, max_value=4),
        phase=st.floats(min_value=-math.pi, max_value=math.pi),
    ),
    max_size=3,
)
periods = st.floats(min_value=0.1, max_value=10.0)


def coefficient(constant, hs, period):
    return PeriodicCoefficient(constant=constant, harmonics=tuple(hs), period=period)


@given(constant=finite, hs=harmonics, period=periods, t=st.floats(min_value=-50.0, max_value=50.0))
@settings(max_examples=200, deadline=None)
def test_evaluate_is_periodic(constant, hs, period, t):
    f = coefficient(constant, hs, period)
    scale = 1.0 + abs(constant) + sum(abs(h.amplitude) for h in hs)
    assert f.evaluate(t + period) == pytest.approx(f.evaluate(t), abs=1e-9 * scale)


@given(constant=finite, hs=harmonics, period=periods)
@settings(max_examples=50, deadline=None)
def test_mean_matches_quadrature(constant, hs, period):
    f = coefficient(constant, hs, period)
    numeric, _ = quad(f.evaluate, 0.0, period, limit=200)
    scale = 1.0 + abs(constant) + sum(abs(h.amplitude) for h in hs)
    assert f.mean() == pytest.approx(numeric / period, abs=1e-9 * scale)


@given(
    constant=finite,
    hs=harmonics,
    period=st.floats(min_value=0.5, max_value=10.0),
    t0=st.floats(min_value=-5.0, max_value=5.0),
    length=st.floats(min_value=0.0, max_value=2.0),
)
@settings(max_examples=50, deadline=None)
def test_integral_matches_quadrature(constant, hs, period, t0, length):
    f = coefficient(constant, hs, period)
    numeric, _ = quad(f.evaluate, t0, t0 + length, limit=200)
    scale = (1.0 + abs(constant) + sum(abs(h.amplitude) for h in hs)) * (1.0 + length)
    assert f.integral(t0, t0 + length) == pytest.approx(numeric, abs=1e-8 * scale)


def test_constant_coefficient():
    f = PeriodicCoefficient.constant_value(2.0)
    assert f.is_constant
    assert f.evaluate(0.3) == 2.0
    assert f(np.array([0.0, 0.5])).tolist() == [2.0, 2.0]
    assert f.extrema() == (2.0, 2.0)
    assert f.mean() == 2.0


def test_cosine_constructor():
    f = PeriodicCoefficient.cosine(6.9, 0.6)
    assert f.evaluate(0.0) == pytest.approx(6.9 * 1.6)
    assert f.evaluate(0.5) == pytest.approx(6.9 * 0.4)
    assert f.extrema() == pytest.approx((6.9 * 0.4, 6.9 * 1.6))
    assert f.mean() == 6.9
    assert PeriodicCoefficient.cosine(6.9, 0.0).is_constant


def test_single_harmonic_extrema_exact():
    f = PeriodicCoefficient(constant=1.0, harmonics=(Harmonic(amplitude=-0.3, k=2, phase=0.7),))
    assert f.extrema() == pytest.approx((0.7, 1.3), abs=1e-15)


@given(
    a1=st.floats(min_value=0.1, max_value=3.0),
    a2=st.floats(min_value=0.1, max_value=3.0),
    k2=st.integers(min_value=2, max_value=5),
    phase=st.floats(min_value=-math.pi, max_value=math.pi),
)
@settings(max_examples=20, deadline=None)
def test_extrema_bound_brute_force_grid(a1, a2, k2, phase):
    f = PeriodicCoefficient(
        constant=0.5,
        harmonics=(Harmonic(amplitude=a1, k=1), Harmonic(amplitude=a2, k=k2, phase=phase)),
    )
    values = f.evaluate(np.linspace(0.0, 1.0, 1_000_000, endpoint=False))
    lower, upper = f.extrema()
    assert lower <= values.min() + 1e-9
    assert upper >= values.max() - 1e-9
    assert lower == pytest.approx(values.min(), abs=1e-6)
    assert upper == pytest.approx(values.max(), abs=1e-6)


def test_sum_extrema_is_extremum_of_sum():
    a = PeriodicCoefficient(constant=2.0, harmonics=(Harmonic(amplitude=1.0),))
    b = PeriodicCoefficient(constant=1.0, harmonics=(Harmonic(amplitude=-1.0),))
    total = a + b
    lower, upper = total.extrema()
    assert lower == pytest.approx(3.0, abs=1e-9)
    assert upper == pytest.approx(3.0, abs=1e-9)
    assert a.extrema()[1] + b.extrema()[1] == 5.0


def test_add_scalar_and_scaled():
    f = PeriodicCoefficient.cosine(2.0, 0.5)
    assert (f + 1.0).evaluate(0.0) == pytest.approx(4.0)
    assert (1.0 + f).evaluate(0.5) == pytest.approx(2.0)
    assert f.scaled(3.0).evaluate(0.0) == pytest.approx(9.0)
    assert f.scaled(3.0).mean() == pytest.approx(6.0)


def test_period_mismatch_rejected():
    with pytest.raises(ValueError):
        PeriodicCoefficient.constant_value(1.0, period=1.0) + PeriodicCoefficient.constant_value(1.0, period=2.0)


def test_non_finite_entries_rejected():
    with pytest.raises(ValidationError):
        PeriodicCoefficient(constant=float("nan"))
    with pytest.raises(ValidationError):
        PeriodicCoefficient(constant=1.0, period=0.0)
