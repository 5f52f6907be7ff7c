import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from seirs.errors import ModelValidationError
from seirs.model import (
    IncidenceFamily,
    InvariantBox,
    RationalContact,
    build_incidence,
    custom,
    holling_ii,
    mass_action,
    michaelis_menten,
    power_law,
    saturated_power,
    standard,
)

FAMILIES = {
    "mass_action": mass_action(),
    "standard": standard(),
    "michaelis_menten": michaelis_menten("N / (1 + N)"),
    "holling_ii": holling_ii(0.5),
    "power_law": power_law(1.5, 0.8),
    "saturated_power": saturated_power(1.0, 0.7, 2.0),
}

coordinate = st.floats(min_value=0.1, max_value=2.0)


def centered_difference(phi, point, axis, h=1e-6):
    lo, hi = list(point), list(point)
    lo[axis] -= h
    hi[axis] += h
    return (phi(*hi) - phi(*lo)) / (2.0 * h)


@pytest.mark.parametrize("name", sorted(FAMILIES))
@given(s=coordinate, n=coordinate, i=coordinate)
@settings(max_examples=50, deadline=None)
def test_partials_match_centered_differences(name, s, n, i):
    inc = FAMILIES[name]
    gradient = inc.gradient(s, n, i)
    for axis, analytic in enumerate(gradient):
        numeric = centered_difference(inc.phi, (s, n, i), axis)
        assert float(analytic) == pytest.approx(numeric, rel=1e-5, abs=1e-7)


@pytest.mark.parametrize("name", sorted(FAMILIES))
def test_vectorized_evaluation(name):
    inc = FAMILIES[name]
    s = np.array([0.2, 0.5, 1.0])
    n = np.array([1.0, 1.0, 1.5])
    i = np.array([0.1, 0.3, 0.4])
    values = np.asarray(inc(s, n, i))
    assert values.shape == (3,)
    np.testing.assert_allclose(values, [float(inc(*args)) for args in zip(s, n, i)], rtol=1e-14)


def test_mass_action_values():
    inc = mass_action()
    assert inc(0.5, 1.0, 0.2) == pytest.approx(0.1)
    assert inc.n_independent
    assert inc.label == "mass_action"


def test_standard_values():
    inc = standard()
    assert inc(0.5, 2.0, 0.2) == pytest.approx(0.05)
    assert not inc.n_independent


class TestRationalContact:
    def test_parse_michaelis_menten_form(self):
        assert RationalContact.parse("N / (1 + N)") == RationalContact(a=0.0, b=1.0, c=1.0, d=1.0)

    def test_parse_constant(self):
        assert RationalContact.parse("2") == RationalContact(a=2.0, b=0.0, c=1.0, d=0.0)

    def test_parse_coefficients(self):
        contact = RationalContact.parse("(1 + 2*N) / (3 + 0.5*N)")
        assert contact == RationalContact(a=1.0, b=2.0, c=3.0, d=0.5)
        assert contact.value(2.0) == pytest.approx(5.0 / 4.0)
        assert contact.derivative(2.0) == pytest.approx((2.0 * 3.0 - 1.0 * 0.5) / 16.0)

    def test_parse_subtraction(self):
        assert RationalContact.parse("3 - N") == RationalContact(a=3.0, b=-1.0, c=1.0, d=0.0)

    @pytest.mark.parametrize("text", ["N^2", "", "N / (0)", "log(N)"])
    def test_parse_rejects(self, text):
        with pytest.raises(ValueError):
            RationalContact.parse(text)

    def test_label_shows_contact(self):
        assert "C(N)=" in michaelis_menten("N / (1 + N)").label


class TestBuilders:
    def test_build_by_name(self):
        assert build_incidence("holling_ii", alpha=2.0).params == {"alpha": 2.0}
        assert build_incidence(IncidenceFamily.POWER_LAW, p=2.0, q=1.0).family == IncidenceFamily.POWER_LAW

    def test_custom_needs_evaluator(self):
        with pytest.raises(ModelValidationError):
            build_incidence("custom")

    def test_unknown_family(self):
        with pytest.raises(ValueError):
            build_incidence("quadratic")

    @pytest.mark.parametrize(
        "factory",
        [lambda: holling_ii(-1.0), lambda: power_law(0.0, 1.0), lambda: saturated_power(1.0, -1.0, 1.0)],
    )
    def test_invalid_parameters(self, factory):
        with pytest.raises(ModelValidationError):
            factory()

    def test_custom_finite_difference_partials(self):
        inc = custom(lambda s, n, i: s * i * i / n)
        d_s, d_n, d_i = inc.gradient(0.5, 2.0, 0.3)
        assert d_s == pytest.approx(0.09 / 2.0, rel=1e-8)
        assert d_n == pytest.approx(-0.5 * 0.09 / 4.0, rel=1e-8)
        assert d_i == pytest.approx(2.0 * 0.5 * 0.3 / 2.0, rel=1e-8)


class TestSaturationConstants:
    box = InvariantBox(n_lower=0.5, n_upper=1.5)

    def test_mass_action(self):
        constants = mass_action().saturation_constants(self.box)
        assert (constants.c1, constants.c2) == (1.0, 1.0)
        assert constants.usable

    def test_standard(self):
        constants = standard().saturation_constants(self.box)
        assert constants.c1 == pytest.approx(1.0 / 1.5)
        assert constants.c2 == pytest.approx(2.0)

    def test_michaelis_menten(self):
        constants = michaelis_menten("N / (1 + N)").saturation_constants(self.box)
        assert constants.c1 == pytest.approx(1.0 / 2.5)
        assert constants.c2 == pytest.approx(1.0 / 1.5)

    def test_michaelis_menten_interior_extremum(self):
        # C(N)/N = (N - 0.4) / (N (1 + N)) peaks inside the box
        contact = RationalContact(a=-0.4, b=1.0, c=1.0, d=1.0)
        constants = michaelis_menten(contact).saturation_constants(self.box)
        nodes = np.linspace(0.5, 1.5, 10001)
        ratios = contact.value(nodes) / nodes
        assert constants.c1 == pytest.approx(ratios.min(), rel=1e-12)
        assert constants.c2 >= ratios.max() - 1e-15
        assert constants.c2 == pytest.approx(ratios.max(), rel=1e-7)

    def test_michaelis_menten_nonpositive_contact(self):
        with pytest.raises(ModelValidationError):
            michaelis_menten("1 - N").saturation_constants(self.box)

    def test_holling_ii(self):
        constants = holling_ii(1.0).saturation_constants(self.box)
        assert constants.c1 == pytest.approx(0.4)
        assert constants.c2 == 1.0

    def test_power_law_unbounded(self):
        assert not power_law(2.0, 1.0).saturation_constants(self.box).usable
        assert power_law(1.0, 1.0).saturation_constants(self.box).usable

    def test_saturated_power_linear_in_i(self):
        constants = saturated_power(1.0, 1.0, 1.0).saturation_constants(self.box)
        assert constants.c1 == pytest.approx(0.4)
        assert constants.c2 == 1.0

    def test_custom_is_empirical(self):
        constants = custom(lambda s, n, i: 2.0 * s * i).saturation_constants(self.box)
        assert constants.empirical
        assert constants.c1 == pytest.approx(2.0)
        assert constants.c2 == pytest.approx(2.0)
