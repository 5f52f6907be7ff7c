import pytest

from seirs.errors import ModelValidationError
from seirs.model import (
    InvariantBox,
    check_hypotheses,
    custom,
    holling_ii,
    mass_action,
    michaelis_menten,
    power_law,
    saturated_power,
    standard,
)

BOX = (0.5, 1.5)
CHECKS = ["smoothness", "boundary", "saturation", "monotonicity", "ratio_monotonicity"]


@pytest.mark.parametrize(
    "incidence",
    [mass_action(), standard(), michaelis_menten("N / (1 + N)"), holling_ii(1.0), saturated_power(1.0, 0.5, 1.0)],
    ids=lambda inc: inc.family.value,
)
def test_built_in_families_pass(incidence):
    report = check_hypotheses(incidence, BOX, grid_density=24)
    assert [c.name for c in report.checks] == CHECKS
    assert report.all_passed, [c.detail for c in report.checks if not c.passed]
    assert all(c.witness is None for c in report.checks)


def test_mass_action_constants():
    report = check_hypotheses(mass_action(), BOX)
    assert report.c1 == pytest.approx(1.0)
    assert report.c2 == pytest.approx(1.0)
    assert report.grid_density == 64
    assert not report.empirical_constants


def test_standard_constants():
    report = check_hypotheses(standard(), BOX, grid_density=32)
    assert report.c1 == pytest.approx(1.0 / 1.5)
    assert report.c2 == pytest.approx(2.0)


def test_holling_constants():
    report = check_hypotheses(holling_ii(1.0), InvariantBox(n_lower=0.5, n_upper=1.5), grid_density=32)
    assert report.c1 == pytest.approx(0.4)
    assert report.c2 == pytest.approx(1.0, abs=1e-5)


def test_power_law_fails_saturation_and_ratio():
    report = check_hypotheses(power_law(2.0, 1.0), BOX, grid_density=24)
    assert not report.check("saturation").passed
    assert not report.check("ratio_monotonicity").passed
    assert report.check("saturation").witness is not None
    assert report.check("ratio_monotonicity").witness["I"] > 0.0
    assert report.check("boundary").passed


def test_boundary_violation_witness():
    report = check_hypotheses(custom(lambda s, n, i: s * i + 0.1 * s), BOX, grid_density=16)
    check = report.check("boundary")
    assert not check.passed
    assert check.witness["I"] == 0.0
    assert check.witness["S"] > 0.0


def test_monotonicity_in_population_violation():
    report = check_hypotheses(custom(lambda s, n, i: s * i * n), BOX, grid_density=16)
    check = report.check("monotonicity")
    assert not check.passed
    assert "N" in check.detail
    assert report.empirical_constants


def test_wrong_partial_fails_smoothness():
    report = check_hypotheses(custom(lambda s, n, i: s * i, d_i=lambda s, n, i: 2.0 * s), BOX, grid_density=16)
    check = report.check("smoothness")
    assert not check.passed
    assert "dphi/dI" in check.detail


def test_unknown_check_name():
    report = check_hypotheses(mass_action(), BOX, grid_density=8)
    with pytest.raises(KeyError):
        report.check("convexity")


def test_degenerate_box_rejected():
    with pytest.raises(ModelValidationError):
        check_hypotheses(mass_action(), (1.0, 1.0))
