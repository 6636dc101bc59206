"""The degree-five pipeline, checked against hand-computed values."""

import pytest

from dualfan.fans import is_smooth, validate_fan
from dualfan.mirrors import quintic_pipeline
from dualfan.symbols import ParamPoly

POWER_MARKERS = {
    (4, -1, -1, -1, 1),
    (-1, 4, -1, -1, 1),
    (-1, -1, 4, -1, 1),
    (-1, -1, -1, 4, 1),
    (-1, -1, -1, -1, 1),
}
PRODUCT_MARKER = (0, 0, 0, 0, 1)


@pytest.fixture(scope="module")
def report():
    return quintic_pipeline()


def test_pipeline_passes(report):
    assert report.passed
    assert report.duality.verdict
    assert report.duality.witness is None


def test_total_space_shape(report):
    assert len(report.sigma_x.rays) == 6
    assert len(report.sigma_x.max_cones) == 5
    assert is_smooth(report.sigma_x)
    assert validate_fan(report.sigma_x).ok
    assert validate_fan(report.sigma_x_prime).ok


def test_section_counts(report):
    assert report.count("xi_count") == 126
    assert report.count("xi_prime_count") == 6
    assert report.count("surviving_coefficients") == 6
    assert report.count("dropped_coefficients") == 120


def test_deck_group(report):
    assert report.check("finite_quotient")
    assert report.check("deck_group_factors")
    assert report.count("deck_group_order") == 125


def test_markers_are_the_power_monomials(report):
    assert set(report.sigma_x_prime.marked_generators) == (
        POWER_MARKERS | {PRODUCT_MARKER})
    assert report.check("markers_are_power_monomials")
    assert report.check("invariant_sections_match_markers")


def test_dual_side_rays_equal_their_markers(report):
    # every marker is already primitive here
    assert set(report.sigma_x_prime.rays) == set(
        report.sigma_x_prime.marked_generators)


def test_base_changes(report):
    assert report.to_gamma.verdict and not report.to_gamma.is_isomorphism
    assert len(report.to_gamma.surviving) == 6
    assert report.to_gamma_prime.is_isomorphism


def test_one_parameter_potential(report):
    w = report.potential("w_fermat")
    assert len(w.terms) == 6
    assert w.coefficient(PRODUCT_MARKER) == ParamPoly.parameter("psi", coeff=-5)
    for m in POWER_MARKERS:
        assert w.coefficient(m) == ParamPoly.constant(1)


def test_runs_are_deterministic():
    a = quintic_pipeline()
    b = quintic_pipeline()
    assert a.sigma_x_prime == b.sigma_x_prime
    assert a.sigma_x_prime.rays == b.sigma_x_prime.rays
    assert a.checks == b.checks
    assert a.counts == b.counts
    assert a.potentials == b.potentials
