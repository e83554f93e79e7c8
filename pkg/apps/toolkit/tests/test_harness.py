"""Tests for the randomized inequality harness."""

import math

import numpy as np
import pytest

from bohr_shared.errors import DomainError
from bohr_toolkit.config import Settings
from bohr_toolkit.coefficient_bounds import GrowthKind
from bohr_toolkit.extremal_catalog import koebe_series, log_derivative_coefficients
from bohr_toolkit.harness.checks import (
    LEMMA_RADIUS,
    area_integral,
    check_area_bound,
    check_derivative_transfer,
    check_lebedev_milin,
    check_lemma1,
    check_rogosinski_step,
    check_subordination_bohr,
    rogosinski_weights_monotone,
)
from bohr_toolkit.harness.runner import (
    SAMPLE_RUNNERS,
    hunt_counterexample,
    replay,
    replay_line,
    run_harness,
    run_sample,
    sample_seeds,
)
from bohr_toolkit.harness.samplers import (
    SCHWARZ_CERTIFICATE,
    DecayCertificate,
    LocallyUnivalentSample,
    SchwarzKind,
    blaschke_sample,
    random_decaying_series,
    random_schwarz,
    schwarz_monomial,
)
from bohr_toolkit.radius_solvers import log_u_branch_bound
from bohr_toolkit.series_core import TruncatedSeries


ORDER = 64
GEOMETRIC_CERTIFICATE = DecayCertificate(1.0)
KOEBE_CERTIFICATE = DecayCertificate(1.0, growth=GrowthKind.LINEAR)


class TestSamplers:
    """Tests for sample generators."""

    def test_blaschke_is_self_map(self):
        """Test that a Blaschke product stays in the disk and has |c_n| <= 1."""
        sample = blaschke_sample(np.array([0.5, -0.3j]), 1j, ORDER)

        assert sample.sup_estimate <= 1.0
        assert SCHWARZ_CERTIFICATE.admits(sample.realization)
        assert sample.realization.evaluate(0.5) == pytest.approx(0.0, abs=1e-12)

    def test_blaschke_fixing_origin(self):
        sample = blaschke_sample(np.array([0.2]), 1.0, ORDER, fixes_origin=True)

        assert sample.realization[0] == 0
        assert sample.fixes_origin

    def test_blaschke_zero_outside_disk_rejected(self):
        with pytest.raises(DomainError):
            blaschke_sample(np.array([1.2]), 1.0, ORDER)

    def test_random_schwarz_bounded(self):
        """Test that random Schwarz functions have sup <= 1 and bounded coefficients."""
        rng = np.random.default_rng(7)
        for _ in range(50):
            sample = random_schwarz(rng, ORDER, fixes_origin=True)
            assert sample.sup_estimate <= 1.0
            assert sample.realization[0] == 0
            assert SCHWARZ_CERTIFICATE.admits(sample.realization)

    def test_decaying_series_certified(self):
        rng = np.random.default_rng(8)
        for _ in range(20):
            series, certificate = random_decaying_series(rng, ORDER)
            assert certificate.admits(series)

    def test_monomial(self):
        sample = schwarz_monomial(0.9, 1, ORDER)

        assert sample.kind is SchwarzKind.MONOMIAL
        assert sample.fixes_origin

    def test_monomial_above_one_rejected(self):
        with pytest.raises(DomainError):
            schwarz_monomial(1.5, 1, ORDER)

    def test_sample_seeds_deterministic(self):
        """Test that per-sample seeds depend only on seed and stream."""
        assert sample_seeds(1, 0, 5) == sample_seeds(1, 0, 5)
        assert sample_seeds(1, 0, 5) != sample_seeds(1, 1, 5)
        assert sample_seeds(1, 0, 3) == sample_seeds(1, 0, 5)[:3]


class TestLemma1:
    """Tests for the product lemma check."""

    def test_constant_phi_equality(self):
        """Test that phi = 1, M = 1 gives g = h and zero margin."""
        h, certificate = random_decaying_series(np.random.default_rng(9), ORDER, degree=ORDER)
        outcome = check_lemma1(h, schwarz_monomial(1.0, 0, ORDER), 1.0, LEMMA_RADIUS, certificate)

        assert outcome.passed
        assert outcome.lhs == pytest.approx(outcome.rhs, rel=1e-14)

    def test_geometric_with_z(self):
        """Test h = sum z^n, phi = z, M = 2: margin 2 at r = 1/3."""
        h = TruncatedSeries.geometric(ORDER)
        outcome = check_lemma1(h, schwarz_monomial(1.0, 1, ORDER), 2.0, LEMMA_RADIUS, GEOMETRIC_CERTIFICATE)

        assert outcome.passed
        assert outcome.margin == pytest.approx(2.0, abs=1e-12)

    def test_radius_hypothesis(self):
        """Test that r > 1/3 is refused unless strict is off."""
        h = TruncatedSeries.geometric(ORDER)
        phi = schwarz_monomial(1.0, 1, ORDER)

        with pytest.raises(DomainError) as exc_info:
            check_lemma1(h, phi, 1.0, 0.5, GEOMETRIC_CERTIFICATE)

        assert "r <= 1/3" in str(exc_info.value)
        assert check_lemma1(h, phi, 1.0, 0.5, GEOMETRIC_CERTIFICATE, strict=False).r == 0.5

    def test_counterexample_beyond_one_third(self):
        """Test that a constant h and a Moebius phi break the bound at r = 1/2."""
        h = TruncatedSeries.constant(1.0, ORDER)
        phi = blaschke_sample(np.array([0.7]), 1.0, ORDER)

        assert check_lemma1(h, phi, 1.0, LEMMA_RADIUS, GEOMETRIC_CERTIFICATE).passed
        assert not check_lemma1(h, phi, 1.0, 0.5, GEOMETRIC_CERTIFICATE, strict=False).passed


class TestDerivativeTransfer:
    """Tests for the derivative transfer check."""

    def test_unimodular_phi_equality(self):
        """Test phi = c, |c| = 1: equality for every r."""
        h = koebe_series(ORDER)
        phi = schwarz_monomial(np.exp(0.4j), 0, ORDER)
        outcome = check_derivative_transfer(h, phi, 0.5, 0.3, KOEBE_CERTIFICATE)

        assert outcome.passed
        assert outcome.lhs == pytest.approx(outcome.rhs, rel=1e-13)

    def test_koebe_with_blaschke(self):
        h = koebe_series(ORDER)
        phi = blaschke_sample(np.array([0.3 + 0.2j, -0.5]), 1.0, ORDER)

        assert check_derivative_transfer(h, phi, 1.0 / 3.0, LEMMA_RADIUS, KOEBE_CERTIFICATE).passed

    def test_zero_k(self):
        h = koebe_series(ORDER)
        outcome = check_derivative_transfer(h, schwarz_monomial(1.0, 1, ORDER), 0.0, 0.2, KOEBE_CERTIFICATE)

        assert outcome.lhs == 0.0


class TestLebedevMilin:
    """Tests for the exponentiated Lebedev-Milin check."""

    def test_zero(self):
        """Test c = 0: both sides equal 1."""
        outcome = check_lebedev_milin(TruncatedSeries.zero(ORDER), 0.3, GEOMETRIC_CERTIFICATE)

        assert outcome.lhs == pytest.approx(1.0)
        assert outcome.rhs == pytest.approx(1.0)
        assert outcome.passed

    def test_left_side_from_f_coefficients(self):
        """Test that sum n^2 |a_n|^2 r^(2(n-1)) matches the Bessel series for c = z/2."""
        c = TruncatedSeries.from_coefficients([0.0, 0.5], ORDER)
        r = 0.4
        outcome = check_lebedev_milin(c, r, DecayCertificate(1.0, 0.8))
        # f' = exp(z/2) has A_m = 2^-m / m!
        expected = sum((0.25 * r * r) ** m / math.factorial(m) ** 2 for m in range(30))

        assert outcome.lhs == pytest.approx(expected, rel=1e-14)
        assert outcome.rhs == pytest.approx(math.exp(0.25 * r * r), rel=1e-14)
        assert outcome.passed

    def test_locally_univalent_log_derivative(self):
        """Test c_n = 2 lambda / n at odd n with lambda = 0.5, r = 0.4."""
        c = log_derivative_coefficients(0.5, ORDER)
        certificate = DecayCertificate(1.0, growth=GrowthKind.HARMONIC)

        assert check_lebedev_milin(c, 0.4, certificate).passed

    def test_radius_limit(self):
        with pytest.raises(DomainError):
            check_lebedev_milin(TruncatedSeries.zero(ORDER), 0.6, GEOMETRIC_CERTIFICATE)

    def test_certificate_enforced(self):
        """Test that a sample breaking its certificate is rejected."""
        c = TruncatedSeries.from_coefficients([0.0, 0.95], ORDER)

        with pytest.raises(DomainError) as exc_info:
            check_lebedev_milin(c, 0.3, DecayCertificate(1.0, 0.8))

        assert "sample rejected" in str(exc_info.value)


class TestAreaBound:
    """Tests for the area bound check."""

    def test_identity_function(self):
        sample = LocallyUnivalentSample.build(0.0, 0.0, ORDER)
        outcome = check_area_bound(1.0, sample, 0.5)

        assert outcome.lhs == 0.0
        assert outcome.passed

    def test_locally_univalent_closed_form(self):
        """Test sum n |c_n|^2 r^(2n) = 2 l^2 log((1+r^2)/(1-r^2)) for F_lambda."""
        lam, r = 0.5, 0.5
        sample = LocallyUnivalentSample.build(lam, 0.0, 200)
        outcome = check_area_bound(lam, sample, r)
        expected = 2.0 * lam**2 * math.log((1 + r * r) / (1 - r * r))

        assert outcome.lhs == pytest.approx(expected, abs=1e-14)
        assert outcome.passed
        assert outcome.lhs <= 4.0 * lam**2 * r * r / (1 - r * r)
        assert outcome.details["identity_error"] <= 1e-8

    def test_area_integral_rotated(self):
        """Test that the area integral matches the coefficient sum for a rotation."""
        sample = LocallyUnivalentSample.build(0.8, 1.1, 200)
        lhs = check_area_bound(1.0, sample, 0.7).lhs

        assert area_integral(sample, 0.7) == pytest.approx(lhs, abs=1e-8)

    def test_small_r_ratio(self):
        """Test LHS/RHS -> |c_1|^2 / (4 lambda^2) as r -> 0."""
        sample = LocallyUnivalentSample.build(0.6, 0.0, ORDER)
        outcome = check_area_bound(1.0, sample, 1e-3)

        assert outcome.lhs / outcome.rhs == pytest.approx(abs(sample.c[1]) ** 2 / 4.0, rel=1e-5)

    def test_outside_family_rejected(self):
        with pytest.raises(DomainError):
            check_area_bound(0.5, LocallyUnivalentSample.build(0.7, 0.0, ORDER), 0.3)


class TestRogosinskiStep:
    """Tests for the weighted subordination check."""

    def test_extremal_subordination(self):
        """Test psi = z: both inequalities are equalities up to the tail."""
        lam = 0.8
        r = log_u_branch_bound(lam)
        outcome = check_rogosinski_step(lam, schwarz_monomial(1.0, 1, 200), r)

        assert outcome.passed
        assert outcome.lhs == pytest.approx(outcome.rhs, abs=1e-12)
        assert outcome.details["downstream_margin"] == pytest.approx(0.0, abs=1e-12)

    def test_z_squared(self):
        outcome = check_rogosinski_step(0.5, schwarz_monomial(1.0, 2, ORDER), 0.4)

        assert outcome.passed
        assert outcome.margin > 0.0

    @pytest.mark.parametrize("lam", [0.05, 0.3, 0.75, 1.0])
    def test_weights_monotone_at_bound(self, lam):
        assert rogosinski_weights_monotone(lam, log_u_branch_bound(lam))

    def test_radius_above_bound_rejected(self):
        with pytest.raises(DomainError):
            check_rogosinski_step(0.5, schwarz_monomial(1.0, 1, ORDER), 0.45)


class TestSubordinationBohr:
    """Tests for the subordination Bohr check."""

    def test_identity_phi(self):
        h = koebe_series(ORDER)
        outcome = check_subordination_bohr(h, schwarz_monomial(1.0, 1, ORDER), LEMMA_RADIUS, KOEBE_CERTIFICATE)

        assert outcome.lhs == pytest.approx(outcome.rhs, rel=1e-14)
        assert outcome.passed

    def test_koebe_scaled(self):
        """Test f = Koebe, phi = 0.9 z."""
        outcome = check_subordination_bohr(
            koebe_series(ORDER), schwarz_monomial(0.9, 1, ORDER), LEMMA_RADIUS, KOEBE_CERTIFICATE
        )

        assert outcome.passed
        assert outcome.margin > 0.0

    def test_phi_must_fix_origin(self):
        with pytest.raises(DomainError):
            check_subordination_bohr(
                koebe_series(ORDER), schwarz_monomial(0.5, 0, ORDER), 0.2, KOEBE_CERTIFICATE
            )


class TestRunner:
    """Tests for seeded runs and replay."""

    def test_sample_reproducible(self):
        """Test that a seed regenerates the same outcome."""
        for check in SAMPLE_RUNNERS:
            assert run_sample(check, 123, ORDER) == run_sample(check, 123, ORDER)

    def test_replay_line_roundtrip(self):
        """Test that replaying a printed line reruns the same sample."""
        outcome = run_sample("lemma1", 42, ORDER)
        line = replay_line("lemma1", 42, outcome.r, ORDER)

        assert line == f"lemma1 42 r={outcome.r!r} order={ORDER}"
        assert replay(line) == outcome

    def test_replay_outside_hypothesis(self):
        """Test that hunt lines beyond r = 1/3 replay without the radius check."""
        assert replay(f"lemma1 7 r=0.5 order={ORDER}").r == 0.5

    def test_replay_malformed(self):
        with pytest.raises(DomainError):
            replay("lemma1")

    def test_unknown_check(self):
        with pytest.raises(DomainError) as exc_info:
            run_harness(samples=1, checks=["bogus"], hunt=False)

        assert "Unknown harness check" in str(exc_info.value)

    def test_small_run(self):
        """Test a short run over every check."""
        report = run_harness(seed=5, samples=10, order=ORDER, hunt=False)

        assert [summary.check for summary in report.checks] == list(SAMPLE_RUNNERS)
        assert report.passed
        assert report.counterexample is None

    def test_hunt_finds_counterexample(self):
        """Test that the r <= 1/3 hypothesis is active at r = 1/2."""
        line = hunt_counterexample(20240611, 10000, 0.5, ORDER)

        assert line is not None
        assert not replay(line).passed

    def test_full_run(self):
        """Test the default sample counts and the counterexample hunt under the fixed seed."""
        config = Settings()
        report = run_harness(config=config)
        counts = {summary.check: summary.samples for summary in report.checks}

        assert counts == config.harness_samples()
        assert all(summary.passed == summary.samples for summary in report.checks)
        assert report.counterexample is not None
        assert report.passed
