"""Tests for coefficient-bound families."""

import math
from math import comb

import numpy as np
import pytest

from bohr_shared.errors import DomainError, UnsupportedOperationError
from bohr_toolkit.bohr_engine import tail_bound
from bohr_toolkit.coefficient_bounds import (
    GrowthKind,
    GrowthTag,
    MajorantFamily,
    MajorantModel,
    bohr_weight,
    bound,
    central_binomial_terms,
    growth_of,
    majorant_partial_sum,
    majorant_sum,
)


POINTWISE_MODELS = [
    MajorantModel.de_branges(0.25),
    MajorantModel.convex(0.5),
    MajorantModel.bounded(0.3),
    MajorantModel(MajorantFamily.LOG_CONVEX),
    MajorantModel.log_u(0.5),
    MajorantModel.log_u(1.0),
]


class TestBound:
    """Tests for pointwise coefficient bounds."""

    def test_de_branges_koebe(self):
        """Test 4 n d with the Koebe distance 1/4."""
        assert bound(MajorantModel.de_branges(0.25), 3) == pytest.approx(3.0)

    def test_convex(self):
        assert bound(MajorantModel.convex(0.5), 7) == pytest.approx(1.0)

    def test_bounded_by_one(self):
        """Test 1 - |a_0|^2."""
        assert bound(MajorantModel.bounded(0.5), 4) == pytest.approx(0.75)

    def test_log_inverse(self):
        """Test binom(4, 2)/2 = 3."""
        assert bound(MajorantModel(MajorantFamily.LOG_INVERSE), 2) == pytest.approx(3.0)

    def test_log_inverse_matches_binomials(self):
        """Test the ratio recurrence against exact binomials."""
        model = MajorantModel(MajorantFamily.LOG_INVERSE)
        for n in (1, 5, 20, 60):
            assert bound(model, n) == pytest.approx(comb(2 * n, n) / n, rel=1e-12)

    def test_log_convex(self):
        assert bound(MajorantModel(MajorantFamily.LOG_CONVEX), 4) == pytest.approx(0.125)

    def test_log_u_lambda(self):
        """Test (1 + lambda^n)/n."""
        assert bound(MajorantModel.log_u(0.5), 2) == pytest.approx(0.625)

    def test_log_s_not_pointwise(self):
        """Test that log-s refuses a pointwise bound."""
        with pytest.raises(UnsupportedOperationError) as exc_info:
            bound(MajorantModel(MajorantFamily.LOG_S), 1)

        assert "majorant_sum" in str(exc_info.value)

    def test_index_must_be_positive(self):
        with pytest.raises(DomainError):
            bound(MajorantModel.convex(1.0), 0)

    @pytest.mark.parametrize("lam", [0.0, 1.5, None])
    def test_log_u_lambda_domain(self, lam):
        """Test that lambda must lie in (0, 1]."""
        with pytest.raises(DomainError):
            MajorantModel(MajorantFamily.LOG_U_LAMBDA, lam=lam)

    def test_negative_scale_rejected(self):
        with pytest.raises(DomainError):
            MajorantModel.de_branges(-1.0)


class TestMajorantSum:
    """Tests for closed-form majorant sums."""

    def test_log_s_at_radius(self):
        """Test 2 log(1/(1-r)) = 1 at r = 1 - 1/sqrt(e)."""
        r = 1.0 - math.exp(-0.5)

        assert majorant_sum(MajorantModel(MajorantFamily.LOG_S), r) == pytest.approx(1.0, abs=1e-15)

    def test_log_inverse_value(self):
        """Test 2 log(2/(1 + sqrt(1 - 4r))) at r = 0.2."""
        value = majorant_sum(MajorantModel(MajorantFamily.LOG_INVERSE), 0.2)

        assert value == pytest.approx(2.0 * math.log(2.0 / (1.0 + math.sqrt(0.2))), abs=1e-15)
        assert value == pytest.approx(0.647014, abs=1e-6)

    def test_log_convex_at_radius(self):
        """Test that the weighted convex sum reaches 1 at r = 1 - 1/e."""
        model = MajorantModel(MajorantFamily.LOG_CONVEX)

        assert bohr_weight(model) == 2.0
        assert majorant_sum(model, 1.0 - math.exp(-1.0)) == pytest.approx(1.0, abs=1e-15)

    def test_log_inverse_radius_limit(self):
        """Test that log-inverse needs r < 1/4."""
        with pytest.raises(DomainError) as exc_info:
            majorant_sum(MajorantModel(MajorantFamily.LOG_INVERSE), 0.25)

        assert "1/4" in str(exc_info.value)

    def test_r_must_be_below_one(self):
        with pytest.raises(DomainError):
            majorant_sum(MajorantModel.convex(1.0), 1.0)

    @pytest.mark.parametrize("model", POINTWISE_MODELS, ids=lambda m: m.family.value)
    @pytest.mark.parametrize("r", [0.1, 0.3, 0.6])
    def test_partial_sum_plus_tail_brackets_closed_form(self, model, r):
        """Test partial sum to 400 plus tail against the closed form."""
        partial = majorant_partial_sum(model, r, 400)
        tail = tail_bound(model, 400, r)
        exact = majorant_sum(model, r)

        assert partial <= exact + 1e-12
        assert exact <= partial + tail + 1e-10
        assert exact - partial == pytest.approx(0.0, abs=1e-10)

    @pytest.mark.parametrize("r", [0.05, 0.2, 0.24])
    def test_log_inverse_partial_sum(self, r):
        """Test the central-binomial series with its ratio tail."""
        model = MajorantModel(MajorantFamily.LOG_INVERSE)
        partial = majorant_partial_sum(model, r, 400)
        tail = tail_bound(model, 400, r)

        assert partial <= majorant_sum(model, r) + 1e-12
        assert majorant_sum(model, r) <= partial + tail + 1e-10


class TestCentralBinomialSeries:
    """Tests for the central-binomial majorant at r = 0.2."""

    def test_tail_small_at_60_and_100(self):
        """Test the ratio tail bound at moderate truncation orders."""
        growth = GrowthTag(GrowthKind.CENTRAL_BINOMIAL)

        assert tail_bound(growth, 60, 0.2) <= 1e-8
        assert tail_bound(growth, 100, 0.2) <= 1e-10

    @pytest.mark.parametrize("n_max", [60, 100])
    def test_partial_sum_within_tail(self, n_max):
        """Test that the closed form lies in [partial, partial + tail]."""
        terms = central_binomial_terms(0.2, n_max)
        partial = float(np.sum(terms))
        exact = 2.0 * math.log(2.0 / (1.0 + math.sqrt(0.2)))
        tail = tail_bound(GrowthTag(GrowthKind.CENTRAL_BINOMIAL), n_max, 0.2)

        assert partial <= exact <= partial + tail + 1e-15


def test_growth_tags():
    assert growth_of(MajorantModel.de_branges(0.25)) == GrowthTag(GrowthKind.LINEAR, 1.0)
    assert growth_of(MajorantModel.log_u(0.3)) == GrowthTag(GrowthKind.HARMONIC, 2.0)


def test_unknown_growth_tag_rejected():
    with pytest.raises(UnsupportedOperationError):
        GrowthTag("exponential", 1.0)
