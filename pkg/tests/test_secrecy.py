"""Tests for ris_secrecy.secrecy (base types, integrators, method registry)."""

import math

import numpy as np
import pytest
from pydantic import ValidationError

import ris_secrecy.montecarlo  # noqa: F401  (registers the mc method)
from ris_secrecy.channel import PhaseModel, V2IScenario, V2VScenario
from ris_secrecy.secrecy import (
    SOP_METHOD_REGISTRY,
    IntegrationError,
    SecrecyTarget,
    SopEstimate,
    SopMethod,
    register_sop_method,
    secrecy_rate,
    sop_double_integral,
    sop_high_snr_floor,
    sop_semianalytic,
)
from ris_secrecy.secrecy.base import clamp_probability
from ris_secrecy.statistics import DoubleRayleigh, GammaV2I, RandomWalkExact, eve_distribution, main_distribution


class TestSecrecyRate:

    def test_equal_snrs(self):
        assert secrecy_rate(3.0, 3.0) == 0.0

    def test_one_nat(self):
        assert secrecy_rate(math.e - 1.0, 0.0) == pytest.approx(1.0, rel=1e-14)

    def test_clipped(self):
        assert secrecy_rate(1.0, 3.0) == 0.0

    def test_vectorised(self):
        out = secrecy_rate(np.array([3.0, 1.0]), np.array([1.0, 3.0]))
        np.testing.assert_allclose(out, [math.log(2.0), 0.0])

    def test_negative_snr(self):
        with pytest.raises(ValueError):
            secrecy_rate(-1.0, 0.0)


class TestTypes:

    def test_theta(self):
        assert SecrecyTarget(rate_rs=0.5).theta == pytest.approx(math.exp(0.5))
        assert SecrecyTarget(rate_rs=0.0).theta == 1.0

    def test_negative_rate(self):
        with pytest.raises(ValidationError):
            SecrecyTarget(rate_rs=-0.1)

    def test_estimate_bounds(self):
        with pytest.raises(ValidationError):
            SopEstimate(value=1.2, method=SopMethod.CLOSED_FORM)
        with pytest.raises(ValidationError):
            SopEstimate(value=0.5, method=SopMethod.CLOSED_FORM, uncertainty=-1.0)

    def test_clamp_records_adjustment(self):
        diagnostics = {}
        assert clamp_probability(1.0 + 1e-9, SopMethod.CLOSED_FORM, diagnostics) == 1.0
        assert diagnostics['clamped_from'] == pytest.approx(1.0 + 1e-9)

    def test_clamp_passes_valid_values(self):
        diagnostics = {}
        assert clamp_probability(0.25, SopMethod.SEMI_ANALYTIC, diagnostics) == 0.25
        assert diagnostics == {}

    def test_clamp_rejects_nan(self):
        with pytest.raises(IntegrationError) as exc_info:
            clamp_probability(float('nan'), SopMethod.CLOSED_FORM, {})
        assert exc_info.value.code == 'integration_failure'


class TestSemianalytic:

    def test_iid_symmetry(self):
        law = DoubleRayleigh(mean_snr=3.0)
        estimate = sop_semianalytic(RandomWalkExact(n=1, scale=3.0), law, SecrecyTarget(rate_rs=0.0))
        assert estimate.value == pytest.approx(0.5, abs=1e-8)
        assert estimate.method is SopMethod.SEMI_ANALYTIC

    def test_certain_outage(self):
        estimate = sop_semianalytic(GammaV2I(n=2, scale=1.0), DoubleRayleigh(mean_snr=1.0), SecrecyTarget(rate_rs=8.0))
        assert estimate.value == pytest.approx(1.0, abs=1e-6)

    def test_dominant_main_channel(self):
        estimate = sop_semianalytic(GammaV2I(n=8, scale=1e6), DoubleRayleigh(mean_snr=1.0), SecrecyTarget(rate_rs=0.0))
        assert estimate.value < 1e-6

    def test_non_decreasing_in_rate(self):
        law_d, law_e = GammaV2I(n=4, scale=30.0), DoubleRayleigh(mean_snr=5.0)
        values = [sop_semianalytic(law_d, law_e, SecrecyTarget(rate_rs=r)).value for r in (0.0, 0.1, 0.5, 1.0, 2.0)]
        assert all(b >= a for a, b in zip(values, values[1:]))

    def test_requires_double_rayleigh_eavesdropper(self):
        with pytest.raises(ValueError):
            sop_semianalytic(GammaV2I(n=2, scale=1.0), GammaV2I(n=2, scale=1.0), SecrecyTarget(rate_rs=0.1))

    def test_floor_below_finite_snr_value(self):
        law_d, law_e = GammaV2I(n=4, scale=30.0), DoubleRayleigh(mean_snr=5.0)
        tgt = SecrecyTarget(rate_rs=0.5)
        floor = sop_high_snr_floor(law_d, law_e, tgt)
        assert floor.diagnostics['floor'] is True
        assert floor.value <= sop_semianalytic(law_d, law_e, tgt).value

    def test_floor_iid_symmetry(self):
        law = DoubleRayleigh(mean_snr=2.0)
        assert sop_high_snr_floor(law, law, SecrecyTarget(rate_rs=0.0)).value == pytest.approx(0.5, abs=1e-8)


class TestDoubleIntegral:

    def test_agrees_with_semianalytic(self):
        law_d, law_e = GammaV2I(n=3, scale=4.0), DoubleRayleigh(mean_snr=2.0)
        tgt = SecrecyTarget(rate_rs=0.3)
        semi = sop_semianalytic(law_d, law_e, tgt).value
        double = sop_double_integral(law_d, law_e, tgt, accept_tol=1e-3)
        assert double.method is SopMethod.DOUBLE_INTEGRAL
        assert double.value == pytest.approx(semi, abs=1e-4)

    def test_iid_symmetry(self):
        law = DoubleRayleigh(mean_snr=1.0)
        estimate = sop_double_integral(law, law, SecrecyTarget(rate_rs=0.0), accept_tol=1e-3)
        assert estimate.value == pytest.approx(0.5, abs=1e-4)


class TestSopProperties:
    """Shape of the V2V curves, evaluated semi-analytically on the canonical geometry."""

    @staticmethod
    def sop(n, tx_snr_db, phase=PhaseModel.IDEAL, rate_rs=0.5):
        sc = V2VScenario(n_elements=n, tx_snr=10**(tx_snr_db / 10))
        return sop_semianalytic(main_distribution(sc, phase), eve_distribution(sc), SecrecyTarget(rate_rs=rate_rs)).value

    def test_non_increasing_in_tx_snr(self):
        values = [self.sop(8, db) for db in (40, 60, 80, 100)]
        assert all(b <= a + 1e-12 for a, b in zip(values, values[1:]))

    def test_floor_reached(self):
        high, higher = self.sop(8, 110), self.sop(8, 120)
        assert abs(high - higher) < 1e-3 * higher

    @pytest.mark.parametrize('n', [2, 8])
    def test_phase_error_dominates(self, n):
        assert self.sop(n, 60, PhaseModel.UNIFORM_ERROR) >= self.sop(n, 60, PhaseModel.IDEAL)

    def test_more_elements_lower_the_floor(self):
        floors = [self.sop(n, 120) for n in (4, 8, 16)]
        assert floors[0] > floors[1] > floors[2]


class TestV2IDiversity:
    """log10 SOP of the V2I link falls linearly in N with a slope set by geometry, not by transmit power."""

    ELEMENTS = np.array([10, 16, 24, 32, 48, 64])

    def log_sop(self, tx_snr_db):
        tgt = SecrecyTarget(rate_rs=0.5)
        values = []
        for n in self.ELEMENTS:
            sc = V2IScenario(n_elements=int(n), tx_snr=10**(tx_snr_db / 10))
            values.append(sop_semianalytic(main_distribution(sc), eve_distribution(sc), tgt).value)
        return np.log10(values)

    def fit(self, tx_snr_db):
        y = self.log_sop(tx_snr_db)
        slope, intercept = np.polyfit(self.ELEMENTS, y, 1)
        residual = y - (slope * self.ELEMENTS + intercept)
        r_squared = 1.0 - np.sum(residual**2) / np.sum((y - y.mean())**2)
        return slope, r_squared

    def test_linear_in_n(self):
        slope, r_squared = self.fit(60.0)
        assert slope < 0
        assert r_squared > 0.99

    def test_slope_independent_of_power(self):
        slope_60, _ = self.fit(60.0)
        slope_80, _ = self.fit(80.0)
        assert slope_80 == pytest.approx(slope_60, rel=0.05)


class TestRegistry:

    def test_builtin_methods(self):
        assert {'closed', 'semianalytic', 'double_integral', 'mc'} <= set(SOP_METHOD_REGISTRY)

    def test_duplicate_name_rejected(self):
        with pytest.raises(ValueError):

            @register_sop_method('semianalytic')
            def another(scenario, phase, target, **options):
                return None

    def test_overwrite(self, monkeypatch):
        monkeypatch.setitem(SOP_METHOD_REGISTRY, 'semianalytic', SOP_METHOD_REGISTRY['semianalytic'])

        @register_sop_method('semianalytic', allow_overwrite=True)
        def constant(scenario, phase, target, **options):
            return SopEstimate(value=0.25, method=SopMethod.SEMI_ANALYTIC)

        assert SOP_METHOD_REGISTRY['semianalytic'] is constant

    def test_semianalytic_method(self):
        sc = V2IScenario(n_elements=4, tx_snr=1e6)
        tgt = SecrecyTarget(rate_rs=0.5)
        estimate = SOP_METHOD_REGISTRY['semianalytic'](sc, PhaseModel.IDEAL, tgt)
        direct = sop_semianalytic(main_distribution(sc), eve_distribution(sc), tgt)
        assert estimate.value == direct.value

    def test_closed_routes_zero_rate_v2v(self):
        sc = V2VScenario(n_elements=4, tx_snr=1e6)
        estimate = SOP_METHOD_REGISTRY['closed'](sc, PhaseModel.IDEAL, SecrecyTarget(rate_rs=0.0))
        assert estimate.method is SopMethod.SEMI_ANALYTIC
        assert estimate.diagnostics['routed_from'] == 'closed_form'
