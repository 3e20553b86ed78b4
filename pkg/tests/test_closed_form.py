"""Tests for ris_secrecy.secrecy.closed_form."""

import math

import pytest
from scipy import special

from ris_secrecy.channel import PhaseModel, V2IScenario, V2VScenario
from ris_secrecy.montecarlo import RngStream, estimate_sop
from ris_secrecy.secrecy import (
    SOP_METHOD_REGISTRY,
    SecrecyTarget,
    SopMethod,
    ThetaDegenerateError,
    ideal_phase_fox_h_spec,
    phase_error_fox_h_spec,
    sop_semianalytic,
    sop_v2i_closed,
    sop_v2v_ideal_closed,
    sop_v2v_phase_error_closed,
    v2i_meijer_spec,
)
from ris_secrecy.settings import CLOSED_FORM_REL_TOL, CLOSED_FORM_SOP_FLOOR
from ris_secrecy.statistics import eve_distribution, main_distribution


def unit_v2v(n: int, tx_snr: float = 1.0) -> V2VScenario:
    return V2VScenario(n_elements=n, tx_snr=tx_snr, d_sr=1.0, d_rd=1.0, d_se=1.0)


def semianalytic(sc, phase, tgt):
    return sop_semianalytic(main_distribution(sc, phase), eve_distribution(sc), tgt).value


class TestKernels:

    def test_ideal_phase_factors(self):
        factors = ideal_phase_fox_h_spec(6.5).factors()
        # joint, two numerator and two denominator factors in s, three in t
        assert len(factors) == 1 + 4 + 3

    def test_phase_error_factors(self):
        assert len(phase_error_fox_h_spec(8).factors()) == 1 + 1 + 3

    def test_v2i_kernel(self):
        spec = v2i_meijer_spec(3)
        assert (spec.m, spec.n, spec.p, spec.q) == (2, 1, 1, 2)
        assert spec.a_params == (-3.0,)


class TestV2VClosedForm:

    @pytest.mark.parametrize('fn', [sop_v2v_ideal_closed, sop_v2v_phase_error_closed])
    def test_zero_rate_rejected(self, fn):
        with pytest.raises(ThetaDegenerateError) as exc_info:
            fn(unit_v2v(4), SecrecyTarget(rate_rs=0.0))
        assert exc_info.value.code == 'theta_degenerate'

    @pytest.mark.parametrize('n', [2, 4, 8])
    def test_ideal_matches_semianalytic(self, n):
        sc, tgt = unit_v2v(n), SecrecyTarget(rate_rs=0.5)
        closed = sop_v2v_ideal_closed(sc, tgt)
        assert closed.method is SopMethod.CLOSED_FORM
        assert closed.value == pytest.approx(semianalytic(sc, PhaseModel.IDEAL, tgt), rel=1e-4)

    @pytest.mark.parametrize('n', [2, 4, 8])
    def test_phase_error_matches_semianalytic(self, n):
        sc, tgt = unit_v2v(n), SecrecyTarget(rate_rs=0.5)
        closed = sop_v2v_phase_error_closed(sc, tgt)
        assert closed.value == pytest.approx(semianalytic(sc, PhaseModel.UNIFORM_ERROR, tgt), rel=1e-4)

    @pytest.mark.parametrize('phase', list(PhaseModel))
    def test_canonical_geometry(self, phase):
        sc, tgt = V2VScenario(n_elements=4, tx_snr=1e6), SecrecyTarget(rate_rs=0.5)
        closed = SOP_METHOD_REGISTRY['closed'](sc, phase, tgt)
        assert closed.value == pytest.approx(semianalytic(sc, phase, tgt), rel=1e-2)

    def test_diagnostics(self):
        closed = sop_v2v_ideal_closed(unit_v2v(4), SecrecyTarget(rate_rs=1.0))
        assert closed.diagnostics['no_outage'] == pytest.approx(1.0 - closed.value, abs=1e-12)
        assert closed.diagnostics['y'] == pytest.approx(math.e / (math.e - 1.0))
        assert 'routed_from' not in closed.diagnostics
        assert 0 < closed.uncertainty <= CLOSED_FORM_REL_TOL * closed.value

    def test_higher_rate_more_outage(self):
        sc = unit_v2v(4)
        low = sop_v2v_ideal_closed(sc, SecrecyTarget(rate_rs=0.2)).value
        high = sop_v2v_ideal_closed(sc, SecrecyTarget(rate_rs=1.0)).value
        assert high > low


class TestV2IClosedForm:

    @pytest.mark.parametrize('n', [1, 4, 8])
    @pytest.mark.parametrize('rate_rs', [0.0, 0.5])
    def test_matches_semianalytic(self, n, rate_rs):
        sc, tgt = V2IScenario(n_elements=n, tx_snr=1e6), SecrecyTarget(rate_rs=rate_rs)
        closed = sop_v2i_closed(sc, tgt)
        assert closed.value == pytest.approx(semianalytic(sc, PhaseModel.IDEAL, tgt), rel=1e-5)

    def test_single_element_laplace_transform(self):
        # gamma_D exponential: P(no outage) = e^{-(theta-1)/S} E[e^{-theta gamma_E / S}]
        sc, tgt = V2IScenario(n_elements=1, tx_snr=1.0, d_sd=1.0, d_se=1.0), SecrecyTarget(rate_rs=0.5)
        theta = tgt.theta
        z = 1.0 / theta
        expected = 1.0 - math.exp(-(theta - 1.0)) * z * math.exp(z) * special.exp1(z)
        assert sop_v2i_closed(sc, tgt).value == pytest.approx(expected, rel=1e-8)

    def test_term_count(self):
        closed = sop_v2i_closed(V2IScenario(n_elements=4, tx_snr=1e6), SecrecyTarget(rate_rs=0.5))
        assert closed.diagnostics['terms'] == 10

    def test_closed_method_dispatch(self):
        sc, tgt = V2IScenario(n_elements=4, tx_snr=1e6), SecrecyTarget(rate_rs=0.0)
        estimate = SOP_METHOD_REGISTRY['closed'](sc, PhaseModel.IDEAL, tgt)
        assert estimate.method is SopMethod.CLOSED_FORM
        assert 'routed_from' not in estimate.diagnostics


def canonical(kind: str, n: int, tx_snr_db: float):
    tx_snr = 10**(tx_snr_db / 10)
    if kind == 'v2v':
        return V2VScenario(n_elements=n, tx_snr=tx_snr)
    return V2IScenario(n_elements=n, tx_snr=tx_snr)


GRID = [(n, db, rs) for n in (2, 4, 8, 16) for db in (40.0, 60.0, 80.0) for rs in (0.1, 0.5, 1.0)]
VARIANTS = [('v2v', PhaseModel.IDEAL), ('v2v', PhaseModel.UNIFORM_ERROR), ('v2i', PhaseModel.IDEAL)]


class TestCanonicalGrid:

    @pytest.mark.parametrize('kind,phase', VARIANTS, ids=lambda v: getattr(v, 'value', v))
    @pytest.mark.parametrize('n,tx_snr_db,rate_rs', GRID)
    def test_matches_semianalytic(self, kind, phase, n, tx_snr_db, rate_rs):
        sc, tgt = canonical(kind, n, tx_snr_db), SecrecyTarget(rate_rs=rate_rs)
        closed = SOP_METHOD_REGISTRY['closed'](sc, phase, tgt)
        semi = semianalytic(sc, phase, tgt)
        if semi > 1e-4:
            assert closed.method is SopMethod.CLOSED_FORM
            assert closed.value == pytest.approx(semi, rel=1e-2)
        else:
            assert closed.value == pytest.approx(semi, rel=1e-2, abs=CLOSED_FORM_SOP_FLOOR)

    @pytest.mark.parametrize('n', [2, 4, 8, 16])
    def test_phase_error_not_below_ideal(self, n):
        sc, tgt = canonical('v2v', n, 60.0), SecrecyTarget(rate_rs=0.5)
        ideal = sop_v2v_ideal_closed(sc, tgt).value
        assert sop_v2v_phase_error_closed(sc, tgt).value >= ideal


class TestAgainstMonteCarlo:
    """Closed forms built on exact SNR laws against channel simulation."""

    def test_phase_error(self):
        sc, tgt = unit_v2v(4), SecrecyTarget(rate_rs=0.5)
        closed = sop_v2v_phase_error_closed(sc, tgt)
        mc = estimate_sop(sc, PhaseModel.UNIFORM_ERROR, tgt, 1_000_000, RngStream(seed=31))
        assert abs(closed.value - mc.estimate) < 3 * mc.ci95_halfwidth

    def test_single_element_v2i(self):
        sc, tgt = V2IScenario(n_elements=1, tx_snr=1.0, d_sd=1.0, d_se=1.0), SecrecyTarget(rate_rs=0.1)
        closed = sop_v2i_closed(sc, tgt)
        mc = estimate_sop(sc, PhaseModel.IDEAL, tgt, 1_000_000, RngStream(seed=37))
        assert abs(closed.value - mc.estimate) < 3 * mc.ci95_halfwidth


class TestSmallOutage:
    """Far below the no-outage term's error, 1 - no_outage is replaced by the 1-D integral."""

    @pytest.mark.parametrize('sc', [
        V2VScenario(n_elements=16, tx_snr=1e6, d_se=40.0),
        V2VScenario(n_elements=32, tx_snr=1e8, d_se=60.0),
    ], ids=['n16', 'n32'])
    def test_v2v_ideal(self, sc):
        tgt = SecrecyTarget(rate_rs=0.5)
        estimate = SOP_METHOD_REGISTRY['closed'](sc, PhaseModel.IDEAL, tgt)
        semi = semianalytic(sc, PhaseModel.IDEAL, tgt)
        assert semi < CLOSED_FORM_SOP_FLOOR
        assert estimate.value == pytest.approx(semi, rel=1e-2)
        assert estimate.diagnostics['routed_from'] == 'closed_form'
        assert estimate.diagnostics['closed_form_value'] < CLOSED_FORM_SOP_FLOOR

    def test_v2i(self):
        sc, tgt = V2IScenario(n_elements=128, tx_snr=1e6), SecrecyTarget(rate_rs=0.5)
        estimate = sop_v2i_closed(sc, tgt)
        assert 0.0 < estimate.value < CLOSED_FORM_SOP_FLOOR
        assert estimate.value == pytest.approx(semianalytic(sc, PhaseModel.IDEAL, tgt), rel=1e-2)
        assert estimate.method is SopMethod.SEMI_ANALYTIC
        assert estimate.diagnostics['routed_from'] == 'closed_form'

    def test_moderate_outage_keeps_closed_form(self):
        sc, tgt = unit_v2v(4), SecrecyTarget(rate_rs=0.5)
        estimate = sop_v2v_phase_error_closed(sc, tgt)
        assert estimate.method is SopMethod.CLOSED_FORM
        assert estimate.value > CLOSED_FORM_SOP_FLOOR
