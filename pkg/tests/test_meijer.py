"""Tests for ris_secrecy.special_functions.meijer."""

import math

import pytest
from pydantic import ValidationError
from scipy import special

from ris_secrecy.special_functions import (
    ContourResult,
    ContourSettings,
    DomainError,
    MeijerGSpec,
    PoleCollisionError,
    bessel_k,
    evaluate_meijer_g,
    log_bessel_k,
    log_meijer_g,
    meijer_g,
)

BESSEL_KERNEL = MeijerGSpec.from_params(2, 0, a_params=[], b_params=[0.0, 0.0])


class TestMeijerGSpec:

    def test_from_params(self):
        spec = MeijerGSpec.from_params(2, 1, a_params=[-1.0], b_params=[0.0, 0.0])
        assert (spec.m, spec.n, spec.p, spec.q) == (2, 1, 1, 2)

    def test_orders_checked(self):
        with pytest.raises(ValidationError):
            MeijerGSpec(m=3, n=0, p=0, q=2, a_params=(), b_params=(0.0, 0.0))
        with pytest.raises(ValidationError):
            MeijerGSpec(m=1, n=0, p=1, q=1, a_params=(), b_params=(0.0,))

    def test_coinciding_poles_detected(self):
        spec = MeijerGSpec.from_params(1, 1, a_params=[1.0], b_params=[0.0])
        with pytest.raises(PoleCollisionError) as exc_info:
            spec.check_poles()
        assert exc_info.value.code == 'pole_collision'

    def test_non_integer_difference_accepted(self):
        MeijerGSpec.from_params(1, 1, a_params=[2.5], b_params=[0.0]).check_poles()


class TestMeijerG:

    @pytest.mark.parametrize('x', [0.01, 0.1, 0.25, 1.0, 5.0])
    def test_bessel_reduction(self, x):
        assert meijer_g(BESSEL_KERNEL, x) == pytest.approx(2.0 * bessel_k(0, 2.0 * math.sqrt(x)), rel=1e-8)

    def test_quarter_value(self):
        assert meijer_g(BESSEL_KERNEL, 0.25) == pytest.approx(0.8420488764814, rel=1e-8)

    def test_exponential(self):
        spec = MeijerGSpec.from_params(1, 0, b_params=[0.0])
        assert meijer_g(spec, 1.0) == pytest.approx(math.exp(-1.0), rel=1e-8)

    def test_exponential_integral_kernel(self):
        # G^{2,1}_{1,2}(y | 0; 0, 0) = e^y E1(y)
        spec = MeijerGSpec.from_params(2, 1, a_params=[0.0], b_params=[0.0, 0.0])
        for y in (0.2, 1.0, 4.0):
            assert meijer_g(spec, y) == pytest.approx(math.exp(y) * special.exp1(y), rel=1e-7)

    def test_interleaved_poles_use_residues(self):
        # G^{1,1}_{1,1}(x | 2.5; 0) = Gamma(-1.5) (1 + x)^{1.5}
        spec = MeijerGSpec.from_params(1, 1, a_params=[2.5], b_params=[0.0])
        result = evaluate_meijer_g(spec, 0.5)
        assert result.residue_correction
        assert result.value == pytest.approx(4.0 * math.sqrt(math.pi) / 3.0 * 1.5**1.5, rel=1e-6)

    def test_result_diagnostics(self):
        result = evaluate_meijer_g(BESSEL_KERNEL, 1.0)
        assert isinstance(result, ContourResult)
        assert float(result) == result.value
        assert result.sign == 1
        assert result.error_estimate >= 0
        assert abs(result.imag_residual) < 1e-8
        assert len(result.offsets) == 1

    def test_explicit_offset(self):
        ctr = ContourSettings(c_offsets=(0.7, 0.0))
        assert meijer_g(BESSEL_KERNEL, 1.0, ctr) == pytest.approx(2.0 * bessel_k(0, 2.0), rel=1e-8)

    def test_log_scale(self):
        result = evaluate_meijer_g(BESSEL_KERNEL, 1.0, log_scale=math.log(3.0))
        assert result.value == pytest.approx(6.0 * bessel_k(0, 2.0), rel=1e-8)

    def test_log_meijer_g_tail(self):
        x = 400.0
        expected = math.log(2.0) + log_bessel_k(0, 2.0 * math.sqrt(x))
        ctr = ContourSettings(abs_tol=1e-300)
        assert log_meijer_g(BESSEL_KERNEL, x, ctr) == pytest.approx(expected, rel=1e-8)

    def test_non_positive_argument(self):
        with pytest.raises(DomainError):
            meijer_g(BESSEL_KERNEL, 0.0)

    def test_collision_raises_on_evaluation(self):
        spec = MeijerGSpec.from_params(1, 1, a_params=[2.0], b_params=[0.0])
        with pytest.raises(PoleCollisionError):
            meijer_g(spec, 1.0)


class TestContourSettings:

    def test_nodes_rounded_to_multiple_of_four(self):
        assert ContourSettings(nodes=65).nodes == 68

    @pytest.mark.parametrize('kwargs', [{'nodes': 32}, {'truncation': 0.0}, {'rel_tol': -1.0},
                                        {'c_offsets': (float('nan'), 0.0)}, {'max_refinements': -1}])
    def test_invalid(self, kwargs):
        with pytest.raises(ValidationError):
            ContourSettings(**kwargs)
