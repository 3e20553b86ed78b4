"""Closed-form SOP expressions.

V2V (both phase models) goes through the bivariate Fox H-function.  The
expressions are written in complement form, P_out = 1 - D * H(x, y), where
D * H is the probability of no outage obtained by Mellin-Parseval from the
complementary CDF of gamma_D and the double-Rayleigh eavesdropper density;
this form admits straight separating contours for every parameter set.

V2I uses the finite series of the Gamma CDF and one Meijer G^{2,1}_{1,2}
per inner index, all accumulated in log space.

The complement loses every digit below the absolute error of the no-outage
term.  When 1 - no_outage falls under ``CLOSED_FORM_SOP_FLOOR``, or the
no-outage error exceeds ``CLOSED_FORM_REL_TOL`` of it, the point is
evaluated by the semi-analytic integral instead and tagged with
``routed_from='closed_form'``.
"""

import math
from typing import Optional, Union

import numpy as np
from scipy.special import gammaln, logsumexp, xlogy

from ris_secrecy.channel import (
    PhaseModel,
    V2IScenario,
    V2VScenario,
    mean_snr_v2i_main,
    mean_snr_v2v_main,
    scenario_eve_snr,
)
from ris_secrecy.log import logger
from ris_secrecy.secrecy.base import SecrecyTarget, SopEstimate, SopMethod, ThetaDegenerateError, clamp_probability
from ris_secrecy.secrecy.integration import sop_semianalytic
from ris_secrecy.settings import CLOSED_FORM_REL_TOL, CLOSED_FORM_SOP_FLOOR
from ris_secrecy.special_functions import (
    BivarFoxHSpec,
    ContourResult,
    ContourSettings,
    FoxHBlock,
    JointParameter,
    MeijerGSpec,
    VariableParameter,
    evaluate_meijer_g,
    fox_h_bivariate,
)
from ris_secrecy.statistics import eve_distribution, fit_gamma_square, fit_gamma_v2i, main_distribution

EPS = float(np.finfo(float).eps)

# ---------------------------------------------------------------------------
# Fox H parameter blocks
# ---------------------------------------------------------------------------

# Eavesdropper block: Gamma(1 + t) Gamma(-t)^2, shared by both V2V phase models.
_EVE_BLOCK = FoxHBlock(m=1,
                       n=2,
                       c=(VariableParameter(coefficient=1.0, weight=1.0), VariableParameter(coefficient=1.0, weight=1.0)),
                       d=(VariableParameter(coefficient=1.0, weight=1.0),))


def ideal_phase_fox_h_spec(k_d: float) -> BivarFoxHSpec:
    """Blocks of the ideal-phase kernel.

    Integrand: Gamma(-1 - s/2 - t) * Gamma(k_D - s) Gamma(-s) / [Gamma(1 - s) Gamma(-s/2)] * Gamma(1 + t) Gamma(-t)^2.
    """
    first = FoxHBlock(m=0,
                      n=2,
                      c=(VariableParameter(coefficient=1.0 - k_d, weight=1.0),
                         VariableParameter(coefficient=1.0, weight=1.0)),
                      d=(VariableParameter(coefficient=0.0, weight=1.0), VariableParameter(coefficient=1.0, weight=0.5)))
    return BivarFoxHSpec(joint_n=1,
                         joint_a=(JointParameter(coefficient=2.0, weights=(0.5, 1.0)),),
                         first=first,
                         second=_EVE_BLOCK)


def phase_error_fox_h_spec(n: int) -> BivarFoxHSpec:
    """Blocks of the uniform-phase-error kernel.

    Integrand: Gamma(-1 - s - t) * Gamma(N - s) * Gamma(1 + t) Gamma(-t)^2.
    """
    first = FoxHBlock(m=0, n=1, c=(VariableParameter(coefficient=1.0 - n, weight=1.0),))
    return BivarFoxHSpec(joint_n=1,
                         joint_a=(JointParameter(coefficient=2.0, weights=(1.0, 1.0)),),
                         first=first,
                         second=_EVE_BLOCK)


def _require_theta(tgt: SecrecyTarget) -> float:
    theta = tgt.theta
    if theta <= 1.0:
        raise ThetaDegenerateError(extra={'rate_rs': tgt.rate_rs})
    return theta


def _from_complement(no_outage: float,
                     abs_error: float,
                     diagnostics: dict,
                     sc: Union[V2VScenario, V2IScenario],
                     phase: PhaseModel,
                     tgt: SecrecyTarget) -> SopEstimate:
    """1 - no_outage, or the semi-analytic value when the subtraction has too few digits left."""
    uncertainty = abs_error + 4.0 * EPS * abs(no_outage)
    raw = 1.0 - no_outage
    if raw < CLOSED_FORM_SOP_FLOOR or uncertainty > CLOSED_FORM_REL_TOL * raw:
        logger.info(f'closed form: 1 - no_outage = {raw:.3e} with error {uncertainty:.1e}; '
                    'using the semi-analytic integral')
        estimate = sop_semianalytic(main_distribution(sc, phase), eve_distribution(sc), tgt)
        return estimate.model_copy(update={
            'diagnostics': {
                **estimate.diagnostics,
                'routed_from': 'closed_form',
                'closed_form_value': raw,
                'closed_form_uncertainty': uncertainty,
            }
        })
    value = clamp_probability(raw, SopMethod.CLOSED_FORM, diagnostics)
    return SopEstimate(value=value, method=SopMethod.CLOSED_FORM, uncertainty=uncertainty, diagnostics=diagnostics)


def _contour_diagnostics(result: ContourResult, **extra) -> dict:
    return {
        'no_outage': result.value,
        'offsets': result.offsets,
        'nodes': result.nodes,
        'refinements': result.refinements,
        'imag_residual': result.imag_residual,
        **extra,
    }


# ---------------------------------------------------------------------------
# V2V
# ---------------------------------------------------------------------------


def sop_v2v_ideal_closed(sc: V2VScenario, tgt: SecrecyTarget, ctr: Optional[ContourSettings] = None) -> SopEstimate:
    """SOP with ideal RIS phase shifting.

    P_out = 1 - (theta - 1) / (theta mean_E Gamma(k_D)) * H(eta_D / sqrt(theta - 1), theta mean_E / (theta - 1)).

    Raises:
        ThetaDegenerateError: if R_s = 0.
    """
    theta = _require_theta(tgt)
    law = fit_gamma_square(sc.n_elements, sc.nu_sr, sc.nu_rd, mean_snr_v2v_main(sc))
    mean_e = scenario_eve_snr(sc)
    x = law.eta_d / math.sqrt(theta - 1.0)
    y = theta * mean_e / (theta - 1.0)
    log_prefactor = math.log(theta - 1.0) - math.log(theta * mean_e) - gammaln(law.k_d)
    result = fox_h_bivariate(ideal_phase_fox_h_spec(law.k_d), x, y, ctr, log_scale=log_prefactor)
    logger.debug(f'ideal-phase closed form N={sc.n_elements} theta={theta:.4g}: no-outage {result.value:.6e}')
    diagnostics = _contour_diagnostics(result, x=x, y=y)
    return _from_complement(result.value, result.error_estimate, diagnostics, sc, PhaseModel.IDEAL, tgt)


def sop_v2v_phase_error_closed(sc: V2VScenario,
                               tgt: SecrecyTarget,
                               ctr: Optional[ContourSettings] = None) -> SopEstimate:
    """SOP with uniformly distributed RIS phase errors.

    P_out = 1 - (theta - 1) / (theta mean_E Gamma(N)) * H(mean_D nu_SR nu_RD / (theta - 1), theta mean_E / (theta - 1)).

    Raises:
        ThetaDegenerateError: if R_s = 0.
    """
    theta = _require_theta(tgt)
    mean_e = scenario_eve_snr(sc)
    x = mean_snr_v2v_main(sc) * sc.nu_sr * sc.nu_rd / (theta - 1.0)
    y = theta * mean_e / (theta - 1.0)
    log_prefactor = math.log(theta - 1.0) - math.log(theta * mean_e) - gammaln(sc.n_elements)
    result = fox_h_bivariate(phase_error_fox_h_spec(sc.n_elements), x, y, ctr, log_scale=log_prefactor)
    logger.debug(f'phase-error closed form N={sc.n_elements} theta={theta:.4g}: no-outage {result.value:.6e}')
    diagnostics = _contour_diagnostics(result, x=x, y=y)
    return _from_complement(result.value, result.error_estimate, diagnostics, sc, PhaseModel.UNIFORM_ERROR, tgt)


# ---------------------------------------------------------------------------
# V2I
# ---------------------------------------------------------------------------


def v2i_meijer_spec(j: int) -> MeijerGSpec:
    """G^{2,1}_{1,2}( . | -j; 0, 0)."""
    return MeijerGSpec.from_params(2, 1, a_params=[-float(j)], b_params=[0.0, 0.0])


def sop_v2i_closed(sc: V2IScenario, tgt: SecrecyTarget, ctr: Optional[ContourSettings] = None) -> SopEstimate:
    """SOP of the V2I link.

    P_out = 1 - (1/mean_E) e^{-(theta-1)/S} sum_{k=0}^{N-1} 1/(S^k k!) sum_{j=0}^{k} C(k, j) theta^j (theta-1)^{k-j}
            (theta/S)^{-(j+1)} G^{2,1}_{1,2}(S / (theta mean_E) | -j; 0, 0),   S = mean_D nu_SD Omega_D.

    Theta = 1 is allowed.
    """
    theta = tgt.theta
    n = sc.n_elements
    scale = fit_gamma_v2i(n, sc.nu_sd, mean_snr_v2i_main(sc)).scale
    mean_e = scenario_eve_snr(sc)
    z = scale / (theta * mean_e)

    ctr = ctr or ContourSettings()
    log_g = np.empty(n)
    rel_err = np.empty(n)
    for j in range(n):
        result = evaluate_meijer_g(v2i_meijer_spec(j), z, ctr)
        log_g[j] = result.log_abs_value
        finite = math.isfinite(result.value) and math.isfinite(result.error_estimate)
        rel_err[j] = result.error_estimate / abs(result.value) if finite and result.value else ctr.rel_tol

    k = np.arange(n)[:, None]
    j = np.arange(n)[None, :]
    valid = j <= k
    kk, jj = np.broadcast_arrays(k, j)
    log_terms = (-math.log(mean_e) - (theta - 1.0) / scale - kk * math.log(scale) - gammaln(jj + 1) -
                 gammaln(np.maximum(kk - jj, 0) + 1) + jj * math.log(theta) + xlogy(np.maximum(kk - jj, 0), theta - 1.0) -
                 (jj + 1) * (math.log(theta) - math.log(scale)) + log_g[None, :])
    log_terms = np.where(valid, log_terms, -np.inf)
    log_no_outage = float(logsumexp(log_terms))
    no_outage = math.exp(log_no_outage)
    # rounding accumulates over the terms of the double sum
    abs_error = float(np.sum(np.exp(log_terms) * (rel_err[None, :] + EPS * kk)))

    diagnostics = {'no_outage': no_outage, 'z': z, 'terms': int(np.count_nonzero(valid))}
    logger.debug(f'V2I closed form N={n} theta={theta:.4g}: no-outage {no_outage:.6e}')
    return _from_complement(no_outage, abs_error, diagnostics, sc, PhaseModel.IDEAL, tgt)
