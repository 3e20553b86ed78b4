"""SOP by direct integration over the SNR laws.

The outage event is ``gamma_D <= theta * gamma_E + theta - 1``.  With a
double-Rayleigh eavesdropper the substitution ``x = mean_E t^2 / 4`` turns
``f_E(x) dx`` into ``t K0(t) dt``, which leaves a smooth, exponentially
decaying one-dimensional integrand:

    P_out = integral_0^inf F_D(theta * mean_E t^2 / 4 + theta - 1) t K0(t) dt
"""

import math

import numpy as np
from scipy import integrate, special

from ris_secrecy.log import logger
from ris_secrecy.secrecy.base import IntegrationError, SecrecyTarget, SopEstimate, SopMethod, clamp_probability
from ris_secrecy.settings import DEFAULT_QUAD_ACCEPT_TOL, DEFAULT_QUAD_LIMIT, DEFAULT_QUAD_REL_TOL
from ris_secrecy.statistics import BaseSnrDistribution, DoubleRayleigh, eval_cdf, eval_pdf

T_MAX = 200.0
T_GRID = 4001
SUPPORT_FLOOR = 1e-18


def secrecy_rate(gamma_d, gamma_e):
    """Instantaneous secrecy rate [ln(1 + gamma_D) - ln(1 + gamma_E)]^+ in nats."""
    gamma_d = np.asarray(gamma_d, dtype=float)
    gamma_e = np.asarray(gamma_e, dtype=float)
    if np.any(gamma_d < 0) or np.any(gamma_e < 0):
        raise ValueError('SNRs must be non-negative')
    rate = np.maximum(np.log1p(gamma_d) - np.log1p(gamma_e), 0.0)
    return float(rate) if rate.ndim == 0 else rate


def _bessel_weight(t: np.ndarray) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    positive = t > 0
    out[positive] = t[positive] * special.kv(0, t[positive])
    return out


def _eve_substituted_integral(dist_d: BaseSnrDistribution, dist_e: BaseSnrDistribution, theta: float,
                              offset: float, rel_tol: float, accept_tol: float):
    if not isinstance(dist_e, DoubleRayleigh):
        raise ValueError(f'the semi-analytic SOP integrates over a double_rayleigh eavesdropper, got {dist_e.kind}')
    mean_e = dist_e.mean_snr

    def integrand(t):
        return eval_cdf(dist_d, theta * mean_e * t * t / 4.0 + offset) * _bessel_weight(t)

    grid = np.linspace(0.0, T_MAX, T_GRID)
    values = integrand(grid)
    peak = float(values.max())
    if peak == 0.0:
        return 0.0, 0.0, {'support': None}
    step = grid[1] - grid[0]
    support = np.flatnonzero(values > SUPPORT_FLOOR * peak)
    lo = max(0.0, grid[support[0]] - step)
    hi = min(T_MAX, grid[support[-1]] + step)
    t_peak = float(grid[int(np.argmax(values))])
    points = [t_peak] if lo < t_peak < hi else None

    result = integrate.quad(lambda t: float(integrand(np.array([t]))[0]), lo, hi, points=points,
                            epsabs=0.0, epsrel=rel_tol, limit=DEFAULT_QUAD_LIMIT, full_output=1)
    value, abserr = result[0], result[1]
    if len(result) > 3:
        logger.debug(f'quad: {result[3]}')
    truncation = SUPPORT_FLOOR * peak * T_MAX
    uncertainty = abserr + truncation
    if uncertainty > accept_tol * max(value, 1e-300) and uncertainty > 1e-15:
        raise IntegrationError('quadrature error estimate above tolerance',
                               extra={'value': value, 'abserr': abserr, 'tolerance': accept_tol})
    return value, uncertainty, {'support': (lo, hi), 't_peak': t_peak, 'subintervals': int(result[2]['last'])}


def sop_semianalytic(dist_d: BaseSnrDistribution,
                     dist_e: BaseSnrDistribution,
                     tgt: SecrecyTarget,
                     rel_tol: float = DEFAULT_QUAD_REL_TOL,
                     accept_tol: float = DEFAULT_QUAD_ACCEPT_TOL) -> SopEstimate:
    """P_out = integral of F_D(theta x + theta - 1) f_E(x) dx by adaptive quadrature.

    Raises:
        ValueError: if ``dist_e`` is not double-Rayleigh.
        IntegrationError: if the quadrature error estimate exceeds ``accept_tol`` (relative).
    """
    theta = tgt.theta
    value, uncertainty, diagnostics = _eve_substituted_integral(dist_d, dist_e, theta, theta - 1.0, rel_tol,
                                                                accept_tol)
    value = clamp_probability(value, SopMethod.SEMI_ANALYTIC, diagnostics)
    logger.debug(f'sop_semianalytic {dist_d.kind} theta={theta:.4g}: {value:.6e} +- {uncertainty:.1e}')
    return SopEstimate(value=value, method=SopMethod.SEMI_ANALYTIC, uncertainty=uncertainty, diagnostics=diagnostics)


def sop_high_snr_floor(dist_d: BaseSnrDistribution,
                       dist_e: BaseSnrDistribution,
                       tgt: SecrecyTarget,
                       rel_tol: float = DEFAULT_QUAD_REL_TOL,
                       accept_tol: float = DEFAULT_QUAD_ACCEPT_TOL) -> SopEstimate:
    """Limit of the SOP when both mean SNRs grow with the transmit power: P(gamma_D <= theta gamma_E)."""
    value, uncertainty, diagnostics = _eve_substituted_integral(dist_d, dist_e, tgt.theta, 0.0, rel_tol, accept_tol)
    diagnostics['floor'] = True
    value = clamp_probability(value, SopMethod.SEMI_ANALYTIC, diagnostics)
    return SopEstimate(value=value, method=SopMethod.SEMI_ANALYTIC, uncertainty=uncertainty, diagnostics=diagnostics)


def sop_double_integral(dist_d: BaseSnrDistribution,
                        dist_e: BaseSnrDistribution,
                        tgt: SecrecyTarget,
                        rel_tol: float = 1e-9,
                        accept_tol: float = DEFAULT_QUAD_ACCEPT_TOL) -> SopEstimate:
    """Two-dimensional quadrature of f_D f_E over the outage region (slow reference path).

    The outer variable is gamma_E, split at its mean; the inner runs over
    gamma_D in [0, theta gamma_E + theta - 1].
    """
    theta = tgt.theta

    def joint_density(gamma_d, gamma_e):
        return eval_pdf(dist_d, gamma_d) * eval_pdf(dist_e, gamma_e)

    def upper(gamma_e):
        return theta * gamma_e + theta - 1.0

    mean_e = dist_e.mean()
    total, error = 0.0, 0.0
    for lo, hi in ((0.0, mean_e), (mean_e, math.inf)):
        part, part_err = integrate.dblquad(joint_density, lo, hi, 0.0, upper, epsabs=1e-12, epsrel=rel_tol)
        total += part
        error += part_err
    if error > accept_tol * max(total, 1e-300) and error > 1e-12:
        raise IntegrationError('double quadrature error estimate above tolerance',
                               extra={'value': total, 'abserr': error, 'tolerance': accept_tol})
    diagnostics = {'split': mean_e}
    value = clamp_probability(total, SopMethod.DOUBLE_INTEGRAL, diagnostics)
    return SopEstimate(value=value, method=SopMethod.DOUBLE_INTEGRAL, uncertainty=error, diagnostics=diagnostics)
