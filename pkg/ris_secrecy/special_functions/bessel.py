"""Bessel functions, incomplete gamma and a J0-Hankel integrator.

Thin, domain-checked wrappers over ``scipy.special`` (AMOS/Cephes kernels).
Scalars in give floats out; arrays broadcast.
"""

from typing import Callable, Union

import numpy as np
from scipy import integrate, special

from ris_secrecy.log import logger
from ris_secrecy.special_functions.base import DomainError

RealLike = Union[float, np.ndarray]


def _as_output(values: np.ndarray) -> RealLike:
    return float(values) if np.ndim(values) == 0 else values


def bessel_k(order: float, x: RealLike) -> RealLike:
    """Modified Bessel function of the second kind K_order(x), x > 0."""
    x = np.asarray(x, dtype=float)
    if np.any(~(x > 0)):
        raise DomainError('bessel_k needs x > 0', extra={'order': order})
    if order < 0:
        raise DomainError(f'bessel_k needs a non-negative order, got {order}')
    return _as_output(special.kv(order, x))


def log_bessel_k(order: float, x: RealLike) -> RealLike:
    """log K_order(x) through the exponentially scaled kernel; finite for large x."""
    x = np.asarray(x, dtype=float)
    if np.any(~(x > 0)):
        raise DomainError('log_bessel_k needs x > 0', extra={'order': order})
    with np.errstate(divide='ignore'):
        return _as_output(np.log(special.kve(order, x)) - x)


def bessel_j0(x: RealLike) -> RealLike:
    """Bessel function of the first kind of order zero, x >= 0."""
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise DomainError('bessel_j0 is defined here for x >= 0')
    return _as_output(special.j0(x))


def reg_inc_gamma_upper(a: float, x: RealLike) -> RealLike:
    """Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a)."""
    x = np.asarray(x, dtype=float)
    if not a > 0:
        raise DomainError(f'reg_inc_gamma_upper needs a > 0, got {a}')
    if np.any(~(x >= 0)):
        raise DomainError('reg_inc_gamma_upper needs x >= 0', extra={'a': a})
    return _as_output(special.gammaincc(a, x))


def reg_inc_gamma_lower(a: float, x: RealLike) -> RealLike:
    """Regularized lower incomplete gamma P(a, x) = 1 - Q(a, x)."""
    x = np.asarray(x, dtype=float)
    if not a > 0:
        raise DomainError(f'reg_inc_gamma_lower needs a > 0, got {a}')
    if np.any(~(x >= 0)):
        raise DomainError('reg_inc_gamma_lower needs x >= 0', extra={'a': a})
    return _as_output(special.gammainc(a, x))


def hankel_j0_integral(g: Callable[[float], float], r: float, n_zeros: int = 400, epsabs: float = 1e-14) -> float:
    """Integral of g(x) J0(r x) over [0, inf).

    The half-line is cut at the zeros of J0(r x); each lobe is integrated with
    ``scipy.integrate.quad`` and the alternating lobe series is summed, the
    last two partial sums being averaged.  g must decay at least like
    x^(-1/2 - eps) for the series to converge.
    """
    if not r > 0:
        raise DomainError(f'hankel_j0_integral needs r > 0, got {r}')
    edges = np.concatenate(([0.0], special.jn_zeros(0, n_zeros) / r))

    def integrand(x):
        return g(x) * special.j0(r * x)

    partial = 0.0
    previous = 0.0
    worst = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        lobe, err = integrate.quad(integrand, lo, hi, epsabs=epsabs, epsrel=1e-12, limit=100)
        previous = partial
        partial += lobe
        worst = max(worst, err)
    logger.debug(f'hankel_j0_integral r={r:g}: {n_zeros} lobes, last lobe {partial - previous:.3e}, '
                 f'max lobe error {worst:.2e}')
    return 0.5 * (partial + previous)
