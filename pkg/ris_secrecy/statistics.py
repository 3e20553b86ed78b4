"""Analytic SNR laws of the main and wiretap links.

``SnrDistribution`` is a tagged union (field ``kind``):

* ``GammaSquare`` - ideal phase shifting: the cascade amplitude sum is
  moment-matched to Gamma(k_D, eta_D) and the SNR is its square.
* ``RandomWalkExact`` - uniform phase errors: the amplitude is a planar random
  walk with product-Rayleigh steps; its squared length has an exact Bessel-K law.
* ``GammaV2I`` - RIS as receiver aperture: Gamma(N, gamma_D nu_SD Omega_D).
* ``DoubleRayleigh`` - the eavesdropper's product-Rayleigh channel.
* ``CltNoncentralChi2`` - the large-N central-limit baseline of the ideal case.
"""

import math
from abc import ABC, abstractmethod
from typing import Annotated, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PositiveFloat, PositiveInt
from scipy import integrate, stats
from scipy.special import gammaln

from ris_secrecy.channel import (
    PhaseModel,
    V2IScenario,
    V2VScenario,
    mean_snr_v2i_main,
    mean_snr_v2v_main,
    scenario_eve_snr,
)
from ris_secrecy.special_functions import (
    ContourSettings,
    MeijerGSpec,
    bessel_k,
    hankel_j0_integral,
    log_bessel_k,
    log_meijer_g,
    reg_inc_gamma_lower,
)

ZERO_CUTOFF = 1e-300
CdfMethod = Literal['bessel', 'quadrature', 'meijer']

# ---------------------------------------------------------------------------
# Distribution variants
# ---------------------------------------------------------------------------


class BaseSnrDistribution(BaseModel, ABC):
    model_config = ConfigDict(frozen=True)

    @abstractmethod
    def _pdf(self, x: np.ndarray) -> np.ndarray:
        """Density on x > 0."""
        raise NotImplementedError

    @abstractmethod
    def _cdf(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    @abstractmethod
    def zero_limit(self) -> float:
        """Limit of the density as x -> 0+."""
        raise NotImplementedError

    @abstractmethod
    def mean(self) -> float:
        raise NotImplementedError


class GammaSquare(BaseSnrDistribution):
    kind: Literal['gamma_square'] = 'gamma_square'
    k_d: PositiveFloat
    eta_d: PositiveFloat

    def _pdf(self, x):
        root = np.sqrt(x)
        return np.exp(stats.gamma.logpdf(root, a=self.k_d, scale=self.eta_d) - math.log(2.0) - np.log(root))

    def _cdf(self, x):
        return reg_inc_gamma_lower(self.k_d, np.sqrt(x) / self.eta_d)

    def zero_limit(self) -> float:
        if self.k_d > 2.0:
            return 0.0
        if self.k_d == 2.0:
            return 1.0 / (2.0 * self.eta_d**2)
        return math.inf

    def mean(self) -> float:
        return self.k_d * (self.k_d + 1.0) * self.eta_d**2


class RandomWalkExact(BaseSnrDistribution):
    kind: Literal['random_walk_exact'] = 'random_walk_exact'
    n: PositiveInt
    scale: PositiveFloat

    def _pdf(self, x):
        n, s = self.n, self.scale
        z = 2.0 * np.sqrt(x / s)
        log_pdf = (math.log(2.0) + 0.5 * (n - 1) * np.log(x) + log_bessel_k(n - 1, z) - gammaln(n) -
                   0.5 * (n + 1) * math.log(s))
        return np.exp(log_pdf)

    def _cdf(self, x):
        # 1 - 2 u^{N/2} K_N(2 sqrt(u)) / Gamma(N), u = x / scale
        n = self.n
        u = x / self.scale
        out = np.zeros_like(u)
        positive = u > 0
        up = u[positive]
        log_tail = math.log(2.0) + 0.5 * n * np.log(up) + log_bessel_k(n, 2.0 * np.sqrt(up)) - gammaln(n)
        out[positive] = -np.expm1(log_tail)
        return np.clip(out, 0.0, 1.0)

    def zero_limit(self) -> float:
        if self.n == 1:
            return math.inf
        return 1.0 / ((self.n - 1) * self.scale)

    def mean(self) -> float:
        return self.n * self.scale

    def meijer_spec(self) -> MeijerGSpec:
        """G^{2,1}_{1,3} kernel of the CDF: F(x) = u^{(N+1)/2} G(u) / Gamma(N), u = x / scale."""
        n = self.n
        return MeijerGSpec.from_params(2, 1, a_params=[(1 - n) / 2], b_params=[(n - 1) / 2, -(n - 1) / 2, -(n + 1) / 2])

    def cdf_meijer(self, x: float, ctr: Optional[ContourSettings] = None) -> float:
        if x <= 0:
            return 0.0
        u = x / self.scale
        log_cdf = 0.5 * (self.n + 1) * math.log(u) - gammaln(self.n) + log_meijer_g(self.meijer_spec(), u, ctr)
        return min(1.0, math.exp(log_cdf))


class GammaV2I(BaseSnrDistribution):
    kind: Literal['gamma_v2i'] = 'gamma_v2i'
    n: PositiveInt
    scale: PositiveFloat

    def _pdf(self, x):
        return stats.gamma.pdf(x, a=self.n, scale=self.scale)

    def _cdf(self, x):
        return reg_inc_gamma_lower(self.n, x / self.scale)

    def zero_limit(self) -> float:
        return 1.0 / self.scale if self.n == 1 else 0.0

    def mean(self) -> float:
        return self.n * self.scale


class DoubleRayleigh(BaseSnrDistribution):
    kind: Literal['double_rayleigh'] = 'double_rayleigh'
    mean_snr: PositiveFloat

    def _pdf(self, x):
        z = 2.0 * np.sqrt(x / self.mean_snr)
        return np.exp(math.log(2.0 / self.mean_snr) + log_bessel_k(0, z))

    def _cdf(self, x):
        u = x / self.mean_snr
        out = np.zeros_like(u)
        positive = u > 0
        up = u[positive]
        out[positive] = -np.expm1(math.log(2.0) + 0.5 * np.log(up) + log_bessel_k(1, 2.0 * np.sqrt(up)))
        return np.clip(out, 0.0, 1.0)

    def zero_limit(self) -> float:
        return math.inf

    def mean(self) -> float:
        return self.mean_snr


class CltNoncentralChi2(BaseSnrDistribution):
    """Square of a Gaussian amplitude N(mean_amp, var_amp)."""
    kind: Literal['clt_noncentral_chi2'] = 'clt_noncentral_chi2'
    mean_amp: PositiveFloat
    var_amp: PositiveFloat

    def _frozen(self):
        return stats.ncx2(df=1, nc=self.mean_amp**2 / self.var_amp, scale=self.var_amp)

    def _pdf(self, x):
        return self._frozen().pdf(x)

    def _cdf(self, x):
        return self._frozen().cdf(x)

    def zero_limit(self) -> float:
        return math.inf

    def mean(self) -> float:
        return self.mean_amp**2 + self.var_amp


SnrDistribution = Annotated[Union[GammaSquare, RandomWalkExact, GammaV2I, DoubleRayleigh, CltNoncentralChi2],
                            Field(discriminator='kind')]

# ---------------------------------------------------------------------------
# Parameter fits
# ---------------------------------------------------------------------------


def fit_gamma_square(n: int, nu_sr: float, nu_rd: float, mean_snr: float) -> GammaSquare:
    """Moment-matched Gamma law of sqrt(gamma_D) under ideal phase shifting."""
    pi2 = math.pi**2
    k_d = n * pi2 / (16.0 - pi2)
    eta_d = math.sqrt(mean_snr) * (16.0 - pi2) * math.sqrt(nu_sr * nu_rd) / (4.0 * math.pi)
    return GammaSquare(k_d=k_d, eta_d=eta_d)


def random_walk_exact(n: int, nu_sr: float, nu_rd: float, mean_snr: float) -> RandomWalkExact:
    return RandomWalkExact(n=n, scale=mean_snr * nu_sr * nu_rd)


def omega_v2i(n: int) -> float:
    """Omega_D = 1 + Gamma(3/2)^2 (N - 1)."""
    if n < 1:
        raise ValueError(f'omega_v2i needs N >= 1, got {n}')
    return 1.0 + 0.25 * math.pi * (n - 1)


def fit_gamma_v2i(n: int, nu_sd: float, mean_snr: float) -> GammaV2I:
    return GammaV2I(n=n, scale=mean_snr * nu_sd * omega_v2i(n))


def fit_clt(n: int, nu_sr: float, nu_rd: float, mean_snr: float) -> CltNoncentralChi2:
    mean_amp, second = cascade_moments(n, nu_sr, nu_rd, mean_snr)
    return CltNoncentralChi2(mean_amp=mean_amp, var_amp=second - mean_amp**2)


def cascade_moments(n: int, nu_sr: float, nu_rd: float, mean_snr: float) -> Tuple[float, float]:
    """First and second moments of sqrt(mean_snr) * sum_n alpha_n beta_n."""
    nu = nu_sr * nu_rd
    first = math.sqrt(mean_snr) * n * math.pi * math.sqrt(nu) / 4.0
    second = mean_snr * (n * nu + math.pi**2 * nu * n * (n - 1) / 16.0)
    return first, second


def double_rayleigh(mean_snr: float) -> DoubleRayleigh:
    return DoubleRayleigh(mean_snr=mean_snr)


# ---------------------------------------------------------------------------
# Scenario helpers
# ---------------------------------------------------------------------------


def main_distribution(sc: Union[V2VScenario, V2IScenario], phase: PhaseModel = PhaseModel.IDEAL):
    """SNR law of the legitimate link of a scenario."""
    if isinstance(sc, V2IScenario):
        return fit_gamma_v2i(sc.n_elements, sc.nu_sd, mean_snr_v2i_main(sc))
    if phase is PhaseModel.IDEAL:
        return fit_gamma_square(sc.n_elements, sc.nu_sr, sc.nu_rd, mean_snr_v2v_main(sc))
    return random_walk_exact(sc.n_elements, sc.nu_sr, sc.nu_rd, mean_snr_v2v_main(sc))


def eve_distribution(sc: Union[V2VScenario, V2IScenario]) -> DoubleRayleigh:
    return double_rayleigh(scenario_eve_snr(sc))


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


def _as_grid(x) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if np.any(np.isnan(arr)) or np.any(arr < 0):
        raise ValueError('SNR arguments must be non-negative numbers')
    return arr


def eval_pdf(dist: BaseSnrDistribution, x):
    """Density at x >= 0; below 1e-300 the x -> 0+ limit is returned (possibly +inf)."""
    arr = _as_grid(x)
    flat = np.atleast_1d(arr).ravel()
    out = np.full(flat.shape, dist.zero_limit())
    regular = flat >= ZERO_CUTOFF
    if np.any(regular):
        out[regular] = dist._pdf(flat[regular])
    out = out.reshape(arr.shape)
    return float(out) if out.ndim == 0 else out


def _cdf_by_quadrature(dist: BaseSnrDistribution, x: float) -> float:
    if x <= 0:
        return 0.0
    value, _ = integrate.quad(lambda t: eval_pdf(dist, t), 0.0, x, epsabs=1e-13, epsrel=1e-10, limit=200)
    return min(1.0, value)


def eval_cdf(dist: BaseSnrDistribution, x, method: CdfMethod = 'bessel', ctr: Optional[ContourSettings] = None):
    """CDF at x >= 0.

    ``method='bessel'`` uses each law's elementary or Bessel-K form;
    ``'quadrature'`` integrates the density; ``'meijer'`` evaluates the
    G^{2,1}_{1,3} form of the random-walk law by contour integration.
    """
    arr = _as_grid(x)
    flat = np.atleast_1d(arr).ravel()
    if method == 'bessel':
        out = dist._cdf(flat.copy())
    elif method == 'quadrature':
        out = np.array([_cdf_by_quadrature(dist, v) for v in flat])
    elif method == 'meijer':
        if not isinstance(dist, RandomWalkExact):
            raise ValueError(f'the meijer CDF path exists for random_walk_exact only, not {dist.kind}')
        out = np.array([dist.cdf_meijer(v, ctr) for v in flat])
    else:
        raise ValueError(f'unknown CDF method {method!r}')
    out = np.asarray(out, dtype=float).reshape(arr.shape)
    return float(out) if out.ndim == 0 else out


def ks_distance(samples: np.ndarray, dist: BaseSnrDistribution) -> float:
    """Kolmogorov-Smirnov statistic between samples and an analytic law."""
    return float(stats.kstest(np.asarray(samples, dtype=float), lambda v: eval_cdf(dist, v)).statistic)


# ---------------------------------------------------------------------------
# Cascade amplitude densities
# ---------------------------------------------------------------------------


def cascade_step_pdf(r, nu_sr: float, nu_rd: float):
    """Density of one RIS step amplitude alpha * beta (product of two Rayleigh amplitudes)."""
    r = np.asarray(r, dtype=float)
    nu = nu_sr * nu_rd
    return 4.0 * r / nu * bessel_k(0, 2.0 * r / math.sqrt(nu))


def random_walk_amplitude_pdf(r: float, n: int, nu_sr: float, nu_rd: float, n_zeros: int = 400) -> float:
    """Density of |sum_n alpha_n beta_n e^{j sigma_n}| by Kluyver's Hankel integral.

    Each step has characteristic function 1 / (1 + nu x^2 / 4), nu = nu_SR nu_RD.
    Converges for N >= 2.
    """
    if n < 2:
        raise ValueError('the Hankel route needs N >= 2; use cascade_step_pdf for one element')
    nu = nu_sr * nu_rd
    return r * hankel_j0_integral(lambda x: x * (1.0 + 0.25 * nu * x * x)**(-n), r, n_zeros=n_zeros)
