"""Monte Carlo simulation of the physical channel.

Randomness comes from counter-based Philox streams: the key is the seed and the
stream id occupies the top 64-bit word of the counter, so every (seed, stream)
pair addresses a fixed, non-overlapping sequence.  Work is cut into chunks of
``DEFAULT_MC_CHUNK_SIZE`` draws, chunk ``i`` owning stream ``stream_id + i``;
results therefore do not depend on the worker count.
"""

import math
from typing import Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, NonNegativeFloat, PositiveInt
from scipy import stats

from ris_secrecy.channel import PhaseModel, V2IScenario, V2VScenario, mean_snr_v2i_main, mean_snr_v2v_main, scenario_eve_snr
from ris_secrecy.log import logger
from ris_secrecy.secrecy.base import SecrecyTarget, SopEstimate, SopMethod, register_sop_method
from ris_secrecy.settings import DEFAULT_MC_CHUNK_SIZE, DEFAULT_SEED
from ris_secrecy.utils.parallel_executor import parallel_exec

MIN_SOP_SAMPLES = 10_000
MIN_BINS = 10
U64 = 1 << 64

Scenario = Union[V2VScenario, V2IScenario]


class RngStream(BaseModel):
    model_config = ConfigDict(frozen=True)

    seed: int = Field(ge=0, lt=U64)
    stream_id: int = Field(default=0, ge=0, lt=U64)

    def generator(self) -> np.random.Generator:
        return np.random.Generator(np.random.Philox(key=self.seed, counter=self.stream_id << 192))

    def child(self, offset: int) -> 'RngStream':
        return RngStream(seed=self.seed, stream_id=(self.stream_id + offset) % U64)


class McResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    estimate: float = Field(ge=0.0, le=1.0)
    ci95_halfwidth: NonNegativeFloat
    n_samples: PositiveInt
    seed: int
    stream_id: int = 0

    def confidence_halfwidth(self, level: float = 0.95) -> float:
        """Normal-approximation half-width z * sqrt(p (1 - p) / n)."""
        z = stats.norm.ppf(0.5 + 0.5 * level)
        return float(z * math.sqrt(self.estimate * (1.0 - self.estimate) / self.n_samples))

    def wilson_interval(self, level: float = 0.95) -> Tuple[float, float]:
        z = stats.norm.ppf(0.5 + 0.5 * level)
        n, p = self.n_samples, self.estimate
        denom = 1.0 + z * z / n
        center = (p + z * z / (2.0 * n)) / denom
        half = z / denom * math.sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n))
        return max(0.0, center - half), min(1.0, center + half)


# ---------------------------------------------------------------------------
# Samplers
# ---------------------------------------------------------------------------


def _rayleigh(gen: np.random.Generator, nu: float, shape) -> np.ndarray:
    """Rayleigh amplitudes with E[r^2] = nu, by inversion of the exponential power."""
    return np.sqrt(-nu * np.log1p(-gen.random(shape)))


def _eve_snr(gen: np.random.Generator, mean_e: float, size: int) -> np.ndarray:
    rho = _rayleigh(gen, 1.0, (2, size))
    return mean_e * (rho[0] * rho[1])**2


def sample_v2v_snr_pair(sc: V2VScenario,
                        phase: PhaseModel,
                        rng: RngStream,
                        size: int = 1) -> Tuple[np.ndarray, np.ndarray]:
    """Instantaneous (gamma_D, gamma_E) of the V2V link, ``size`` independent draws."""
    gen = rng.generator()
    n = sc.n_elements
    cascade = _rayleigh(gen, sc.nu_sr, (size, n)) * _rayleigh(gen, sc.nu_rd, (size, n))
    if phase is PhaseModel.IDEAL:
        amplitude2 = cascade.sum(axis=1)**2
    else:
        sigma = gen.uniform(0.0, 2.0 * math.pi, (size, n))
        amplitude2 = (cascade * np.cos(sigma)).sum(axis=1)**2 + (cascade * np.sin(sigma)).sum(axis=1)**2
    gamma_d = mean_snr_v2v_main(sc) * amplitude2
    return gamma_d, _eve_snr(gen, scenario_eve_snr(sc), size)


def sample_v2i_snr_pair(sc: V2IScenario, rng: RngStream, size: int = 1) -> Tuple[np.ndarray, np.ndarray]:
    """Instantaneous (gamma_D, gamma_E) of the V2I link, ``size`` independent draws."""
    gen = rng.generator()
    alpha = _rayleigh(gen, sc.nu_sd, (size, sc.n_elements))
    gamma_d = mean_snr_v2i_main(sc) * alpha.sum(axis=1)**2
    return gamma_d, _eve_snr(gen, scenario_eve_snr(sc), size)


def sample_snr_pair(scenario: Scenario, phase: PhaseModel, rng: RngStream, size: int = 1):
    if isinstance(scenario, V2IScenario):
        return sample_v2i_snr_pair(scenario, rng, size)
    return sample_v2v_snr_pair(scenario, phase, rng, size)


def _chunk_sizes(n: int, chunk_size: int):
    full, rest = divmod(n, chunk_size)
    return [chunk_size] * full + ([rest] if rest else [])


def draw_snr_samples(scenario: Scenario,
                     phase: PhaseModel,
                     n: int,
                     rng: RngStream,
                     jobs: Optional[int] = 1,
                     chunk_size: int = DEFAULT_MC_CHUNK_SIZE) -> Tuple[np.ndarray, np.ndarray]:
    """``n`` SNR pairs, drawn chunk by chunk from consecutive streams."""
    tasks = [{
        'scenario': scenario,
        'phase': phase,
        'rng': rng.child(i),
        'size': size
    } for i, size in enumerate(_chunk_sizes(n, chunk_size))]
    parts = parallel_exec(sample_snr_pair, tasks, max_workers=jobs, desc='sampling')
    return np.concatenate([p[0] for p in parts]), np.concatenate([p[1] for p in parts])


# ---------------------------------------------------------------------------
# Estimators
# ---------------------------------------------------------------------------


def _count_outages(scenario: Scenario, phase: PhaseModel, theta: float, rng: RngStream, size: int) -> int:
    gamma_d, gamma_e = sample_snr_pair(scenario, phase, rng, size)
    return int(np.count_nonzero(gamma_d <= theta * gamma_e + theta - 1.0))


def estimate_sop(scenario: Scenario,
                 phase: PhaseModel,
                 tgt: SecrecyTarget,
                 n: int,
                 rng: RngStream,
                 jobs: Optional[int] = 1,
                 chunk_size: int = DEFAULT_MC_CHUNK_SIZE) -> McResult:
    """Fraction of ``n`` channel draws with gamma_D <= theta gamma_E + theta - 1."""
    if n < MIN_SOP_SAMPLES:
        raise ValueError(f'estimate_sop needs at least {MIN_SOP_SAMPLES} samples, got {n}')
    tasks = [{
        'scenario': scenario,
        'phase': phase,
        'theta': tgt.theta,
        'rng': rng.child(i),
        'size': size
    } for i, size in enumerate(_chunk_sizes(n, chunk_size))]
    outages = sum(parallel_exec(_count_outages, tasks, max_workers=jobs, desc='monte carlo'))
    p_hat = outages / n
    halfwidth = 1.96 * math.sqrt(p_hat * (1.0 - p_hat) / n)
    logger.debug(f'estimate_sop: {outages}/{n} outages over {len(tasks)} chunks')
    return McResult(estimate=p_hat, ci95_halfwidth=halfwidth, n_samples=n, seed=rng.seed, stream_id=rng.stream_id)


def empirical_pdf(samples, n_bins: int, range: Optional[Tuple[float, float]] = None):
    """Density-normalised histogram; returns (bin centres, density, bin edges)."""
    if n_bins < MIN_BINS:
        raise ValueError(f'empirical_pdf needs at least {MIN_BINS} bins, got {n_bins}')
    samples = np.asarray(samples, dtype=float)
    if range is None:
        if samples.size == 0:
            raise ValueError('empirical_pdf got no samples')
        range = (float(samples.min()), float(samples.max()))
    lo, hi = range
    if not hi > lo:
        raise ValueError(f'empirical_pdf needs a non-empty range, got {range}')
    density, edges = np.histogram(samples, bins=n_bins, range=(lo, hi), density=True)
    if not np.all(np.isfinite(density)):
        raise ValueError(f'no samples fall inside {range}')
    return 0.5 * (edges[:-1] + edges[1:]), density, edges


@register_sop_method('mc')
def monte_carlo_method(scenario: Scenario,
                       phase: PhaseModel,
                       target: SecrecyTarget,
                       n_samples: int = 1_000_000,
                       rng: Optional[RngStream] = None,
                       jobs: Optional[int] = 1,
                       **options) -> SopEstimate:
    rng = rng or RngStream(seed=DEFAULT_SEED)
    result = estimate_sop(scenario, phase, target, n_samples, rng, jobs=jobs)
    return SopEstimate(value=result.estimate,
                       method=SopMethod.MONTE_CARLO,
                       uncertainty=result.ci95_halfwidth,
                       diagnostics={
                           'n_samples': result.n_samples,
                           'seed': result.seed,
                           'stream_id': result.stream_id,
                       })
