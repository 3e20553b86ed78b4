"""The three CLI workloads: distribution checks, SOP sweeps and method cross-validation."""

import math
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import numpy as np

from ris_secrecy import __version__
from ris_secrecy.channel import PhaseModel, V2IScenario, V2VScenario
from ris_secrecy.cli.config import ConfigError, ExperimentConfig, GridPoint, db_to_linear
from ris_secrecy.cli.report import (
    Gate,
    Report,
    SweepRow,
    gate_at_least,
    gate_at_most,
    write_report,
    write_sweep_csv,
    write_table,
)
from ris_secrecy.log import logger
from ris_secrecy.montecarlo import MIN_SOP_SAMPLES, McResult, RngStream, draw_snr_samples, empirical_pdf
from ris_secrecy.secrecy import SOP_METHOD_REGISTRY, SecrecyError, SecrecyTarget
from ris_secrecy.settings import MC_STREAM_STRIDE
from ris_secrecy.special_functions import SpecialFunctionError
from ris_secrecy.statistics import (
    BaseSnrDistribution,
    double_rayleigh,
    eval_pdf,
    fit_clt,
    fit_gamma_square,
    fit_gamma_v2i,
    ks_distance,
    random_walk_exact,
)
from ris_secrecy.utils.json_utils import json_dumps_compact
from ris_secrecy.utils.misc import hash_sha256
from ris_secrecy.utils.parallel_executor import parallel_exec

PDF_QUANTILE = 0.995


def _report(cfg: ExperimentConfig, command: str, gates: List[Gate]) -> Report:
    return Report(gates=gates,
                  seed=cfg.seed,
                  version=__version__,
                  command=command,
                  config_sha256=hash_sha256(json_dumps_compact(cfg.model_dump(mode='json'), sort_keys=True)))


# ---------------------------------------------------------------------------
# stats-verify
# ---------------------------------------------------------------------------


def _unit_scenario(cfg: ExperimentConfig, n: int):
    """Scenario with unit mean SNRs on every link, so the laws are compared at their natural scale."""
    g = cfg.geometry
    if cfg.scenario == 'v2v':
        return V2VScenario(n_elements=n, tx_snr=1.0, d_sr=1.0, d_rd=1.0, d_se=1.0, nu_sr=g.nu_sr, nu_rd=g.nu_rd)
    return V2IScenario(n_elements=n, tx_snr=1.0, d_sd=1.0, d_se=1.0, nu_sd=g.nu_sd)


def _compare_law(name: str, samples: np.ndarray, law: BaseSnrDistribution, n_bins: int, out_dir: Path) -> float:
    hi = float(np.quantile(samples, PDF_QUANTILE))
    centres, density, _ = empirical_pdf(samples, n_bins, (0.0, hi))
    write_table(out_dir / f'{name}.csv', ('x', 'analytic_pdf', 'empirical_pdf'),
                list(zip(centres.tolist(), np.atleast_1d(eval_pdf(law, centres)).tolist(), density.tolist())))
    ks = ks_distance(samples, law)
    logger.info(f'stats-verify {name}: KS = {ks:.5f}')
    return ks


def cmd_stats_verify(cfg: ExperimentConfig, out_dir: Path, jobs: Optional[int] = 1) -> Report:
    """KS statistics of the analytic SNR laws against channel samples, one CSV per law and N."""
    tol = cfg.tolerances
    gates, summary = [], []
    stream = 0

    def draw(sc, phase):
        nonlocal stream
        rng = RngStream(seed=cfg.seed, stream_id=stream * MC_STREAM_STRIDE)
        stream += 1
        return draw_snr_samples(sc, phase, cfg.stats_samples, rng, jobs=jobs)

    for n in cfg.n_elements:
        sc = _unit_scenario(cfg, n)
        if cfg.scenario == 'v2v':
            gamma_ideal, _ = draw(sc, PhaseModel.IDEAL)
            ks = _compare_law(f'gamma_square_N{n}', gamma_ideal, fit_gamma_square(n, sc.nu_sr, sc.nu_rd, 1.0), cfg.stats_bins,
                              out_dir)
            gates.append(gate_at_most(f'gamma_square_ks_N{n}', ks, tol.ks_approx))
            summary.append(('gamma_square', n, ks, tol.ks_approx, True))

            clt_ks = ks_distance(gamma_ideal, fit_clt(n, sc.nu_sr, sc.nu_rd, 1.0))
            summary.append(('clt_noncentral_chi2', n, clt_ks, math.nan, False))

            gamma_rw, _ = draw(sc, PhaseModel.UNIFORM_ERROR)
            ks = _compare_law(f'random_walk_exact_N{n}', gamma_rw, random_walk_exact(n, sc.nu_sr, sc.nu_rd, 1.0),
                              cfg.stats_bins, out_dir)
            gates.append(gate_at_most(f'random_walk_exact_ks_N{n}', ks, tol.ks_exact))
            summary.append(('random_walk_exact', n, ks, tol.ks_exact, True))
        else:
            gamma_d, _ = draw(sc, PhaseModel.IDEAL)
            ks = _compare_law(f'gamma_v2i_N{n}', gamma_d, fit_gamma_v2i(n, sc.nu_sd, 1.0), cfg.stats_bins, out_dir)
            gates.append(gate_at_most(f'gamma_v2i_ks_N{n}', ks, tol.ks_approx))
            summary.append(('gamma_v2i', n, ks, tol.ks_approx, True))

    _, gamma_e = draw(_unit_scenario(cfg, 1), PhaseModel.IDEAL)
    ks = _compare_law('double_rayleigh', gamma_e, double_rayleigh(1.0), cfg.stats_bins, out_dir)
    gates.append(gate_at_most('double_rayleigh_ks', ks, tol.ks_exact))
    summary.append(('double_rayleigh', 1, ks, tol.ks_exact, True))

    write_table(out_dir / 'stats_verify_ks.csv', ('law', 'n', 'ks', 'tolerance', 'gated'), summary)
    report = _report(cfg, 'stats-verify', gates)
    write_report(out_dir / 'stats_verify.json', report)
    return report


# ---------------------------------------------------------------------------
# sop-sweep
# ---------------------------------------------------------------------------


def _evaluate_point(cfg: ExperimentConfig, point: GridPoint, index: int, methods: Tuple[str, ...]) -> List[SweepRow]:
    scenario = cfg.build_scenario(point.n, db_to_linear(point.tx_snr_db))
    target = SecrecyTarget(rate_rs=point.rs)
    rows = []
    for name in methods:
        options = {}
        if name == 'mc':
            options = {
                'n_samples': cfg.mc_samples,
                'rng': RngStream(seed=cfg.seed, stream_id=index * MC_STREAM_STRIDE),
                'jobs': 1,
            }
        coords = dict(n=point.n, tx_snr_db=point.tx_snr_db, rs=point.rs, phase=point.phase.value, method=name)
        try:
            estimate = SOP_METHOD_REGISTRY[name](scenario, point.phase, target, **options)
        except (SecrecyError, SpecialFunctionError) as e:
            logger.error(f'{name} failed at {coords}: {e}')
            rows.append(SweepRow(**coords, status=e.code or type(e).__name__))
            continue
        except ValueError as e:
            logger.error(f'{name} failed at {coords}: {e}')
            rows.append(SweepRow(**coords, status='value_error'))
            continue
        rows.append(SweepRow(**coords, sop=estimate.value, uncertainty=estimate.uncertainty))
    return rows


def run_sweep(cfg: ExperimentConfig, methods: Tuple[str, ...], jobs: Optional[int] = 1) -> List[SweepRow]:
    """Rows for every grid point and method, in grid order."""
    tasks = [{'cfg': cfg, 'point': point, 'index': i, 'methods': methods} for i, point in enumerate(cfg.grid())]
    per_point = parallel_exec(_evaluate_point, tasks, max_workers=jobs, desc='sweep')
    return [row for rows in per_point for row in rows]


def _error_gate(rows: List[SweepRow]) -> Gate:
    return gate_at_most('method_errors', float(sum(not r.ok for r in rows)), 0.0)


def cmd_sop_sweep(cfg: ExperimentConfig, out_dir: Path, jobs: Optional[int] = 1) -> Report:
    rows = run_sweep(cfg, tuple(cfg.methods), jobs)
    write_sweep_csv(out_dir / 'sop_sweep.csv', rows)
    report = _report(cfg, 'sop-sweep', [_error_gate(rows)])
    write_report(out_dir / 'sop_sweep.json', report)
    return report


# ---------------------------------------------------------------------------
# cross-validate
# ---------------------------------------------------------------------------


def _index_rows(rows: List[SweepRow]) -> Dict[Tuple, Dict[str, SweepRow]]:
    table: Dict[Tuple, Dict[str, SweepRow]] = {}
    for r in rows:
        table.setdefault((r.n, r.tx_snr_db, r.rs, r.phase), {})[r.method] = r
    return table


def closed_vs_semianalytic_deviation(rows: List[SweepRow], floor: float) -> Tuple[float, int]:
    """Largest |closed - semi| / semi over points where both succeeded and semi > floor."""
    worst, compared = 0.0, 0
    for cells in _index_rows(rows).values():
        closed, semi = cells.get('closed'), cells.get('semianalytic')
        if closed is None or semi is None or not (closed.ok and semi.ok) or semi.sop <= floor:
            continue
        compared += 1
        worst = max(worst, abs(closed.sop - semi.sop) / semi.sop)
    return worst, compared


def mc_coverage(rows: List[SweepRow], n_samples: int, seed: int, level: float, reference: str) -> Tuple[float, int]:
    """Fraction of points whose ``reference`` method value lies in the MC Wilson interval."""
    covered, compared = 0, 0
    for cells in _index_rows(rows).values():
        mc, ref = cells.get('mc'), cells.get(reference)
        if mc is None or ref is None or not (mc.ok and ref.ok):
            continue
        result = McResult(estimate=mc.sop, ci95_halfwidth=mc.uncertainty, n_samples=n_samples, seed=seed)
        lo, hi = result.wilson_interval(level)
        compared += 1
        covered += lo <= ref.sop <= hi
    return (covered / compared if compared else 0.0), compared


def cmd_cross_validate(cfg: ExperimentConfig, out_dir: Path, jobs: Optional[int] = 1) -> Report:
    """Closed form vs semi-analytic vs Monte Carlo on the configured grid."""
    if cfg.mc_samples < MIN_SOP_SAMPLES:
        raise ConfigError(message=f'cross-validate needs mc_samples >= {MIN_SOP_SAMPLES}')
    tol = cfg.tolerances
    rows = run_sweep(cfg, ('closed', 'semianalytic', 'mc'), jobs)
    write_sweep_csv(out_dir / 'cross_validate.csv', rows)

    deviation, compared = closed_vs_semianalytic_deviation(rows, tol.semianalytic_floor)
    if not compared:
        logger.warning('cross-validate: no grid point above the semi-analytic floor; deviation gate is vacuous')
    gates = [gate_at_most('closed_vs_semianalytic_max_rel_dev', deviation, tol.closed_vs_semianalytic)]
    for reference in ('closed', 'semianalytic'):
        coverage, covered_points = mc_coverage(rows, cfg.mc_samples, cfg.seed, tol.mc_ci_level, reference)
        gates.append(gate_at_least(f'mc_ci_coverage_{reference}', coverage, tol.mc_coverage))
        logger.info(f'cross-validate: {covered_points} coverage points for {reference}')
    gates.append(_error_gate(rows))
    logger.info(f'cross-validate: {compared} deviation points')
    report = _report(cfg, 'cross-validate', gates)
    write_report(out_dir / 'cross_validate.json', report)
    return report
