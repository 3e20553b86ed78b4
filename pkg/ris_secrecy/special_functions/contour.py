"""Trapezoidal Mellin-Barnes contour engine.

An integrand is a product of Gamma factors with affine arguments
``offset + sum_i weights[i] * s_i`` (in the numerator or the denominator)
times ``prod_i x_i ** (-s_i)``.  Contours are vertical lines
``s_i = c_i + j u_i``; along them the trapezoidal rule converges
geometrically, with a rate set by the distance from the line to the nearest
pole, while the Gamma products decay exponentially in ``|u_i|``.

Each evaluation level yields, from one set of samples, the full sum, the sum
over the inner half window (truncation check: two successive truncations) and
the sum with every other node (discretisation check).  Failing axes are
refined by doubling the window and/or the node count.  All products are formed
as log-sums and exponentiated after subtracting the running maximum.
"""

import math
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import linprog

from ris_secrecy.log import logger
from ris_secrecy.settings import CONTOUR_BLOCK_ROWS
from ris_secrecy.special_functions.base import ContourFailure, ContourResult, ContourSettings, PoleCollisionError
from ris_secrecy.special_functions.gamma import ln_gamma_complex

MAX_LINE_NODES = 1 << 18
MAX_PLANE_NODES = 1 << 13
RESIDUE_POINTS = 64
RESIDUE_RADIUS = 0.25
TRUSTED_RATIO = 1e-3
_TWO_PI = 2.0 * np.pi


class GammaFactor(NamedTuple):
    offset: float
    weights: Tuple[float, ...]
    numerator: bool = True

    def argument(self, points: Sequence):
        arg = self.offset
        for w, p in zip(self.weights, points):
            if w != 0.0:
                arg = arg + w * p
        return arg

    def real_argument(self, c: Sequence[float]) -> float:
        return self.offset + float(np.dot(self.weights, c))


def log_integrand(factors: Sequence[GammaFactor],
                  log_args: Sequence[float],
                  points: Sequence,
                  log_scale: float = 0.0):
    """log of the Mellin-Barnes integrand at ``points`` (one broadcastable array per variable)."""
    out = log_scale
    for la, p in zip(log_args, points):
        out = out - p * la
    for factor in factors:
        lg = ln_gamma_complex(factor.argument(points))
        out = out + lg if factor.numerator else out - lg
    return out


# ---------------------------------------------------------------------------
# Decay and resolution planning
# ---------------------------------------------------------------------------


def decay_rates(factors: Sequence[GammaFactor], dim: int) -> np.ndarray:
    """Exponential decay rate of |integrand| along each imaginary axis."""
    rates = np.zeros(dim)
    for factor in factors:
        rates += (1.0 if factor.numerator else -1.0) * np.abs(factor.weights)
    return 0.5 * np.pi * rates


def check_decay(factors: Sequence[GammaFactor], dim: int) -> np.ndarray:
    rates = decay_rates(factors, dim)
    if dim > 1:
        # the integrand must decay along every direction of the imaginary plane
        angles = np.linspace(0.0, np.pi, 721)
        directions = np.stack([np.cos(angles), np.sin(angles)], axis=1)
        exponent = np.zeros(angles.size)
        for factor in factors:
            exponent += (1.0 if factor.numerator else -1.0) * np.abs(directions @ np.asarray(factor.weights))
        if exponent.min() <= 0:
            raise ContourFailure('integrand does not decay along every direction of the contour plane',
                                 extra={'min_rate': float(0.5 * np.pi * exponent.min())})
    if np.any(rates <= 0):
        raise ContourFailure('integrand does not decay along the contour', extra={'rates': rates.tolist()})
    return rates


def _pole_distance(factor: GammaFactor, c: Sequence[float], axis: int) -> float:
    w = factor.weights[axis]
    if w == 0.0 or not factor.numerator:
        return math.inf
    a = factor.real_argument(c)
    gap = a if a > 0 else abs(a - round(a))
    return gap / abs(w)


def _plan_axis(factors: Sequence[GammaFactor], c: Sequence[float], axis: int, rate: float, log_arg: float,
               ctr: ContourSettings, cap: int) -> Tuple[float, int]:
    """Initial half-window and node count for one axis."""
    depth = ctr.truncation
    window = depth / rate
    for factor in factors:
        w = factor.weights[axis]
        a = factor.real_argument(c)
        if factor.numerator and w != 0.0 and a > 1.0:
            # |Gamma(a + j w u)| / Gamma(a) ~ exp(-(w u)^2 / (2 a)) while |w u| << a
            window = max(window, math.sqrt(2.0 * a * depth) / abs(w))
    distance = min([_pole_distance(f, c, axis) for f in factors] + [1.0])
    step = _TWO_PI * distance / (depth + distance * abs(log_arg))
    nodes = max(ctr.nodes, math.ceil(2.0 * window / step))
    nodes = min(4 * math.ceil(nodes / 4), cap)
    return window, nodes


def _trapezoid_weights(nodes: int, step: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Weights of the full rule, the every-other-node rule and the inner-half-window rule."""
    full = np.full(nodes + 1, step)
    full[[0, -1]] = 0.5 * step
    coarse = np.zeros(nodes + 1)
    coarse[::2] = 2.0 * step
    coarse[[0, -1]] = step
    inner = np.zeros(nodes + 1)
    q = nodes // 4
    inner[q:nodes - q + 1] = step
    inner[[q, nodes - q]] = 0.5 * step
    return full, coarse, inner


def _estimate(diff: complex, scale: float) -> float:
    """Error of the finer rule from its difference to the coarser one.

    Both refinements converge geometrically, so once the difference is small
    relative to the integrand mass the finer error is about its square.
    """
    if scale <= 0:
        return abs(diff)
    ratio = abs(diff) / scale
    return ratio * ratio * scale if ratio < TRUSTED_RATIO else abs(diff)


def _to_linear(scaled: float, shift: float) -> float:
    if scaled == 0.0:
        return 0.0
    with np.errstate(over='ignore'):
        return float(np.exp(np.log(scaled) + shift))


def _build_result(total: complex, shift: float, error: float, offsets, windows, nodes, level,
                  residue_correction=False) -> ContourResult:
    real = total.real
    sign = int(np.sign(real))
    log_abs = math.log(abs(real)) + shift if real != 0.0 else -math.inf
    with np.errstate(over='ignore'):
        value = sign * float(np.exp(log_abs)) if sign else 0.0
    return ContourResult(value=value,
                         log_abs_value=log_abs,
                         sign=sign,
                         error_estimate=_to_linear(error, shift),
                         imag_residual=_to_linear(abs(total.imag), shift),
                         offsets=tuple(float(c) for c in offsets),
                         windows=tuple(float(w) for w in windows),
                         nodes=tuple(int(n) for n in nodes),
                         refinements=level,
                         residue_correction=residue_correction)


def _tolerance(total: complex, shift: float, scale: float, ctr: ContourSettings) -> Tuple[float, float]:
    """Acceptance thresholds for the value and for the imaginary residual, in scaled units."""
    with np.errstate(over='ignore'):
        abs_tol = float(ctr.abs_tol * np.exp(-shift))
    value_tol = max(ctr.rel_tol * abs(total.real), abs_tol)
    imag_tol = max(value_tol, 256 * np.finfo(float).eps * scale)
    return value_tol, imag_tol


# ---------------------------------------------------------------------------
# Single contour
# ---------------------------------------------------------------------------


class Residue(NamedTuple):
    pole: float
    sign: float
    radius: float


def _residue_log_samples(factors, log_args, log_scale, residue: Residue):
    theta = _TWO_PI * np.arange(RESIDUE_POINTS) / RESIDUE_POINTS
    ring = residue.radius * np.exp(1j * theta)
    return log_integrand(factors, log_args, (residue.pole + ring,), log_scale), ring


def integrate_line(factors: Sequence[GammaFactor],
                   log_x: float,
                   c: float,
                   ctr: ContourSettings,
                   log_scale: float = 0.0,
                   residues: Sequence[Residue] = ()) -> ContourResult:
    """(1 / 2 pi j) times the integral over Re(s) = c, plus signed residues of misplaced poles."""
    rate = check_decay(factors, 1)[0]
    window, nodes = _plan_axis(factors, (c,), 0, rate, log_x, ctr, MAX_LINE_NODES)

    residue_terms = []
    for residue in residues:
        logf, ring = _residue_log_samples(factors, (log_x,), log_scale, residue)
        residue_terms.append((residue.sign, logf, ring))

    for level in range(ctr.max_refinements + 1):
        u = np.linspace(-window, window, nodes + 1)
        logf = log_integrand(factors, (log_x,), (c + 1j * u,), log_scale)
        shift = float(logf.real.max())
        for _, res_logf, _ in residue_terms:
            shift = max(shift, float(res_logf.real.max()))
        f = np.exp(logf - shift)
        full_w, coarse_w, inner_w = _trapezoid_weights(nodes, u[1] - u[0])
        full = (f @ full_w) / _TWO_PI
        scale = float(np.abs(f) @ full_w) / _TWO_PI
        trunc_err = _estimate(full - (f @ inner_w) / _TWO_PI, scale)
        disc_err = _estimate(full - (f @ coarse_w) / _TWO_PI, scale)

        total = complex(full)
        for sign, res_logf, ring in residue_terms:
            total += sign * complex(np.mean(np.exp(res_logf - shift) * ring))

        value_tol, imag_tol = _tolerance(total, shift, scale, ctr)
        logger.debug(f'line c={c:.4g} level={level} window={window:.3g} nodes={nodes} '
                     f'trunc={trunc_err:.2e} disc={disc_err:.2e} tol={value_tol:.2e}')
        trunc_ok = trunc_err <= value_tol
        disc_ok = disc_err <= value_tol
        if trunc_ok and disc_ok:
            if abs(total.imag) > imag_tol:
                raise ContourFailure('imaginary residual above tolerance',
                                     extra={'imag': abs(total.imag), 'tol': imag_tol})
            return _build_result(total, shift, max(trunc_err, disc_err), (c,), (window,), (nodes,), level,
                                 residue_correction=bool(residues))
        if not trunc_ok:
            window *= 2.0
            nodes *= 2
        if not disc_ok:
            nodes *= 2
        if nodes > MAX_LINE_NODES:
            break
    raise ContourFailure('contour quadrature did not converge',
                         extra={'c': c, 'window': window, 'nodes': nodes, 'truncation_error': trunc_err,
                                'discretisation_error': disc_err})


# ---------------------------------------------------------------------------
# Double contour
# ---------------------------------------------------------------------------


def separating_offsets(factors: Sequence[GammaFactor], dim: int = 2, margin_fraction: float = 0.8) -> np.ndarray:
    """Contour offsets keeping every numerator Gamma argument in the right half-plane.

    Stage one maximises the smallest real part of the arguments (capped at 1);
    stage two finds the offsets of least L1 norm that keep ``margin_fraction``
    of that margin.

    Raises:
        PoleCollisionError: when no straight contours separate the pole families.
    """
    numerators = [f for f in factors if f.numerator]
    offsets = np.array([f.offset for f in numerators])
    weights = np.array([f.weights for f in numerators], dtype=float).reshape(len(numerators), dim)

    # variables: c_1..c_dim, m ; maximise m subject to offset + w.c >= m
    a_ub = np.hstack([-weights, np.ones((len(numerators), 1))])
    stage1 = linprog(c=np.r_[np.zeros(dim), -1.0], A_ub=a_ub, b_ub=offsets,
                     bounds=[(-50.0, 50.0)] * dim + [(None, 1.0)], method='highs')
    if not stage1.success or -stage1.fun <= 1e-9:
        raise PoleCollisionError('no straight contours separate the Gamma pole families',
                                 extra={'margin': None if not stage1.success else float(-stage1.fun)})
    margin = margin_fraction * (-stage1.fun)

    # variables: c_1..c_dim, a_1..a_dim with a_i >= |c_i| ; minimise sum(a)
    eye = np.eye(dim)
    a_ub = np.vstack([
        np.hstack([-weights, np.zeros((len(numerators), dim))]),
        np.hstack([eye, -eye]),
        np.hstack([-eye, -eye]),
    ])
    b_ub = np.r_[offsets - margin, np.zeros(2 * dim)]
    stage2 = linprog(c=np.r_[np.zeros(dim), np.ones(dim)], A_ub=a_ub, b_ub=b_ub,
                     bounds=[(-50.0, 50.0)] * dim + [(0.0, None)] * dim, method='highs')
    chosen = stage2.x[:dim] if stage2.success else stage1.x[:dim]
    logger.debug(f'separating offsets {np.round(chosen, 6).tolist()} with margin {margin:.3g}')
    return chosen


def check_offsets(factors: Sequence[GammaFactor], c: Sequence[float]) -> None:
    bad = [f for f in factors if f.numerator and f.real_argument(c) <= 0]
    if bad:
        raise PoleCollisionError(f'contour offsets {tuple(c)} do not separate the pole families',
                                 extra={'factors': [f._asdict() for f in bad]})


def _plane_sums(factors, log_args, log_scale, c, windows, nodes) -> Tuple[np.ndarray, float]:
    """Streaming trapezoid sums over a (u, v) grid, blocked along u.

    Returns [full, inner_u, inner_v, coarse_u, coarse_v, l1] scaled by exp(-shift).
    """
    us = np.linspace(-windows[0], windows[0], nodes[0] + 1)
    vs = np.linspace(-windows[1], windows[1], nodes[1] + 1)
    wu = _trapezoid_weights(nodes[0], us[1] - us[0])
    wv = _trapezoid_weights(nodes[1], vs[1] - vs[0])
    t_points = (c[1] + 1j * vs)[None, :]

    acc = np.zeros(6, dtype=complex)
    acc_shift = -math.inf
    for start in range(0, us.size, CONTOUR_BLOCK_ROWS):
        rows = slice(start, min(start + CONTOUR_BLOCK_ROWS, us.size))
        s_points = (c[0] + 1j * us[rows])[:, None]
        logf = log_integrand(factors, log_args, (s_points, t_points), log_scale)
        logf = np.broadcast_to(logf, (us[rows].size, vs.size))
        block_shift = float(logf.real.max())
        f = np.exp(logf - block_shift)
        row_full = f @ wv[0]
        row_coarse = f @ wv[1]
        row_inner = f @ wv[2]
        row_abs = np.abs(f) @ wv[0]
        block = np.array([
            wu[0][rows] @ row_full,
            wu[2][rows] @ row_full,
            wu[0][rows] @ row_inner,
            wu[1][rows] @ row_full,
            wu[0][rows] @ row_coarse,
            wu[0][rows] @ row_abs,
        ])
        new_shift = max(acc_shift, block_shift)
        acc = acc * math.exp(acc_shift - new_shift) + block * math.exp(block_shift - new_shift)
        acc_shift = new_shift
    return acc / (_TWO_PI * _TWO_PI), acc_shift


def integrate_plane(factors: Sequence[GammaFactor],
                    log_args: Tuple[float, float],
                    c: Sequence[float],
                    ctr: ContourSettings,
                    log_scale: float = 0.0) -> ContourResult:
    """(1 / 2 pi j)^2 times the integral over Re(s) = c[0], Re(t) = c[1]."""
    rates = check_decay(factors, 2)
    plans = [_plan_axis(factors, c, axis, rates[axis], log_args[axis], ctr, MAX_PLANE_NODES) for axis in range(2)]
    windows = [p[0] for p in plans]
    nodes: List[int] = [p[1] for p in plans]

    errors: Optional[Tuple[float, ...]] = None
    for level in range(ctr.max_refinements + 1):
        sums, shift = _plane_sums(factors, log_args, log_scale, c, windows, nodes)
        full = complex(sums[0])
        scale = float(sums[5].real)
        errors = (
            _estimate(full - sums[1], scale),
            _estimate(full - sums[2], scale),
            _estimate(full - sums[3], scale),
            _estimate(full - sums[4], scale),
        )
        value_tol, imag_tol = _tolerance(full, shift, scale, ctr)
        logger.debug(f'plane c={tuple(np.round(c, 4))} level={level} windows={tuple(np.round(windows, 3))} '
                     f'nodes={tuple(nodes)} errors={tuple(f"{e:.1e}" for e in errors)} tol={value_tol:.2e}')
        trunc_ok = [errors[0] <= value_tol, errors[1] <= value_tol]
        disc_ok = [errors[2] <= value_tol, errors[3] <= value_tol]
        if all(trunc_ok) and all(disc_ok):
            if abs(full.imag) > imag_tol:
                raise ContourFailure('imaginary residual above tolerance',
                                     extra={'imag': abs(full.imag), 'tol': imag_tol})
            return _build_result(full, shift, max(errors), c, windows, nodes, level)
        for axis in range(2):
            if not trunc_ok[axis]:
                windows[axis] *= 2.0
                nodes[axis] *= 2
            if not disc_ok[axis]:
                nodes[axis] *= 2
        if max(nodes) > MAX_PLANE_NODES:
            break
    raise ContourFailure('double contour quadrature did not converge',
                         extra={'c': tuple(c), 'windows': tuple(windows), 'nodes': tuple(nodes), 'errors': errors})
