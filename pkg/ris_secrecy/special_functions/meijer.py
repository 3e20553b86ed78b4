"""Meijer G-function by a single Mellin-Barnes contour.

    G^{m,n}_{p,q}(x | a; b) = (1 / 2 pi j) * integral over L of
        prod_{j<=m} Gamma(b_j + s) prod_{k<=n} Gamma(1 - a_k - s)
        / [prod_{j>m} Gamma(1 - b_j - s) prod_{k>n} Gamma(a_k + s)] * x^(-s) ds

L separates the poles of Gamma(b_j + s) (running left) from those of
Gamma(1 - a_k - s) (running right).  When the two families are apart the
line sits at the real saddle point of the integrand inside the gap, keeping a
margin from both families.  When they interleave without coinciding, the line
is drawn through the widest pole-free gap and every pole on the wrong side is
added back (or subtracted) as a residue computed on a small circle around it.
"""

import math
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, NonNegativeInt, model_validator
from scipy.optimize import minimize_scalar
from scipy.special import gammaln

from ris_secrecy.log import logger
from ris_secrecy.special_functions.base import (
    ContourFailure,
    ContourResult,
    ContourSettings,
    DomainError,
    PoleCollisionError,
)
from ris_secrecy.special_functions.contour import RESIDUE_RADIUS, GammaFactor, Residue, integrate_line

ONE_SIDED_REACH = 60.0
_COINCIDENCE_TOL = 1e-12


class MeijerGSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    m: NonNegativeInt
    n: NonNegativeInt
    p: NonNegativeInt
    q: NonNegativeInt
    a_params: Tuple[float, ...] = ()
    b_params: Tuple[float, ...] = ()

    @model_validator(mode='after')
    def _check_orders(self):
        if len(self.a_params) != self.p or len(self.b_params) != self.q:
            raise ValueError(f'expected {self.p} a-parameters and {self.q} b-parameters, '
                             f'got {len(self.a_params)} and {len(self.b_params)}')
        if self.m > self.q or self.n > self.p:
            raise ValueError(f'orders must satisfy m <= q and n <= p, got m={self.m}, n={self.n}, '
                             f'p={self.p}, q={self.q}')
        if not all(math.isfinite(v) for v in self.a_params + self.b_params):
            raise ValueError('Meijer G parameters must be finite')
        return self

    @classmethod
    def from_params(cls, m: int, n: int, a_params=(), b_params=()) -> 'MeijerGSpec':
        return cls(m=m, n=n, p=len(a_params), q=len(b_params), a_params=tuple(a_params), b_params=tuple(b_params))

    def factors(self) -> List[GammaFactor]:
        a, b = self.a_params, self.b_params
        return ([GammaFactor(b[j], (1.0,)) for j in range(self.m)] +
                [GammaFactor(1.0 - a[k], (-1.0,)) for k in range(self.n)] +
                [GammaFactor(1.0 - b[j], (-1.0,), False) for j in range(self.m, self.q)] +
                [GammaFactor(a[k], (1.0,), False) for k in range(self.n, self.p)])

    def check_poles(self) -> None:
        """Raise if a pole of some Gamma(b_j + s) coincides with one of some Gamma(1 - a_k - s)."""
        for k in range(self.n):
            for j in range(self.m):
                diff = self.a_params[k] - self.b_params[j]
                if diff > 1.0 - _COINCIDENCE_TOL and abs(diff - round(diff)) < _COINCIDENCE_TOL:
                    raise PoleCollisionError(f'a_{k + 1} - b_{j + 1} = {diff:g} is a positive integer',
                                             extra={'spec': self.model_dump()})

    # poles of the numerator families, limited to [lo, hi]
    def left_poles(self, lo: float, hi: float) -> List[float]:
        out = []
        for j in range(self.m):
            top = -self.b_params[j]
            out.extend(top - ell for ell in range(0, max(0, math.floor(top - lo)) + 1) if lo <= top - ell <= hi)
        return out

    def right_poles(self, lo: float, hi: float) -> List[float]:
        out = []
        for k in range(self.n):
            bottom = 1.0 - self.a_params[k]
            out.extend(bottom + ell for ell in range(0, max(0, math.floor(hi - bottom)) + 1)
                       if lo <= bottom + ell <= hi)
        return out


def _saddle(factors: List[GammaFactor], log_x: float, lo: float, hi: float) -> float:
    """Real saddle point of the pole-carrying part of the integrand on [lo, hi]."""
    numerators = [f for f in factors if f.numerator]

    def objective(c):
        return sum(gammaln(f.real_argument((c,))) for f in numerators) - c * log_x

    found = minimize_scalar(objective, bounds=(lo, hi), method='bounded', options={'xatol': 1e-6})
    return float(found.x) if found.success else 0.5 * (lo + hi)


def _misplaced_residues(spec: MeijerGSpec, c: float) -> List[Residue]:
    left_top = max((-b for b in spec.b_params[:spec.m]), default=-math.inf)
    right_bottom = min((1.0 - a for a in spec.a_params[:spec.n]), default=math.inf)
    lo = min(c, right_bottom) - 2.0
    hi = max(c, left_top) + 2.0
    left = spec.left_poles(lo, hi)
    right = spec.right_poles(lo, hi)
    everything = np.unique(np.round(left + right, 9))

    signed = {}
    for pole in left:
        if pole > c:
            signed[round(pole, 9)] = 1.0
    for pole in right:
        if pole < c:
            signed[round(pole, 9)] = -1.0

    residues = []
    for pole, sign in sorted(signed.items()):
        others = np.abs(everything - pole)
        others = others[others > 1e-9]
        nearest = float(others.min()) if others.size else math.inf
        radius = min(RESIDUE_RADIUS, 0.45 * nearest, 0.45 * abs(pole - c))
        residues.append(Residue(pole=pole, sign=sign, radius=radius))
    return residues


def _choose_line(spec: MeijerGSpec, factors: List[GammaFactor], log_x: float,
                 ctr: ContourSettings) -> Tuple[float, List[Residue]]:
    if ctr.c_offsets is not None:
        c = float(ctr.c_offsets[0])
    else:
        left_top = max((-b for b in spec.b_params[:spec.m]), default=None)
        right_bottom = min((1.0 - a for a in spec.a_params[:spec.n]), default=None)
        if left_top is None and right_bottom is None:
            raise ContourFailure('Meijer G integrand has no Gamma factor in the numerator',
                                 extra={'spec': spec.model_dump()})
        if right_bottom is None:
            c = _saddle(factors, log_x, left_top + 0.5, left_top + 0.5 + ONE_SIDED_REACH)
        elif left_top is None:
            c = _saddle(factors, log_x, right_bottom - 0.5 - ONE_SIDED_REACH, right_bottom - 0.5)
        elif right_bottom > left_top:
            keep = min(0.5, 0.4 * (right_bottom - left_top))
            c = _saddle(factors, log_x, left_top + keep, right_bottom - keep)
        else:
            poles = np.unique(np.round(spec.left_poles(right_bottom - 1.0, left_top + 1.0) +
                                       spec.right_poles(right_bottom - 1.0, left_top + 1.0), 9))
            widest = int(np.argmax(np.diff(poles)))
            c = 0.5 * (poles[widest] + poles[widest + 1])

    nearby = spec.left_poles(c - 1.0, c + 1.0) + spec.right_poles(c - 1.0, c + 1.0)
    if nearby and min(abs(p - c) for p in nearby) < 1e-6:
        raise ContourFailure(f'contour Re(s) = {c:g} passes through a pole')
    return c, _misplaced_residues(spec, c)


def evaluate_meijer_g(spec: MeijerGSpec,
                      x: float,
                      ctr: Optional[ContourSettings] = None,
                      log_scale: float = 0.0) -> ContourResult:
    """exp(log_scale) * G(x) with convergence diagnostics."""
    if not x > 0:
        raise DomainError(f'meijer_g needs x > 0, got {x}')
    ctr = ctr or ContourSettings()
    spec.check_poles()
    factors = spec.factors()
    log_x = math.log(x)
    c, residues = _choose_line(spec, factors, log_x, ctr)
    if residues:
        logger.debug(f'meijer_g: line Re(s)={c:.4g} with {len(residues)} residue correction(s)')
    return integrate_line(factors, log_x, c, ctr, log_scale=log_scale, residues=residues)


def meijer_g(spec: MeijerGSpec, x: float, ctr: Optional[ContourSettings] = None) -> float:
    return evaluate_meijer_g(spec, x, ctr).value


def log_meijer_g(spec: MeijerGSpec, x: float, ctr: Optional[ContourSettings] = None) -> float:
    """log G(x) for positive G; stays finite where G itself under- or overflows."""
    result = evaluate_meijer_g(spec, x, ctr)
    if result.sign <= 0:
        raise DomainError('log_meijer_g needs a positive value', extra={'value': result.value})
    return result.log_abs_value
