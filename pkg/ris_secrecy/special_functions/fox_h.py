"""Extended generalized bivariate Fox H-function.

Parameter blocks follow the usual H^{0,n:m1,n1:m2,n2}_{p,q:p1,q1:p2,q2}
layout:

    H(x, y) = (1 / 2 pi j)^2 * double integral of
        phi(s, t) * theta_1(s) * theta_2(t) * x^(-s) * y^(-t) ds dt

    phi(s, t) = prod_{j<=n} Gamma(1 - a_j - alpha_j s - A_j t)
                / [prod_{j>n} Gamma(a_j + alpha_j s + A_j t) * prod_j Gamma(1 - b_j - beta_j s - B_j t)]

    theta_i(s) = prod_{j<=m_i} Gamma(d_j + delta_j s) * prod_{j<=n_i} Gamma(1 - c_j - gamma_j s)
                 / [prod_{j>m_i} Gamma(1 - d_j - delta_j s) * prod_{j>n_i} Gamma(c_j + gamma_j s)]

Straight contours are placed by a linear program over the real parts of every
numerator Gamma argument; when none exists the integrand's pole families
cannot be separated and ``PoleCollisionError`` is raised.
"""

import math
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, NonNegativeInt, model_validator

from ris_secrecy.log import logger
from ris_secrecy.special_functions.base import ContourResult, ContourSettings, DomainError
from ris_secrecy.special_functions.contour import GammaFactor, check_offsets, integrate_plane, separating_offsets


class JointParameter(BaseModel):
    """Entry of the joint block: a Gamma argument ``coefficient + weights[0] s + weights[1] t``."""
    model_config = ConfigDict(frozen=True)

    coefficient: float
    weights: Tuple[float, float]


class VariableParameter(BaseModel):
    model_config = ConfigDict(frozen=True)

    coefficient: float
    weight: float


class FoxHBlock(BaseModel):
    """Univariate parameter block (m, n; c-list of length p, d-list of length q)."""
    model_config = ConfigDict(frozen=True)

    m: NonNegativeInt
    n: NonNegativeInt
    c: Tuple[VariableParameter, ...] = ()
    d: Tuple[VariableParameter, ...] = ()

    @model_validator(mode='after')
    def _check_orders(self):
        if self.m > len(self.d) or self.n > len(self.c):
            raise ValueError(f'block orders m={self.m}, n={self.n} exceed lengths q={len(self.d)}, p={len(self.c)}')
        for param in self.c + self.d:
            if not (math.isfinite(param.coefficient) and math.isfinite(param.weight)):
                raise ValueError('Fox H block parameters must be finite')
        return self

    def factors(self, axis: int) -> List[GammaFactor]:
        def w(value):
            return (value, 0.0) if axis == 0 else (0.0, value)

        return ([GammaFactor(p.coefficient, w(p.weight)) for p in self.d[:self.m]] +
                [GammaFactor(1.0 - p.coefficient, w(-p.weight)) for p in self.c[:self.n]] +
                [GammaFactor(1.0 - p.coefficient, w(-p.weight), False) for p in self.d[self.m:]] +
                [GammaFactor(p.coefficient, w(p.weight), False) for p in self.c[self.n:]])


class BivarFoxHSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    joint_n: NonNegativeInt = 0
    joint_a: Tuple[JointParameter, ...] = ()
    joint_b: Tuple[JointParameter, ...] = ()
    first: FoxHBlock
    second: FoxHBlock

    @model_validator(mode='after')
    def _check_joint(self):
        if self.joint_n > len(self.joint_a):
            raise ValueError(f'joint_n={self.joint_n} exceeds the {len(self.joint_a)} joint a-parameters')
        for param in self.joint_a + self.joint_b:
            if not all(math.isfinite(v) for v in (param.coefficient, *param.weights)):
                raise ValueError('joint parameters must be finite')
        return self

    def factors(self) -> List[GammaFactor]:
        joint = ([GammaFactor(1.0 - p.coefficient, (-p.weights[0], -p.weights[1])) for p in self.joint_a[:self.joint_n]] +
                 [GammaFactor(p.coefficient, p.weights, False) for p in self.joint_a[self.joint_n:]] +
                 [GammaFactor(1.0 - p.coefficient, (-p.weights[0], -p.weights[1]), False) for p in self.joint_b])
        return joint + self.first.factors(0) + self.second.factors(1)


def fox_h_bivariate(spec: BivarFoxHSpec,
                    x: float,
                    y: float,
                    ctr: Optional[ContourSettings] = None,
                    log_scale: float = 0.0) -> ContourResult:
    """exp(log_scale) * H(x, y); the result carries offsets, windows, nodes and error estimates.

    Raises:
        DomainError: unless x, y > 0.
        PoleCollisionError: if the pole families cannot be separated by straight contours
            (or the given ``ctr.c_offsets`` do not separate them).
        ContourFailure: if the quadrature does not converge within the refinement budget.
    """
    if not (x > 0 and y > 0):
        raise DomainError(f'fox_h_bivariate needs x, y > 0, got ({x}, {y})')
    ctr = ctr or ContourSettings()
    factors = spec.factors()
    if ctr.c_offsets is not None:
        c = tuple(ctr.c_offsets)
        check_offsets(factors, c)
    else:
        c = tuple(separating_offsets(factors))
    result = integrate_plane(factors, (math.log(x), math.log(y)), c, ctr, log_scale=log_scale)
    logger.debug(f'fox_h_bivariate x={x:.4g} y={y:.4g}: value={result.value:.6g} '
                 f'err={result.error_estimate:.1e} nodes={result.nodes}')
    return result
