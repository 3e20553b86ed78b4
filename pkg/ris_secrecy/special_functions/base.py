"""Errors and shared settings of the special-function engine."""

import math
from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator

from ris_secrecy.settings import (
    DEFAULT_CONTOUR_ABS_TOL,
    DEFAULT_CONTOUR_MAX_REFINEMENTS,
    DEFAULT_CONTOUR_NODES,
    DEFAULT_CONTOUR_REL_TOL,
    DEFAULT_CONTOUR_TRUNCATION,
)


class SpecialFunctionError(Exception):

    def __init__(self,
                 exception: Optional[Exception] = None,
                 code: Optional[str] = None,
                 message: Optional[str] = None,
                 extra: Optional[dict] = None):
        if exception is not None:
            super().__init__(exception)
        else:
            super().__init__(f'\nError code: {code}. Error message: {message}')
        self.exception = exception
        self.code = code
        self.message = message
        self.extra = extra


class DomainError(SpecialFunctionError):

    def __init__(self, message: str, extra: Optional[dict] = None, code: str = 'domain_error'):
        super().__init__(code=code, message=message, extra=extra)


class GammaPoleError(DomainError):

    def __init__(self, message: str, extra: Optional[dict] = None):
        super().__init__(message, extra=extra, code='gamma_pole')


class ContourFailure(SpecialFunctionError):

    def __init__(self, message: str, extra: Optional[dict] = None):
        super().__init__(code='contour_failure', message=message, extra=extra)


class PoleCollisionError(SpecialFunctionError):

    def __init__(self, message: str, extra: Optional[dict] = None):
        super().__init__(code='pole_collision', message=message, extra=extra)


class ContourSettings(BaseModel):
    """How a Mellin-Barnes contour is realised numerically.

    Each contour is the vertical line ``Re(s) = c`` sampled by the trapezoidal
    rule on ``|Im(s)| <= truncation / decay_rate``.  ``c_offsets=None`` lets the
    engine place the lines from a pole scan; an explicit pair is used as given
    (only the first entry matters for single contours) and is checked against
    the pole families.
    """
    model_config = ConfigDict(frozen=True)

    c_offsets: Optional[Tuple[float, float]] = None
    truncation: float = DEFAULT_CONTOUR_TRUNCATION
    nodes: int = DEFAULT_CONTOUR_NODES
    rel_tol: float = DEFAULT_CONTOUR_REL_TOL
    abs_tol: float = DEFAULT_CONTOUR_ABS_TOL
    max_refinements: int = Field(default=DEFAULT_CONTOUR_MAX_REFINEMENTS, ge=0)

    @field_validator('truncation', 'rel_tol', 'abs_tol')
    def _positive(cls, value, info):
        if not value > 0:
            raise ValueError(f'{info.field_name} must be positive, got {value}')
        return value

    @field_validator('nodes')
    def _enough_nodes(cls, value):
        if value < 64:
            raise ValueError(f'nodes must be at least 64, got {value}')
        # nested half-grids need a multiple of four
        return 4 * math.ceil(value / 4)

    @field_validator('c_offsets')
    def _finite_offsets(cls, value):
        if value is not None and not all(math.isfinite(c) for c in value):
            raise ValueError(f'c_offsets must be finite, got {value}')
        return value


class ContourResult(BaseModel):
    """Outcome of a contour evaluation with its convergence diagnostics."""
    model_config = ConfigDict(frozen=True)

    value: float
    log_abs_value: float
    sign: int
    error_estimate: float
    imag_residual: float
    offsets: Tuple[float, ...]
    windows: Tuple[float, ...]
    nodes: Tuple[int, ...]
    refinements: int
    residue_correction: bool = False

    def __float__(self) -> float:
        return self.value
