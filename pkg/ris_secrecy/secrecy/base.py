import math
from enum import Enum
from typing import Any, Dict, Optional

from pydantic import BaseModel, ConfigDict, Field, NonNegativeFloat, computed_field

from ris_secrecy.log import logger

SOP_METHOD_REGISTRY = {}


class SecrecyError(Exception):

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


class ThetaDegenerateError(SecrecyError):

    def __init__(self, message: str = 'closed forms need a target rate R_s > 0 (theta > 1)', extra=None):
        super().__init__(code='theta_degenerate', message=message, extra=extra)


class IntegrationError(SecrecyError):

    def __init__(self, message: str, extra: Optional[dict] = None):
        super().__init__(code='integration_failure', message=message, extra=extra)


class SopMethod(str, Enum):
    CLOSED_FORM = 'closed_form'
    SEMI_ANALYTIC = 'semi_analytic'
    DOUBLE_INTEGRAL = 'double_integral'
    MONTE_CARLO = 'monte_carlo'


class SecrecyTarget(BaseModel):
    """Target secrecy rate R_s in nats; theta = exp(R_s)."""
    model_config = ConfigDict(frozen=True)

    rate_rs: NonNegativeFloat

    @computed_field
    @property
    def theta(self) -> float:
        return math.exp(self.rate_rs)


class SopEstimate(BaseModel):
    model_config = ConfigDict(frozen=True)

    value: float = Field(ge=0.0, le=1.0)
    method: SopMethod
    uncertainty: NonNegativeFloat = 0.0
    diagnostics: Dict[str, Any] = Field(default_factory=dict)


def clamp_probability(raw: float, method: SopMethod, diagnostics: Dict[str, Any]) -> float:
    """Clamp a numerically evaluated probability into [0, 1], recording any adjustment."""
    if not math.isfinite(raw):
        raise IntegrationError(f'{method.value} produced a non-finite probability', extra={'raw': raw})
    if 0.0 <= raw <= 1.0:
        return raw
    clamped = min(1.0, max(0.0, raw))
    diagnostics['clamped_from'] = raw
    logger.warning(f'{method.value}: probability {raw:.3e} clamped to {clamped:g}')
    return clamped


def register_sop_method(name, allow_overwrite=False):
    """Register a SOP evaluator ``fn(scenario, phase, target, **options) -> SopEstimate`` under ``name``."""

    def decorator(fn):
        if name in SOP_METHOD_REGISTRY:
            if allow_overwrite:
                logger.warning(f'SOP method `{name}` already exists! Overwriting with {fn}.')
            else:
                raise ValueError(f'SOP method `{name}` already exists! Please ensure that the method name is unique.')
        SOP_METHOD_REGISTRY[name] = fn
        return fn

    return decorator
