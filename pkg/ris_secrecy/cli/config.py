"""Experiment configuration: one JSON (or json5) document per run, SNRs in dB."""

from pathlib import Path
from typing import Any, Dict, List, Literal, NamedTuple, Optional, Union

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    NonNegativeFloat,
    PositiveFloat,
    PositiveInt,
    ValidationError,
    field_validator,
    model_validator,
)

from ris_secrecy.channel import PhaseModel, V2IScenario, V2VScenario
from ris_secrecy.montecarlo import MIN_SOP_SAMPLES
from ris_secrecy.settings import DEFAULT_SEED
from ris_secrecy.utils.json_utils import json_loads

SopMethodName = Literal['closed', 'semianalytic', 'mc']


class ConfigError(Exception):

    def __init__(self,
                 exception: Optional[Exception] = None,
                 code: Optional[str] = 'config_error',
                 message: Optional[str] = None,
                 extra: Optional[dict] = None):
        if exception is not None:
            super().__init__(f'\nError code: {code}. Error message: {exception}')
        else:
            super().__init__(f'\nError code: {code}. Error message: {message}')
        self.exception = exception
        self.code = code
        self.message = message
        self.extra = extra


def db_to_linear(db: float) -> float:
    return 10.0**(db / 10.0)


class GeometryConfig(BaseModel):
    """Distances (m), path-loss exponents and channel variances; unset values take the scenario defaults."""
    model_config = ConfigDict(extra='forbid')

    d_sr: PositiveFloat = 20.0
    d_rd: PositiveFloat = 20.0
    d_sd: PositiveFloat = 50.0
    d_se: PositiveFloat = 10.0
    p1: PositiveFloat = 2.1
    p2: PositiveFloat = 2.3
    nu_sr: PositiveFloat = 1.0
    nu_rd: PositiveFloat = 1.0
    nu_sd: PositiveFloat = 1.0


class GateTolerances(BaseModel):
    model_config = ConfigDict(extra='forbid')

    ks_exact: PositiveFloat = 0.002
    ks_approx: PositiveFloat = 0.03
    closed_vs_semianalytic: PositiveFloat = 1e-2
    semianalytic_floor: NonNegativeFloat = 1e-4
    mc_coverage: float = Field(default=0.95, gt=0.0, le=1.0)
    mc_ci_level: float = Field(default=0.99, gt=0.0, lt=1.0)


class GridPoint(NamedTuple):
    n: int
    tx_snr_db: float
    rs: float
    phase: PhaseModel


def _as_list(value: Any) -> Any:
    if isinstance(value, (list, tuple)):
        return list(value)
    return [value]


class ExperimentConfig(BaseModel):
    model_config = ConfigDict(extra='forbid')

    scenario: Literal['v2v', 'v2i']
    geometry: GeometryConfig = Field(default_factory=GeometryConfig)
    n_elements: List[PositiveInt]
    tx_snr_db: List[float] = Field(default_factory=lambda: [60.0])
    rate_rs: List[NonNegativeFloat] = Field(default_factory=lambda: [0.5])
    phase: List[PhaseModel] = Field(default_factory=lambda: [PhaseModel.IDEAL])
    methods: List[SopMethodName] = Field(default_factory=lambda: ['closed', 'semianalytic'])
    mc_samples: PositiveInt = 1_000_000
    seed: int = Field(default=DEFAULT_SEED, ge=0, lt=1 << 64)
    output: Optional[str] = None
    stats_samples: PositiveInt = 1_000_000
    stats_bins: int = Field(default=200, ge=10)
    tolerances: GateTolerances = Field(default_factory=GateTolerances)

    @field_validator('n_elements', 'tx_snr_db', 'rate_rs', 'phase', 'methods', mode='before')
    @classmethod
    def accept_scalar(cls, value):
        return _as_list(value)

    @field_validator('n_elements', 'tx_snr_db', 'rate_rs', 'phase', 'methods')
    @classmethod
    def non_empty(cls, value: list):
        if not value:
            raise ValueError('grid lists must not be empty')
        return value

    @model_validator(mode='after')
    def check_consistency(self):
        if 'mc' in self.methods and self.mc_samples < MIN_SOP_SAMPLES:
            raise ValueError(f'mc_samples must be at least {MIN_SOP_SAMPLES} when mc is selected')
        if self.scenario == 'v2i':
            # the V2I link has no RIS phase model
            self.phase = [PhaseModel.IDEAL]
        self.methods = list(dict.fromkeys(self.methods))
        return self

    def grid(self) -> List[GridPoint]:
        """Grid points in deterministic order (N outermost, then SNR, rate and phase)."""
        return [
            GridPoint(n, db, rs, phase) for n in self.n_elements for db in self.tx_snr_db for rs in self.rate_rs
            for phase in self.phase
        ]

    def build_scenario(self, n: int, tx_snr: float) -> Union[V2VScenario, V2IScenario]:
        """Scenario at a linear transmit SNR."""
        g = self.geometry
        if self.scenario == 'v2v':
            return V2VScenario(n_elements=n, tx_snr=tx_snr, d_sr=g.d_sr, d_rd=g.d_rd, d_se=g.d_se, p1=g.p1, p2=g.p2,
                               nu_sr=g.nu_sr, nu_rd=g.nu_rd)
        return V2IScenario(n_elements=n, tx_snr=tx_snr, d_sd=g.d_sd, d_se=g.d_se, p1=g.p1, p2=g.p2, nu_sd=g.nu_sd)


def parse_config(text: str, overrides: Optional[Dict[str, Any]] = None) -> ExperimentConfig:
    """Parse and validate a config document.

    Raises:
        ConfigError: on malformed JSON or a document that fails validation.
    """
    try:
        data = json_loads(text)
    except ValueError as e:
        raise ConfigError(exception=e, message='config is not valid JSON')
    if not isinstance(data, dict):
        raise ConfigError(message=f'config must be a JSON object, got {type(data).__name__}')
    data.update({k: v for k, v in (overrides or {}).items() if v is not None})
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as e:
        raise ConfigError(exception=e, message='config failed validation')


def load_config(path: Union[str, Path], overrides: Optional[Dict[str, Any]] = None) -> ExperimentConfig:
    try:
        text = Path(path).read_text(encoding='utf-8')
    except OSError as e:
        raise ConfigError(exception=e, message=f'cannot read config {path}')
    return parse_config(text, overrides)
