"""Scenario descriptions and link budgets (linear domain throughout).

Defaults are the canonical geometry used when a config gives none: V2V with
d_SR = d_RD = 20 m and d_SE = 10 m, V2I with d_SD = 50 m and d_SE = 10 m,
path-loss exponents p1 = 2.1 (RIS links) and p2 = 2.3 (vehicle-to-vehicle
wiretap link), unit channel variances.
"""

from enum import Enum

from pydantic import BaseModel, ConfigDict, PositiveFloat, PositiveInt


class PhaseModel(str, Enum):
    IDEAL = 'ideal'
    UNIFORM_ERROR = 'uniform_error'


class V2VScenario(BaseModel):
    """Source vehicle -> RIS (N elements) -> destination vehicle, eavesdropping vehicle on a direct double-bounce path."""
    model_config = ConfigDict(frozen=True)

    n_elements: PositiveInt
    tx_snr: PositiveFloat
    d_sr: PositiveFloat = 20.0
    d_rd: PositiveFloat = 20.0
    d_se: PositiveFloat = 10.0
    p1: PositiveFloat = 2.1
    p2: PositiveFloat = 2.3
    nu_sr: PositiveFloat = 1.0
    nu_rd: PositiveFloat = 1.0


class V2IScenario(BaseModel):
    """Source vehicle -> RIS-aided roadside receiver, with the same eavesdropper model."""
    model_config = ConfigDict(frozen=True)

    n_elements: PositiveInt
    tx_snr: PositiveFloat
    d_sd: PositiveFloat = 50.0
    d_se: PositiveFloat = 10.0
    p1: PositiveFloat = 2.1
    p2: PositiveFloat = 2.3
    nu_sd: PositiveFloat = 1.0


def mean_snr_v2v_main(sc: V2VScenario) -> float:
    """Mean SNR scale of the main link, (P_s/N_0) (d_SR d_RD)^(-p1)."""
    return sc.tx_snr * sc.d_sr**(-sc.p1) * sc.d_rd**(-sc.p1)


def mean_snr_eve(d_se: float, p2: float, tx_snr: float) -> float:
    return tx_snr * d_se**(-p2)


def mean_snr_v2i_main(sc: V2IScenario) -> float:
    return sc.tx_snr * sc.d_sd**(-sc.p1)


def scenario_eve_snr(sc) -> float:
    """Mean eavesdropper SNR of either scenario kind."""
    return mean_snr_eve(sc.d_se, sc.p2, sc.tx_snr)
