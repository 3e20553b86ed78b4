"""Scenario-level SOP evaluators, registered by name for sweeps."""

from typing import Optional, Union

from ris_secrecy.channel import PhaseModel, V2IScenario, V2VScenario
from ris_secrecy.log import logger
from ris_secrecy.secrecy.base import SecrecyTarget, SopEstimate, register_sop_method
from ris_secrecy.secrecy.closed_form import sop_v2i_closed, sop_v2v_ideal_closed, sop_v2v_phase_error_closed
from ris_secrecy.secrecy.integration import sop_double_integral, sop_semianalytic
from ris_secrecy.special_functions import ContourSettings
from ris_secrecy.statistics import eve_distribution, main_distribution

Scenario = Union[V2VScenario, V2IScenario]


@register_sop_method('semianalytic')
def semianalytic_method(scenario: Scenario, phase: PhaseModel, target: SecrecyTarget, **options) -> SopEstimate:
    return sop_semianalytic(main_distribution(scenario, phase), eve_distribution(scenario), target)


@register_sop_method('double_integral')
def double_integral_method(scenario: Scenario, phase: PhaseModel, target: SecrecyTarget, **options) -> SopEstimate:
    return sop_double_integral(main_distribution(scenario, phase), eve_distribution(scenario), target)


@register_sop_method('closed')
def closed_method(scenario: Scenario,
                  phase: PhaseModel,
                  target: SecrecyTarget,
                  ctr: Optional[ContourSettings] = None,
                  **options) -> SopEstimate:
    """Closed form of the scenario; R_s = 0 on V2V is handed to the semi-analytic integral."""
    if isinstance(scenario, V2IScenario):
        return sop_v2i_closed(scenario, target, ctr)
    if target.theta <= 1.0:
        logger.warning('V2V closed forms need R_s > 0; using the semi-analytic integral')
        estimate = semianalytic_method(scenario, phase, target)
        return estimate.model_copy(update={'diagnostics': {**estimate.diagnostics, 'routed_from': 'closed_form'}})
    if phase is PhaseModel.IDEAL:
        return sop_v2v_ideal_closed(scenario, target, ctr)
    return sop_v2v_phase_error_closed(scenario, target, ctr)
