from ris_secrecy.secrecy.base import (
    SOP_METHOD_REGISTRY,
    IntegrationError,
    SecrecyError,
    SecrecyTarget,
    SopEstimate,
    SopMethod,
    ThetaDegenerateError,
    register_sop_method,
)
from ris_secrecy.secrecy.closed_form import (
    ideal_phase_fox_h_spec,
    phase_error_fox_h_spec,
    sop_v2i_closed,
    sop_v2v_ideal_closed,
    sop_v2v_phase_error_closed,
    v2i_meijer_spec,
)
from ris_secrecy.secrecy.integration import sop_double_integral, sop_high_snr_floor, sop_semianalytic, secrecy_rate
from ris_secrecy.secrecy.methods import closed_method, double_integral_method, semianalytic_method

__all__ = [
    'SOP_METHOD_REGISTRY',
    'register_sop_method',
    'SecrecyError',
    'ThetaDegenerateError',
    'IntegrationError',
    'SecrecyTarget',
    'SopEstimate',
    'SopMethod',
    'secrecy_rate',
    'sop_semianalytic',
    'sop_high_snr_floor',
    'sop_double_integral',
    'sop_v2v_ideal_closed',
    'sop_v2v_phase_error_closed',
    'sop_v2i_closed',
    'ideal_phase_fox_h_spec',
    'phase_error_fox_h_spec',
    'v2i_meijer_spec',
    'closed_method',
    'semianalytic_method',
    'double_integral_method',
]
