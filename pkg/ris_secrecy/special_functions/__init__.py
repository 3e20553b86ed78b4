from ris_secrecy.special_functions.base import (
    ContourFailure,
    ContourResult,
    ContourSettings,
    DomainError,
    GammaPoleError,
    PoleCollisionError,
    SpecialFunctionError,
)
from ris_secrecy.special_functions.bessel import (
    bessel_j0,
    bessel_k,
    hankel_j0_integral,
    log_bessel_k,
    reg_inc_gamma_lower,
    reg_inc_gamma_upper,
)
from ris_secrecy.special_functions.fox_h import (
    BivarFoxHSpec,
    FoxHBlock,
    JointParameter,
    VariableParameter,
    fox_h_bivariate,
)
from ris_secrecy.special_functions.gamma import ln_gamma_complex, log_sin_pi
from ris_secrecy.special_functions.meijer import MeijerGSpec, evaluate_meijer_g, log_meijer_g, meijer_g

__all__ = [
    'SpecialFunctionError',
    'DomainError',
    'GammaPoleError',
    'ContourFailure',
    'PoleCollisionError',
    'ContourSettings',
    'ContourResult',
    'ln_gamma_complex',
    'log_sin_pi',
    'bessel_k',
    'log_bessel_k',
    'bessel_j0',
    'reg_inc_gamma_upper',
    'reg_inc_gamma_lower',
    'hankel_j0_integral',
    'MeijerGSpec',
    'meijer_g',
    'log_meijer_g',
    'evaluate_meijer_g',
    'BivarFoxHSpec',
    'FoxHBlock',
    'JointParameter',
    'VariableParameter',
    'fox_h_bivariate',
]
