__version__ = "0.1.0"
from .channel import PhaseModel, V2IScenario, V2VScenario
from .montecarlo import McResult, RngStream, estimate_sop
from .secrecy import SOP_METHOD_REGISTRY, SecrecyTarget, SopEstimate

__all__ = [
    'PhaseModel',
    'V2VScenario',
    'V2IScenario',
    'SecrecyTarget',
    'SopEstimate',
    'SOP_METHOD_REGISTRY',
    'RngStream',
    'McResult',
    'estimate_sop',
]
