"""
Flows: numerical and closed-form flows of one-dimensional fields, and the
flow-commutation check used to verify conjugacies.
"""

from .integrate import FlowResult, flow, OK, BLOWUP, LEFT_DOMAIN
from .models import model_flow, MODELS
from .verify import GridSpec, VerificationReport, verify_conjugacy

__all__ = [
    'FlowResult',
    'flow',
    'OK',
    'BLOWUP',
    'LEFT_DOMAIN',
    'model_flow',
    'MODELS',
    'GridSpec',
    'VerificationReport',
    'verify_conjugacy',
]
