"""
Shared utilities: settings, error hierarchy and output writers.
"""

from .config import Settings, load_settings, truncation_order
from .errors import (
    GermKitError,
    UsageError,
    ParseError,
    DomainError,
    SingularSeriesError,
    InsufficientOrderError,
    LeadingOrderError,
    JetConditionError,
    NotFinitelyDeterminedError,
    ZeroFieldError,
    ConjugacyError,
    QuadratureError,
    IntegrationError,
    GridCapError,
)
from .io import render_json, render_csv, write_text, ensure_dir

__all__ = [
    'Settings',
    'load_settings',
    'truncation_order',
    'GermKitError',
    'UsageError',
    'ParseError',
    'DomainError',
    'SingularSeriesError',
    'InsufficientOrderError',
    'LeadingOrderError',
    'JetConditionError',
    'NotFinitelyDeterminedError',
    'ZeroFieldError',
    'ConjugacyError',
    'QuadratureError',
    'IntegrationError',
    'GridCapError',
    'render_json',
    'render_csv',
    'write_text',
    'ensure_dir',
]
