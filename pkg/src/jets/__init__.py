"""
Jets: truncated power-series arithmetic at the origin.
"""

from .series import (
    TruncatedSeries,
    Flat,
    first_nonzero_order,
    reciprocal_laurent,
    residue_of_reciprocal,
    pullback,
)
from .elementary import exp_series, log_series, sin_cos_series, sqrt_series, atan_series, real_power
from .taylor import taylor

__all__ = [
    'TruncatedSeries',
    'Flat',
    'first_nonzero_order',
    'reciprocal_laurent',
    'residue_of_reciprocal',
    'pullback',
    'taylor',
    'exp_series',
    'log_series',
    'sin_cos_series',
    'sqrt_series',
    'atan_series',
    'real_power',
]
