"""
Conjugacy construction

Time maps and their inverses, C0 gluing, C1 conjugators to the local
models, scaling between monomial models, the homological equation and
closed-form baseline maps.
"""

from .quadrature import integrate, reciprocal_integrand
from .timemap import (
    POSITIVE,
    NEGATIVE,
    TimeMap,
    MonomialTimeMap,
    RectifyingMap,
    time_map,
    normalized_time_map,
    regularized_antiderivative,
)
from .witness import ConjugacyWitness
from .topological import c0_conjugacy, side_signs, attracting_sides, choose_pairing
from .smooth import rectify_regular, scale_conjugacy, c1_conjugator, c1_limit_check
from .homological import HomologicalSolution, solve_homological
from .builtins import BUILTIN_MAPS, get_builtin

__all__ = [
    'integrate',
    'reciprocal_integrand',
    'POSITIVE',
    'NEGATIVE',
    'TimeMap',
    'MonomialTimeMap',
    'RectifyingMap',
    'time_map',
    'normalized_time_map',
    'regularized_antiderivative',
    'ConjugacyWitness',
    'c0_conjugacy',
    'side_signs',
    'attracting_sides',
    'choose_pairing',
    'rectify_regular',
    'scale_conjugacy',
    'c1_conjugator',
    'c1_limit_check',
    'HomologicalSolution',
    'solve_homological',
    'BUILTIN_MAPS',
    'get_builtin',
]
