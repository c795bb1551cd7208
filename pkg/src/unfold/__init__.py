"""
Unfoldings

Families Q, Q1, F, F1 through degenerate germs, their equilibria with
stability, and parameter sweeps into bifurcation tables.
"""

from .families import (
    KINDS,
    UnfoldingFamily,
    build_unfolding,
    instantiate,
    polynomial_text,
    transversality_directions,
    check_transversality,
)
from .equilibria import (
    Equilibrium,
    EquilibriumReport,
    equilibria,
    root_multiplicity,
    stability_of,
    sturm_chain,
    sturm_count,
)
from .sweep import BifurcationTable, grid_axes, sweep

__all__ = [
    'KINDS',
    'UnfoldingFamily',
    'build_unfolding',
    'instantiate',
    'polynomial_text',
    'transversality_directions',
    'check_transversality',
    'Equilibrium',
    'EquilibriumReport',
    'equilibria',
    'root_multiplicity',
    'stability_of',
    'sturm_chain',
    'sturm_count',
    'BifurcationTable',
    'grid_axes',
    'sweep',
]
