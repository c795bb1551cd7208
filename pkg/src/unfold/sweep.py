"""
Parameter sweeps over unfolding families
"""

from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple
import itertools
import logging
import math

import numpy as np
import pandas as pd
from tqdm import tqdm

from utils.config import Settings
from utils.errors import GridCapError, UsageError, ZeroFieldError
from utils.io import render_csv
from .equilibria import EquilibriumReport, equilibria
from .families import UnfoldingFamily, instantiate

logger = logging.getLogger(__name__)


def grid_axes(ranges: Sequence[Tuple[float, float, int]]) -> List[List[float]]:
    """(lo, hi, count) per parameter -> explicit value lists"""
    axes = []
    for lo, hi, n in ranges:
        if n < 1:
            raise UsageError(f"Grid axis needs at least one node, got {n}")
        axes.append([float(v) for v in np.linspace(lo, hi, int(n))])
    return axes


@dataclass
class BifurcationTable:
    """One EquilibriumReport per grid node, in lexicographic grid order"""

    family: UnfoldingFamily
    rows: List[EquilibriumReport] = field(default_factory=list)

    @property
    def counts(self) -> List[Optional[int]]:
        """Equilibrium count per node, None where the field vanishes identically"""
        return [r.n_equilibria for r in self.rows]

    def to_frame(self) -> pd.DataFrame:
        """lambda_1..lambda_p, n_equilibria, then root/multiplicity/stability triples"""
        width = max((r.count for r in self.rows), default=0)
        names = self.family.parameter_names()
        columns = names + ['n_equilibria']
        for i in range(1, width + 1):
            columns += [f'root_{i}', f'multiplicity_{i}', f'stability_{i}']

        records = []
        for row in self.rows:
            record: List[Any] = list(row.params) + [row.n_equilibria]
            for e in row.equilibria:
                record += [e.location, e.multiplicity, e.stability]
            record += [None] * (len(columns) - len(record))
            records.append(record)
        frame = pd.DataFrame(records, columns=columns)
        frame['n_equilibria'] = frame['n_equilibria'].astype("Int64")
        return frame

    def to_csv(self, provenance: Optional[Dict[str, Any]] = None) -> str:
        return render_csv(self.to_frame(), provenance)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'family': self.family.to_dict(),
            'nodes': len(self.rows),
            'identically_zero_nodes': sum(1 for r in self.rows if r.identically_zero),
            'rows': [r.to_dict() for r in self.rows],
        }


def sweep(
    family: UnfoldingFamily,
    grid: Sequence[Sequence[float]],
    window: Optional[Tuple[float, float]] = None,
    settings: Optional[Settings] = None,
    progress: bool = False,
) -> BifurcationTable:
    """
    Equilibria at every node of the product grid.

    Args:
        family: unfolding family
        grid: explicit values per parameter (see grid_axes)
        window: search interval, default from settings
        progress: show a tqdm bar

    Raises:
        UsageError: grid does not match the parameter count
        GridCapError: more nodes than settings.grid_cap
    """
    settings = settings or Settings()
    if len(grid) != family.param_count:
        raise UsageError(f"Family {family.kind} has {family.param_count} parameters, grid has {len(grid)} axes")
    size = math.prod(len(axis) for axis in grid)
    if size > settings.grid_cap:
        raise GridCapError(f"Grid has {size} nodes, cap is {settings.grid_cap}")

    nodes = list(itertools.product(*[[float(v) for v in axis] for axis in grid]))
    logger.info(f"Sweeping {family.describe()} over {size} nodes with {settings.sweep_workers} workers")

    lo, hi = window if window is not None else settings.window

    def solve(node: Tuple[float, ...]) -> EquilibriumReport:
        try:
            return equilibria(instantiate(family, node), window, settings, params=node)
        except ZeroFieldError:
            logger.warning(f"{family.describe()} vanishes identically at {list(node)}; recording the node without roots")
            return EquilibriumReport(
                params=list(node), equilibria=[], window=(float(lo), float(hi)), degree=-1, identically_zero=True
            )

    rows: List[Optional[EquilibriumReport]] = [None] * len(nodes)
    with ThreadPoolExecutor(max_workers=settings.sweep_workers) as executor:
        futures = {executor.submit(solve, node): i for i, node in enumerate(nodes)}
        for future in tqdm(as_completed(futures), total=len(nodes), desc="Sweeping", disable=not progress):
            rows[futures[future]] = future.result()

    return BifurcationTable(family=family, rows=rows)
