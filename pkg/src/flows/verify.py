"""
Flow-commutation check for conjugacy witnesses

A map phi conjugates f to g when phi(f^t(x)) = g^t(phi(x)). The check
samples this relation on an (x, t) grid and reports the worst residual.
"""

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union
import logging

import numpy as np
import pandas as pd

from expr import Expression, as_expression
from utils.config import Settings
from utils.errors import GermKitError
from utils.io import render_csv
from .integrate import flow

logger = logging.getLogger(__name__)


@dataclass
class GridSpec:
    """Sample points x and times t; every pair (x, t) is one check"""

    xs: Sequence[float]
    ts: Sequence[float]

    @classmethod
    def uniform(
        cls,
        x_range: Tuple[float, float] = (-0.5, 0.5),
        nx: int = 11,
        t_range: Tuple[float, float] = (-1.0, 1.0),
        nt: int = 9,
    ) -> "GridSpec":
        return cls(
            xs=np.linspace(x_range[0], x_range[1], nx).tolist(),
            ts=np.linspace(t_range[0], t_range[1], nt).tolist(),
        )

    @property
    def size(self) -> int:
        return len(self.xs) * len(self.ts)


@dataclass
class VerificationReport:
    """Worst |phi(f^t(x)) - g^t(phi(x))| over the evaluated grid points"""

    max_residual: float
    evaluated: int
    skipped: int
    rows: List[Tuple[float, float, float]] = field(default_factory=list, repr=False)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.rows, columns=["x", "t", "residual"])

    def to_csv(self, provenance: Optional[Dict[str, Any]] = None) -> str:
        return render_csv(self.to_frame(), provenance)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'max_residual': self.max_residual,
            'evaluated': self.evaluated,
            'skipped': self.skipped,
        }


def _inside(x: float, domain: Optional[Tuple[float, float]]) -> bool:
    return domain is None or domain[0] <= x <= domain[1]


def verify_conjugacy(
    f: Union[str, Expression],
    g: Union[str, Expression],
    witness: Any,
    grid: GridSpec,
    settings: Optional[Settings] = None,
) -> VerificationReport:
    """
    Measure how well a witness commutes the two flows.

    Args:
        f, g: source and target fields
        witness: object with forward(x) and an optional domain (lo, hi)
        grid: sample points and times
        settings: flow tolerances

    Returns:
        VerificationReport; points outside the witness domain, flowed points
        that leave it, points whose flows blow up and points the witness
        cannot evaluate are skipped

    Raises:
        GermKitError: every grid point was skipped
    """
    settings = settings or Settings()
    fe, ge = as_expression(f), as_expression(g)
    phi: Callable[[float], float] = witness.forward
    domain = getattr(witness, "domain", None)

    rows: List[Tuple[float, float, float]] = []
    skipped = 0

    for x in grid.xs:
        x = float(x)
        if not _inside(x, domain):
            skipped += len(grid.ts)
            continue
        try:
            y = phi(x)
        except GermKitError as e:
            logger.debug(f"Witness failed at x={x!r}: {e}")
            skipped += len(grid.ts)
            continue

        for t in grid.ts:
            t = float(t)
            try:
                ft = flow(fe, x, t, settings)
                gt = flow(ge, y, t, settings)
                if not (ft.ok and gt.ok):
                    skipped += 1
                    continue
                if not _inside(ft.value, domain):
                    logger.debug(f"Flow from x={x!r} leaves the witness domain by t={t!r}")
                    skipped += 1
                    continue
                lhs = phi(ft.value)
            except GermKitError as e:
                logger.debug(f"Skipping (x={x!r}, t={t!r}): {e}")
                skipped += 1
                continue
            rows.append((x, t, abs(lhs - gt.value)))

    if not rows:
        raise GermKitError(f"All {grid.size} verification points were skipped")

    worst = max(r[2] for r in rows)
    logger.info(f"Verified {len(rows)} points ({skipped} skipped), max residual {worst:.3e}")
    return VerificationReport(max_residual=worst, evaluated=len(rows), skipped=skipped, rows=rows)
