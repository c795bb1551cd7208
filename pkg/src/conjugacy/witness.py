"""
Conjugacy witnesses

A witness phi for the pair (f -> g) satisfies phi o f^t = g^t o phi, which
for differentiable phi reads phi'(x) * f(x) = g(phi(x)).
"""

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple
import logging
import math

import numpy as np
import pandas as pd

from utils.io import render_csv

logger = logging.getLogger(__name__)

QUOTIENT_STEPS = (1e-2, 1e-3, 1e-4)
SMOOTHNESS = ("C0", "C1", "Cinf")


@dataclass
class ConjugacyWitness:
    """A numerically evaluable local map conjugating two fields"""

    forward: Callable[[float], float]
    domain: Tuple[float, float]
    smoothness_claim: str  # C0, C1, Cinf
    orientation: str  # preserving, reversing
    derivative: Optional[Callable[[float], float]] = None
    tangent_to_identity: bool = False
    source: str = ""
    downgraded: bool = False
    quotients: Dict[str, List[float]] = field(default_factory=dict)
    warnings: List[str] = field(default_factory=list)

    def __call__(self, x: float) -> float:
        return self.forward(x)

    def sample(self, xs: Sequence[float]) -> pd.DataFrame:
        """Graph of the witness as (x, phi, dphi); dphi is empty when unknown"""
        rows = []
        for x in xs:
            x = float(x)
            phi = self.forward(x)
            dphi = self.derivative(x) if self.derivative is not None else math.nan
            rows.append((x, phi, dphi))
        return pd.DataFrame(rows, columns=["x", "phi", "dphi"])

    def to_csv(self, xs: Sequence[float], provenance: Optional[Dict[str, Any]] = None) -> str:
        return render_csv(self.sample(xs), provenance)

    def grid(self, n: int = 41, margin: float = 1e-3) -> np.ndarray:
        """Evenly spaced sample points inside a finite domain, skipping 0"""
        lo, hi = self.domain
        lo = max(lo, -1.0)
        hi = min(hi, 1.0)
        xs = np.linspace(lo + margin, hi - margin, n)
        return xs[xs != 0.0]

    def difference_quotients(self, steps: Sequence[float] = QUOTIENT_STEPS) -> Dict[str, List[float]]:
        """phi(h)/h for h -> 0+ and phi(-h)/(-h) for h -> 0+"""
        return {
            'right': [self.forward(h) / h for h in steps],
            'left': [self.forward(-h) / (-h) for h in steps],
        }

    def check_monotone(self, n: int = 200) -> bool:
        """Strict monotonicity on n-point grids of each side of 0"""
        lo, hi = self.domain
        lo = max(lo, -1.0)
        hi = min(hi, 1.0)
        sign = 1.0 if self.orientation == "preserving" else -1.0
        for a, b in ((lo, 0.0), (0.0, hi)):
            if a == b:
                continue
            xs = np.linspace(a, b, n + 2)[1:-1]
            values = np.array([self.forward(float(x)) for x in xs])
            if not np.all(sign * np.diff(values) > 0):
                return False
        return True

    def to_dict(self) -> Dict[str, Any]:
        doc = {
            'domain': list(self.domain),
            'smoothness_claim': self.smoothness_claim,
            'orientation': self.orientation,
            'tangent_to_identity': self.tangent_to_identity,
            'source': self.source,
            'downgraded': self.downgraded,
        }
        if self.quotients:
            doc['difference_quotients'] = self.quotients
        if self.warnings:
            doc['warnings'] = list(self.warnings)
        return doc
