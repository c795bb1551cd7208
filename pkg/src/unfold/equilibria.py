"""
Equilibria of polynomial fields

Real roots are isolated through the critical points: between consecutive
critical points a polynomial is monotone, so each piece holds at most one
simple root (bracketed by a sign change and refined with brentq), and
multiple roots sit on critical points where the polynomial vanishes.
Critical points come from the same procedure applied to the derivative.
"""

from dataclasses import dataclass, field
from math import factorial
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union
import logging

import numpy as np
import numpy.polynomial.polynomial as poly
from scipy.optimize import brentq

from jets import TruncatedSeries
from utils.config import Settings
from utils.errors import UsageError, ZeroFieldError

logger = logging.getLogger(__name__)

# roots closer than this are one root
MERGE_TOL = 1e-9


@dataclass
class Equilibrium:
    location: float
    multiplicity: int
    stability: str  # attracting, repelling, semi-stable

    def to_dict(self) -> Dict[str, Any]:
        return {'location': self.location, 'multiplicity': self.multiplicity, 'stability': self.stability}


@dataclass
class EquilibriumReport:
    """Equilibria of one polynomial field inside a window"""

    params: List[float]
    equilibria: List[Equilibrium]
    window: Tuple[float, float]
    degree: int = 0
    identically_zero: bool = False  # every point is an equilibrium

    @property
    def count(self) -> int:
        return len(self.equilibria)

    @property
    def n_equilibria(self) -> Optional[int]:
        """None when the field vanishes identically"""
        return None if self.identically_zero else self.count

    @property
    def locations(self) -> List[float]:
        return [e.location for e in self.equilibria]

    def summary(self) -> str:
        if self.identically_zero:
            return "identically zero"
        if not self.equilibria:
            return "no equilibria"
        return ", ".join(f"{e.location:.6g} ({e.stability}, m={e.multiplicity})" for e in self.equilibria)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'params': list(self.params),
            'window': list(self.window),
            'degree': self.degree,
            'n_equilibria': self.n_equilibria,
            'identically_zero': self.identically_zero,
            'equilibria': [e.to_dict() for e in self.equilibria],
        }


def _coefficients(p: Union[TruncatedSeries, Sequence[float]]) -> np.ndarray:
    c = p.coeffs if isinstance(p, TruncatedSeries) else np.asarray(p, dtype=float)
    return poly.polytrim(np.array(c, dtype=float), tol=0)


def _distinct_roots(c: np.ndarray, lo: float, hi: float, value_tol: float, xtol: float) -> List[float]:
    c = poly.polytrim(c, tol=0)
    degree = len(c) - 1
    if degree <= 0:
        return []
    if degree == 1:
        r = -c[0] / c[1]
        return [float(r)] if lo <= r <= hi else []

    critical = _distinct_roots(poly.polyder(c), lo, hi, value_tol, xtol)
    found = [x for x in critical if abs(poly.polyval(x, c)) <= value_tol]
    for x in (lo, hi):
        if abs(poly.polyval(x, c)) <= value_tol:
            found.append(x)

    breaks = [lo] + [x for x in critical if lo < x < hi] + [hi]
    for a, b in zip(breaks, breaks[1:]):
        pa, pb = poly.polyval(a, c), poly.polyval(b, c)
        if a < b and pa * pb < 0:
            found.append(float(brentq(poly.polyval, a, b, args=(c,), xtol=xtol, rtol=4 * np.finfo(float).eps)))

    roots: List[float] = []
    for x in sorted(found):
        if roots and abs(x - roots[-1]) <= MERGE_TOL * max(1.0, abs(x)):
            continue
        roots.append(float(x))
    return roots


def root_multiplicity(c: np.ndarray, x: float, tol: float) -> Tuple[int, float]:
    """
    Order of the first Taylor coefficient of c at x above tol * max|c|,
    and that coefficient
    """
    scale = tol * float(np.max(np.abs(c)))
    current = np.array(c, dtype=float)
    for j in range(1, len(c)):
        current = poly.polyder(current)
        value = poly.polyval(x, current) / factorial(j)
        if abs(value) > scale:
            return j, float(value)
    return len(c) - 1, float(current[0]) if len(current) else 0.0


def stability_of(multiplicity: int, leading: float) -> str:
    """Odd multiplicity: attracting when the field goes + to -"""
    if multiplicity % 2 == 0:
        return "semi-stable"
    return "attracting" if leading < 0 else "repelling"


def equilibria(
    p: Union[TruncatedSeries, Sequence[float]],
    window: Optional[Tuple[float, float]] = None,
    settings: Optional[Settings] = None,
    params: Optional[Sequence[float]] = None,
) -> EquilibriumReport:
    """
    All real equilibria of a polynomial field inside the closed window.

    Args:
        p: coefficients, constant term first
        window: (lo, hi), default from settings
        params: parameter values recorded on the report

    Raises:
        UsageError: empty or non-finite window
        ZeroFieldError: identically zero polynomial
    """
    settings = settings or Settings()
    lo, hi = window if window is not None else settings.window
    if not (np.isfinite(lo) and np.isfinite(hi)) or lo >= hi:
        raise UsageError(f"Degenerate window ({lo}, {hi})")
    c = _coefficients(p)
    if not np.any(c != 0.0):
        raise ZeroFieldError("Polynomial is identically zero; every point is an equilibrium")

    value_tol = settings.root_tol * float(np.max(np.abs(c)))
    roots = _distinct_roots(c, float(lo), float(hi), value_tol, settings.root_tol)
    found = []
    for r in roots:
        m, lead = root_multiplicity(c, r, settings.multiplicity_tol)
        found.append(Equilibrium(location=r, multiplicity=m, stability=stability_of(m, lead)))
    report = EquilibriumReport(
        params=list(params) if params is not None else [],
        equilibria=found,
        window=(float(lo), float(hi)),
        degree=len(c) - 1,
    )
    logger.debug(f"Equilibria of {c.tolist()} on [{lo}, {hi}]: {report.summary()}")
    return report


def _sign_changes(values: Sequence[float]) -> int:
    signs = [np.sign(v) for v in values if v != 0.0]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def sturm_chain(c: Sequence[float], tol: float = 1e-12) -> List[np.ndarray]:
    """p, p', then negated remainders until the remainder vanishes"""
    c = poly.polytrim(np.asarray(c, dtype=float), tol=0)
    chain = [c]
    if len(c) > 1:
        chain.append(poly.polyder(c))
    scale = float(np.max(np.abs(c)))
    while len(chain[-1]) > 1:
        _, rem = poly.polydiv(chain[-2], chain[-1])
        rem = poly.polytrim(rem, tol=tol * scale)
        if len(rem) == 1 and abs(rem[0]) <= tol * scale:
            break
        chain.append(-rem)
    return chain


def sturm_count(p: Union[TruncatedSeries, Sequence[float]], lo: float, hi: float) -> int:
    """Number of distinct real roots in (lo, hi]"""
    chain = sturm_chain(_coefficients(p))
    at_lo = [poly.polyval(lo, q) for q in chain]
    at_hi = [poly.polyval(hi, q) for q in chain]
    return _sign_changes(at_lo) - _sign_changes(at_hi)
