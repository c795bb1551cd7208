"""
Solutions of the homological equation -X'f + Xf' = fg + f'k

The explicit solution is X = k - f * J with J an antiderivative of
(g + k')/f. J is taken from 0 when that improper integral converges and
from a base point on each side otherwise; any two solutions differ by a
multiple of f.
"""

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Union
import logging

import numpy as np
import pandas as pd

from expr import Expression, as_expression
from jets import taylor
from utils.config import Settings
from utils.errors import GermKitError, JetConditionError, QuadratureError, SingularSeriesError
from utils.io import render_csv
from .quadrature import integrate
from .timemap import NEGATIVE, POSITIVE

logger = logging.getLogger(__name__)

LOWER_LIMITS = (1e-4, 1e-6, 1e-8)
QUOTIENT_STEPS = (1e-2, 1e-3, 1e-4)
STENCIL_STEP = 1e-3
RESIDUAL_GRID = np.linspace(-0.5, 0.5, 41)
# tighter than the time-map defaults: X' is taken by finite differences
QUAD_ABS_TOL = 1e-14
QUAD_REL_TOL = 1e-13
JET_TOL = 1e-12


@dataclass
class HomologicalSolution:
    """X with -X'f + Xf' = fg + f'k, X(0) = 0"""

    X: Callable[[float], float]
    residual_bound: float
    kernel_note: bool
    quotients: List[float] = field(default_factory=list)
    grid: List[float] = field(default_factory=list, repr=False)

    def __call__(self, x: float) -> float:
        return self.X(x)

    def evaluate_many(self, xs) -> np.ndarray:
        return np.array([self.X(float(x)) for x in xs])

    @property
    def in_m2(self) -> bool:
        """X(h)/h shrinking along h = 1e-2, 1e-3, 1e-4"""
        q = [abs(v) for v in self.quotients]
        return all(later <= earlier for earlier, later in zip(q, q[1:]))

    def sample(self, xs) -> pd.DataFrame:
        return pd.DataFrame({'x': list(xs), 'X': self.evaluate_many(xs)})

    def to_csv(self, xs, provenance: Optional[Dict[str, Any]] = None) -> str:
        return render_csv(self.sample(xs), provenance)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'residual_bound': self.residual_bound,
            'kernel_note': self.kernel_note,
            'difference_quotients': self.quotients,
            'in_m2': self.in_m2,
        }


def _check_jets(f: Expression, g: Expression, k: Expression, settings: Settings) -> None:
    gs = taylor(g, 2)
    if abs(gs[0]) > JET_TOL * gs.scale_magnitude():
        raise JetConditionError(f"g(0) = {gs[0]!r}; g must vanish at 0")
    ks = taylor(k, 2)
    if abs(ks[0]) > JET_TOL * ks.scale_magnitude() or abs(ks[1]) > JET_TOL * ks.scale_magnitude():
        raise JetConditionError(f"k must vanish to second order at 0, got jet {ks.to_list()}")
    try:
        fs = taylor(f, settings.max_order)
    except SingularSeriesError:
        return
    if not np.any(fs.coeffs != 0.0) and all(f.evaluate(float(x)) == 0.0 for x in (-0.3, 0.1, 0.4)):
        raise JetConditionError(f"{f} vanishes identically")


def _improper_converges(h: Callable[[float], float], side: int, settings: Settings) -> bool:
    """Cauchy test on the lower limits 1e-4, 1e-6, 1e-8 toward 0"""
    ref = side * 1e-2
    values = [integrate(h, side * lim, ref, settings, QUAD_ABS_TOL, QUAD_REL_TOL) for lim in LOWER_LIMITS]
    d1 = abs(values[1] - values[0])
    d2 = abs(values[2] - values[1])
    return d2 <= 0.5 * d1 or d2 < 1e-12


def solve_homological(
    f: Union[str, Expression],
    g: Union[str, Expression],
    k: Union[str, Expression],
    eps: Optional[float] = None,
    settings: Optional[Settings] = None,
) -> HomologicalSolution:
    """
    Solve -X'f + Xf' = fg + f'k for X vanishing at 0.

    Args:
        f: field, not identically 0
        g: g(0) = 0
        k: k(0) = k'(0) = 0
        eps: base points +-eps/2 are used when the integral from 0 diverges

    Raises:
        JetConditionError: a jet precondition fails
        QuadratureError: quadrature fails away from 0
    """
    settings = settings or Settings()
    eps = eps if eps is not None else settings.eps
    fe, ge, ke = as_expression(f), as_expression(g), as_expression(k)
    _check_jets(fe, ge, ke, settings)
    dk = ke.derivative()
    df = fe.derivative()

    def integrand(t: float) -> float:
        v = fe.evaluate(t)
        if v == 0.0:
            raise QuadratureError(f"{fe} vanishes at {t!r}")
        return (ge.evaluate(t) + dk.evaluate(t)) / v

    lower: Dict[int, float] = {}
    kernel_note = False
    for side in (POSITIVE, NEGATIVE):
        if _improper_converges(integrand, side, settings):
            lower[side] = 0.0
        else:
            lower[side] = side * eps / 2.0
            kernel_note = True
            logger.warning(
                f"Integral of (g + k')/f diverges at 0 on the {side:+d} side; "
                f"integrating from {lower[side]!r} (solution unique up to multiples of f)"
            )

    def X(x: float) -> float:
        x = float(x)
        if x == 0.0:
            return 0.0
        side = POSITIVE if x > 0 else NEGATIVE
        J = integrate(integrand, lower[side], x, settings, QUAD_ABS_TOL, QUAD_REL_TOL)
        return ke.evaluate(x) - fe.evaluate(x) * J

    grid = [float(x) for x in RESIDUAL_GRID if abs(x) > 2 * STENCIL_STEP]
    worst = 0.0
    h = STENCIL_STEP
    for x in grid:
        try:
            dX = (X(x - 2 * h) - 8 * X(x - h) + 8 * X(x + h) - X(x + 2 * h)) / (12 * h)
            fx, dfx = fe.evaluate(x), df.evaluate(x)
            r = -dX * fx + X(x) * dfx - fx * ge.evaluate(x) - dfx * ke.evaluate(x)
        except GermKitError as e:
            logger.debug(f"Residual skipped at {x!r}: {e}")
            continue
        worst = max(worst, abs(r))

    quotients = [X(s) / s for s in QUOTIENT_STEPS]
    logger.info(f"Homological solution: residual bound {worst:.3e}, kernel note {kernel_note}")
    return HomologicalSolution(X=X, residual_bound=worst, kernel_note=kernel_note, quotients=quotients, grid=grid)
