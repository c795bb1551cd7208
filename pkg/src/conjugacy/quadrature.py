"""
Adaptive quadrature of 1/f-type integrands (QUADPACK via scipy)
"""

from typing import Callable, Optional
import logging
import warnings

from scipy.integrate import IntegrationWarning, quad

from expr import Expression
from utils.config import Settings
from utils.errors import DomainError, QuadratureError

logger = logging.getLogger(__name__)


def reciprocal_integrand(f: Expression, scale: float = 1.0) -> Callable[[float], float]:
    """y -> scale / f(y); a zero of f inside the range is an error"""

    def integrand(y: float) -> float:
        v = f.evaluate(y)
        if v == 0.0:
            raise QuadratureError(f"{f} vanishes at {y!r} inside the integration range")
        return scale / v

    return integrand


def integrate(
    func: Callable[[float], float],
    lo: float,
    hi: float,
    settings: Optional[Settings] = None,
    abs_tol: Optional[float] = None,
    rel_tol: Optional[float] = None,
) -> float:
    """
    Adaptive Gauss-Kronrod integral of func over [lo, hi] (either order).

    Raises:
        QuadratureError: non-convergence, or the integrand left its domain
    """
    settings = settings or Settings()
    if lo == hi:
        return 0.0
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", IntegrationWarning)
        try:
            value, err = quad(
                func,
                lo,
                hi,
                epsabs=abs_tol if abs_tol is not None else settings.quad_abs_tol,
                epsrel=rel_tol if rel_tol is not None else settings.quad_rel_tol,
                limit=settings.quad_limit,
            )
        except DomainError as e:
            raise QuadratureError(f"Integrand undefined on [{lo!r}, {hi!r}]: {e}")
    for w in caught:
        if not issubclass(w.category, IntegrationWarning):
            continue
        # roundoff: tolerance below double precision, value kept
        if "roundoff" in str(w.message):
            logger.debug(f"quad roundoff on [{lo!r}, {hi!r}]: err {err:.2e}")
            continue
        raise QuadratureError(f"Quadrature on [{lo!r}, {hi!r}] did not converge: {w.message}")
    logger.debug(f"quad[{lo:.6g}, {hi:.6g}] = {value:.15g} (err {err:.2e})")
    return value
