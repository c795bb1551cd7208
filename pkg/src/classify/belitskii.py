"""
Jet-level reduction of a degenerate germ to a*x^k + d*x^(2k-1)
"""

from typing import Tuple
import logging

from jets import TruncatedSeries, first_nonzero_order, pullback, residue_of_reciprocal
from utils.errors import InsufficientOrderError, LeadingOrderError

logger = logging.getLogger(__name__)


def belitskii_reduce(
    s: TruncatedSeries,
    k: int,
    tol: float = 1e-9,
) -> Tuple[float, float, TruncatedSeries]:
    """
    Remove the terms between x^k and x^(2k-1) by tangent-to-identity substitutions.

    For m = k+1..2k-2 the substitution x -> x + c*x^j with j = m-k+1 changes
    the coefficient of x^m by a*c*(k-j), so c = -c_m / (a*(k-j)). Order 2k-1
    is resonant (j = k) and what remains there is the modulus d.

    Args:
        s: jet of the germ, truncation order >= 2k-1
        k: order of the first nonvanishing coefficient, k >= 2
        tol: relative zero test used to confirm k

    Returns:
        (a, d, change) where change is the composed polynomial jet psi with
        psi(0)=0, psi'(0)=1 and pullback(s, psi) = a*x^k + d*x^(2k-1) through
        order 2k-1
    """
    if k < 2:
        raise LeadingOrderError(f"Reduction needs a degenerate germ (k >= 2), got k={k}")
    top = 2 * k - 1
    if s.order < top:
        raise InsufficientOrderError(f"Order-{k} reduction needs truncation order >= {top}, got {s.order}")

    found = first_nonzero_order(s, tol)
    if found != k:
        raise LeadingOrderError(f"First nonvanishing coefficient is at order {found}, not {k}")

    current = s.truncate(top)
    a = float(current[k])
    total = TruncatedSeries.identity(top)

    for m in range(k + 1, top):
        cm = current[m]
        if cm == 0.0:
            continue
        j = m - k + 1
        c = -cm / (a * (k - j))
        step = TruncatedSeries.identity(top).add(TruncatedSeries.monomial(c, j, top))
        current = pullback(current, step)
        total = total.compose(step)
        logger.debug(f"Removed x^{m} term with x -> x + ({c:.6g})*x^{j}")

    d = float(current[top])
    return a, d, total


def modulus_from_residue(s: TruncatedSeries, k: int) -> float:
    """d = -a^2 * Res(1/f), the residue oracle for the reduction"""
    a = float(s[k])
    return -a * a * residue_of_reciprocal(s, k)
