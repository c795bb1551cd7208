"""
Taylor expansion of expressions at the origin

Series are propagated bottom-up through the expression tree. Divisions
whose denominator vanishes at 0 are retried at a higher guard order so
removable singularities such as sin(x)/x expand correctly.
"""

from typing import Union
import logging

from expr import Expression, as_expression
from expr.nodes import BinOp, Const, Func, Neg, Node, Pow, Var, integer_exponent
from utils.errors import SingularSeriesError
from .elementary import apply_function, exp_series, log_series, real_power
from .series import TruncatedSeries

logger = logging.getLogger(__name__)

# cancellation threshold used when locating the valuation of a denominator
CANCEL_TOL = 1e-13
MAX_GUARD = 64


def _has_variable(node: Node) -> bool:
    if isinstance(node, Var):
        return True
    return any(_has_variable(c) for c in node.children())


class TaylorExpander:
    """Recursive series propagation over one expression tree"""

    def __init__(self, root: Node):
        self.root = root

    def expand(self, order: int) -> TruncatedSeries:
        return self._series(self.root, order)

    def _series(self, node: Node, n: int) -> TruncatedSeries:
        if isinstance(node, Const):
            return TruncatedSeries.constant(node.value, n)
        if isinstance(node, Var):
            return TruncatedSeries.identity(n)
        if isinstance(node, Neg):
            return -self._series(node.arg, n)
        if isinstance(node, Func):
            return apply_function(node.name, self._series(node.arg, n))
        if isinstance(node, BinOp):
            if node.sym == "/":
                return self._quotient(node.left, node.right, n)
            left = self._series(node.left, n)
            right = self._series(node.right, n)
            if node.sym == "+":
                return left.add(right)
            if node.sym == "-":
                return left.sub(right)
            return left.mul(right)
        if isinstance(node, Pow):
            return self._power(node, n)
        raise ValueError(f"No series rule for node {node!r}")

    def _quotient(self, num: Node, den: Node, n: int) -> TruncatedSeries:
        t = self._series(den, n)
        v = t.valuation(CANCEL_TOL)
        if v == 0:
            return self._series(num, n).divide(t)

        # denominator vanishes at 0: find its true valuation with extra terms
        guard = n
        while v > guard:
            guard = 2 * guard + 1
            if guard > MAX_GUARD + n:
                raise SingularSeriesError(f"Denominator {den.to_text()} vanishes to high order at 0")
            t = self._series(den, guard)
            v = t.valuation(CANCEL_TOL)
        deep = n + v
        t = self._series(den, deep)
        s = self._series(num, deep)
        threshold = CANCEL_TOL * max(s.scale_magnitude(), t.scale_magnitude())
        if any(abs(c) > threshold for c in s.coeffs[:v]):
            raise SingularSeriesError(f"Expression is singular at the origin: {num.to_text()} / {den.to_text()}")
        logger.debug(f"Removable singularity of order {v} in {den.to_text()}")
        return s.shift_down(v).divide(t.shift_down(v)).truncate(n)

    def _power(self, node: Pow, n: int) -> TruncatedSeries:
        if _has_variable(node.exponent):
            # u^v = exp(v log u)
            base = self._series(node.base, n)
            return exp_series(self._series(node.exponent, n).mul(log_series(base)))

        p = node.exponent.evaluate(0.0)
        m = integer_exponent(p)
        base = self._series(node.base, n)
        if m is not None:
            if m >= 0:
                return base.power(m)
            if base.valuation(CANCEL_TOL) > 0:
                raise SingularSeriesError(f"Negative power of a germ vanishing at 0: {node.to_text()}")
            return base.power(m)
        return real_power(base, p)


def taylor(e: Union[str, Expression], order: int) -> TruncatedSeries:
    """
    Maclaurin coefficients of an expression through the given order.

    Args:
        e: expression or its text
        order: truncation order N >= 1

    Returns:
        TruncatedSeries with N+1 coefficients

    Raises:
        SingularSeriesError: no Taylor expansion exists at 0 (1/x, log(x), sqrt(x))
    """
    if order < 1:
        raise ValueError("Truncation order must be at least 1")
    expression = as_expression(e)
    series = TaylorExpander(expression.root).expand(order)
    logger.debug(f"taylor({expression}, {order}) = {series.to_list()}")
    return series
