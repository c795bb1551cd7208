"""
Expression: parsed coefficient f of the vector field f(x)∂/∂x.
"""

from dataclasses import dataclass, field
from typing import Iterable, Union
import logging

import numpy as np

from .nodes import Const, Node
from .parser import parse_node

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Expression:
    """Immutable AST of a univariate smooth function of x"""

    root: Node
    text: str = field(default="", compare=False)

    def evaluate(self, x: float) -> float:
        """Double-precision value at x; raises DomainError outside the natural domain"""
        return self.root.evaluate(float(x))

    def __call__(self, x: float) -> float:
        return self.evaluate(x)

    def evaluate_many(self, xs: Iterable[float]) -> np.ndarray:
        """Evaluate on a grid; the first domain violation propagates"""
        return np.array([self.root.evaluate(float(x)) for x in xs], dtype=float)

    def derivative(self) -> "Expression":
        """Symbolic derivative with respect to x"""
        d = self.root.derivative()
        return Expression(d, d.to_text())

    def to_text(self) -> str:
        """Fully parenthesized text that re-parses to the same evaluator"""
        return self.root.to_text()

    @property
    def is_constant(self) -> bool:
        return isinstance(self.root, Const)

    def __str__(self):
        return self.text or self.to_text()


def parse(text: str) -> Expression:
    """
    Parse a field coefficient.

    Args:
        text: e.g. "x^2 + x^3", "sin(x)", "1/(1+x)"

    Returns:
        Expression with exactly one free variable x

    Raises:
        ParseError: empty input, syntax error (with offset), unknown identifier
    """
    root = parse_node(text)
    logger.debug(f"Parsed {text!r} -> {root.to_text()}")
    return Expression(root, text.strip())


def evaluate(e: Expression, x: float) -> float:
    return e.evaluate(x)


def differentiate(e: Expression) -> Expression:
    return e.derivative()


def as_expression(value: Union[str, Expression]) -> Expression:
    """Accept either text or an already parsed expression"""
    if isinstance(value, Expression):
        return value
    return parse(value)
