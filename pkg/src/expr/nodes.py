"""
Expression tree nodes

Immutable nodes for univariate field coefficients. Each node evaluates
itself, prints itself fully parenthesized, and differentiates itself.
"""

from dataclasses import dataclass
from typing import Callable, Dict
import math

from utils.errors import DomainError


def _check(value: float, node: "Node") -> float:
    if not math.isfinite(value):
        raise DomainError("Non-finite value", node.to_text())
    return value


def _fmt_number(value: float) -> str:
    text = repr(float(value))
    return f"(-{text[1:]})" if value < 0 else text


class Node:
    """Base class for expression nodes"""

    op = "node"

    def evaluate(self, x: float) -> float:
        raise NotImplementedError

    def to_text(self) -> str:
        raise NotImplementedError

    def derivative(self) -> "Node":
        raise NotImplementedError

    def children(self):
        return ()

    def __str__(self):
        return self.to_text()


@dataclass(frozen=True)
class Const(Node):
    value: float
    op = "const"

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise DomainError("Constants must be finite", repr(self.value))

    def evaluate(self, x: float) -> float:
        return self.value

    def to_text(self) -> str:
        return _fmt_number(self.value)

    def derivative(self) -> Node:
        return ZERO


@dataclass(frozen=True)
class Var(Node):
    op = "var"

    def evaluate(self, x: float) -> float:
        return float(x)

    def to_text(self) -> str:
        return "x"

    def derivative(self) -> Node:
        return ONE


ZERO = Const(0.0)
ONE = Const(1.0)


@dataclass(frozen=True)
class Neg(Node):
    arg: Node
    op = "neg"

    def evaluate(self, x: float) -> float:
        return -self.arg.evaluate(x)

    def to_text(self) -> str:
        return f"(-{self.arg.to_text()})"

    def derivative(self) -> Node:
        return neg(self.arg.derivative())

    def children(self):
        return (self.arg,)


def _safe_exp(v: float) -> float:
    try:
        return math.exp(v)
    except OverflowError:
        return math.inf


FUNCTIONS: Dict[str, Callable[[float], float]] = {
    "sin": math.sin,
    "cos": math.cos,
    "exp": _safe_exp,
    "log": math.log,
    "sqrt": math.sqrt,
    "atan": math.atan,
}


@dataclass(frozen=True)
class Func(Node):
    name: str
    arg: Node
    op = "func"

    def evaluate(self, x: float) -> float:
        u = self.arg.evaluate(x)
        if self.name == "log" and u <= 0:
            raise DomainError(f"log of non-positive argument {u!r}", self.to_text())
        if self.name == "sqrt" and u < 0:
            raise DomainError(f"sqrt of negative argument {u!r}", self.to_text())
        return _check(FUNCTIONS[self.name](u), self)

    def to_text(self) -> str:
        return f"{self.name}({self.arg.to_text()})"

    def derivative(self) -> Node:
        u = self.arg
        du = u.derivative()
        if self.name == "sin":
            outer = Func("cos", u)
        elif self.name == "cos":
            outer = neg(Func("sin", u))
        elif self.name == "exp":
            outer = self
        elif self.name == "log":
            return div(du, u)
        elif self.name == "sqrt":
            return div(du, mul(Const(2.0), self))
        elif self.name == "atan":
            return div(du, add(ONE, Pow(u, Const(2.0))))
        else:
            raise ValueError(f"Unknown function: {self.name}")
        return mul(outer, du)

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class BinOp(Node):
    sym: str
    left: Node
    right: Node
    op = "binop"

    def evaluate(self, x: float) -> float:
        a = self.left.evaluate(x)
        b = self.right.evaluate(x)
        if self.sym == "+":
            return _check(a + b, self)
        if self.sym == "-":
            return _check(a - b, self)
        if self.sym == "*":
            return _check(a * b, self)
        if self.sym == "/":
            if b == 0.0:
                raise DomainError("Division by zero", self.to_text())
            return _check(a / b, self)
        raise ValueError(f"Unknown operator: {self.sym}")

    def to_text(self) -> str:
        return f"({self.left.to_text()} {self.sym} {self.right.to_text()})"

    def derivative(self) -> Node:
        u, v = self.left, self.right
        du, dv = u.derivative(), v.derivative()
        if self.sym == "+":
            return add(du, dv)
        if self.sym == "-":
            return sub(du, dv)
        if self.sym == "*":
            return add(mul(du, v), mul(u, dv))
        # quotient rule
        return div(sub(mul(du, v), mul(u, dv)), Pow(v, Const(2.0)))

    def children(self):
        return (self.left, self.right)


def integer_exponent(value: float):
    """Return the exponent as int when it is integral, else None"""
    if float(value).is_integer() and abs(value) < 2 ** 31:
        return int(value)
    return None


@dataclass(frozen=True)
class Pow(Node):
    base: Node
    exponent: Node
    op = "pow"

    def evaluate(self, x: float) -> float:
        b = self.base.evaluate(x)
        p = self.exponent.evaluate(x)
        n = integer_exponent(p)
        if n is not None:
            if n < 0 and b == 0.0:
                raise DomainError("Negative power of zero", self.to_text())
            try:
                return _check(b ** n, self)
            except OverflowError:
                raise DomainError("Overflow", self.to_text())
        if b <= 0.0:
            raise DomainError(f"Non-integer power of non-positive base {b!r}", self.to_text())
        try:
            return _check(b ** p, self)
        except OverflowError:
            raise DomainError("Overflow", self.to_text())

    def to_text(self) -> str:
        return f"({self.base.to_text()} ^ {self.exponent.to_text()})"

    def derivative(self) -> Node:
        u, v = self.base, self.exponent
        du = u.derivative()
        if isinstance(v, Const):
            if v.value == 0.0:
                return ZERO
            return mul(mul(v, Pow(u, Const(v.value - 1.0))), du)
        dv = v.derivative()
        # d(u^v) = u^v * (v' log u + v u'/u)
        return mul(self, add(mul(dv, Func("log", u)), div(mul(v, du), u)))

    def children(self):
        return (self.base, self.exponent)


def _is(node: Node, value: float) -> bool:
    return isinstance(node, Const) and node.value == value


def add(a: Node, b: Node) -> Node:
    if _is(a, 0.0):
        return b
    if _is(b, 0.0):
        return a
    return BinOp("+", a, b)


def sub(a: Node, b: Node) -> Node:
    if _is(b, 0.0):
        return a
    if _is(a, 0.0):
        return neg(b)
    return BinOp("-", a, b)


def mul(a: Node, b: Node) -> Node:
    if _is(a, 0.0) or _is(b, 0.0):
        return ZERO
    if _is(a, 1.0):
        return b
    if _is(b, 1.0):
        return a
    return BinOp("*", a, b)


def div(a: Node, b: Node) -> Node:
    if _is(a, 0.0):
        return ZERO
    if _is(b, 1.0):
        return a
    return BinOp("/", a, b)


def neg(a: Node) -> Node:
    if isinstance(a, Const):
        return Const(-a.value)
    if isinstance(a, Neg):
        return a.arg
    return Neg(a)
