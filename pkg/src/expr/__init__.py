"""
Expression front-end

Parses textual vector-field coefficients into an evaluable,
differentiable syntax tree.
"""

from .expression import Expression, parse, evaluate, differentiate, as_expression
from .nodes import BinOp, Const, Func, Neg, Node, Pow, Var, FUNCTIONS
from .parser import tokenize

__all__ = [
    'Expression',
    'parse',
    'evaluate',
    'differentiate',
    'as_expression',
    'tokenize',
    'Node',
    'Const',
    'Var',
    'Neg',
    'Func',
    'BinOp',
    'Pow',
    'FUNCTIONS',
]
