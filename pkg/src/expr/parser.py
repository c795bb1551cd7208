"""
Recursive-descent parser for field coefficients

Grammar:
    expr   := term (('+'|'-') term)*
    term   := unary (('*'|'/') unary)*
    unary  := '-' unary | factor
    factor := base ('^' unary)?
    base   := number | 'x' | func '(' expr ')' | '(' expr ')'

Unary minus binds looser than '^', so "-x^2" reads as -(x^2).
There is no implicit multiplication: "2x" is rejected.
"""

from dataclasses import dataclass
from typing import List, Optional
import math
import re

from utils.errors import ParseError
from .nodes import BinOp, Const, FUNCTIONS, Func, Neg, Node, Pow, Var

TOKEN_PATTERN = re.compile(
    r"\s*(?:"
    r"(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)"
    r"|(?P<ident>[A-Za-z_]\w*)"
    r"|(?P<op>[-+*/^()])"
    r")"
)


@dataclass(frozen=True)
class Token:
    kind: str  # number, ident, op, end
    text: str
    position: int


def tokenize(text: str) -> List[Token]:
    """Split text into tokens, recording character offsets"""
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = TOKEN_PATTERN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"Unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append(Token(kind, m.group(kind), start))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class Parser:
    """Single-use recursive-descent parser over a token list"""

    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def _advance(self) -> Token:
        tok = self.current
        self.index += 1
        return tok

    def _accept(self, symbol: str) -> Optional[Token]:
        if self.current.kind == "op" and self.current.text == symbol:
            return self._advance()
        return None

    def _expect(self, symbol: str) -> Token:
        tok = self._accept(symbol)
        if tok is None:
            raise self._error(f"Expected '{symbol}'")
        return tok

    def _error(self, message: str) -> ParseError:
        tok = self.current
        if tok.kind == "end":
            return ParseError(f"{message}: unexpected end of input", tok.position, self.text)
        return ParseError(f"{message}: unexpected token {tok.text!r}", tok.position, self.text)

    def parse(self) -> Node:
        if self.current.kind == "end":
            raise ParseError("Empty input", 0, self.text)
        node = self.expr()
        if self.current.kind != "end":
            if self.current.kind in ("ident", "number") or self.current.text == "(":
                raise ParseError(
                    f"Unexpected token {self.current.text!r} (implicit multiplication is not supported)",
                    self.current.position, self.text,
                )
            raise self._error("Trailing input")
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.current.kind == "op" and self.current.text in "+-":
            sym = self._advance().text
            node = BinOp(sym, node, self.term())
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.current.kind == "op" and self.current.text in "*/":
            sym = self._advance().text
            node = BinOp(sym, node, self.unary())
        return node

    def unary(self) -> Node:
        if self._accept("-"):
            return Neg(self.unary())
        return self.factor()

    def factor(self) -> Node:
        node = self.base()
        if self._accept("^"):
            node = Pow(node, self.unary())
        return node

    def base(self) -> Node:
        tok = self.current
        if tok.kind == "number":
            self._advance()
            value = float(tok.text)
            if not math.isfinite(value):
                raise ParseError(f"Constant {tok.text} out of range", tok.position, self.text)
            return Const(value)
        if tok.kind == "ident":
            self._advance()
            if tok.text == "x":
                return Var()
            if tok.text in FUNCTIONS:
                self._expect("(")
                arg = self.expr()
                self._expect(")")
                return Func(tok.text, arg)
            raise ParseError(f"Unknown identifier {tok.text!r}", tok.position, self.text)
        if self._accept("("):
            node = self.expr()
            self._expect(")")
            return node
        raise self._error("Expected a number, 'x', a function or '('")


def parse_node(text: str) -> Node:
    """Parse text into a bare node tree"""
    if text is None or not text.strip():
        raise ParseError("Empty input", 0, text or "")
    return Parser(text).parse()
