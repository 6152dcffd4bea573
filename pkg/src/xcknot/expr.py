"""Recursive-descent parser for scalar expressions.

Grammar (whitespace between tokens is ignored)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := atom ('^' integer)?
    atom   := integer | 'i' | identifier | '(' expr ')' | '-' factor

``i`` is the imaginary unit and therefore cannot be a parameter name.
"""

from __future__ import annotations

from dataclasses import dataclass

from .scalar import GaussianRational, Polynomial, Scalar

__all__ = [
    "ExprSyntaxError",
    "UnknownIdentifier",
    "ScalarExpr",
    "Num",
    "Imag",
    "Param",
    "Neg",
    "BinOp",
    "Pow",
    "parse_expr",
    "parse_scalar",
    "format_scalar",
]


class ExprSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos} in {text!r}")


class UnknownIdentifier(ExprSyntaxError):
    pass


class ScalarExpr:
    """Base class of expression AST nodes."""

    def evaluate(self) -> Scalar:
        raise NotImplementedError


@dataclass(frozen=True)
class Num(ScalarExpr):
    value: int

    def evaluate(self):
        return Scalar(self.value)


@dataclass(frozen=True)
class Imag(ScalarExpr):
    def evaluate(self):
        return Scalar(GaussianRational(0, 1))


@dataclass(frozen=True)
class Param(ScalarExpr):
    name: str

    def evaluate(self):
        return Scalar(Polynomial.var(self.name))


@dataclass(frozen=True)
class Neg(ScalarExpr):
    operand: ScalarExpr

    def evaluate(self):
        return -self.operand.evaluate()


@dataclass(frozen=True)
class BinOp(ScalarExpr):
    op: str
    left: ScalarExpr
    right: ScalarExpr

    def evaluate(self):
        a = self.left.evaluate()
        b = self.right.evaluate()
        if self.op == "+":
            return a + b
        if self.op == "-":
            return a - b
        if self.op == "*":
            return a * b
        return a / b


@dataclass(frozen=True)
class Pow(ScalarExpr):
    base: ScalarExpr
    exponent: int

    def evaluate(self):
        return self.base.evaluate() ** self.exponent


class _Parser:
    def __init__(self, text: str, params):
        self.text = text
        self.params = params
        self.tokens = list(self._tokenize(text))
        self.k = 0

    def _tokenize(self, text):
        n = len(text)
        pos = 0
        while pos < n:
            ch = text[pos]
            if ch.isspace():
                pos += 1
            elif ch.isdigit():
                start = pos
                while pos < n and text[pos].isdigit():
                    pos += 1
                yield ("int", text[start:pos], start)
            elif ch.isalpha() or ch == "_":
                start = pos
                while pos < n and (text[pos].isalnum() or text[pos] == "_"):
                    pos += 1
                yield ("name", text[start:pos], start)
            elif ch in "+-*/^()":
                yield (ch, ch, pos)
                pos += 1
            else:
                raise ExprSyntaxError(f"unexpected character {ch!r}", text, pos)
        yield ("end", "", n)

    def peek(self):
        return self.tokens[self.k]

    def take(self, kind=None):
        tok = self.tokens[self.k]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ExprSyntaxError(f"expected {kind!r}, found {what}", self.text, tok[2])
        self.k += 1
        return tok

    def parse(self) -> ScalarExpr:
        node = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ExprSyntaxError(f"unexpected {tok[1]!r}", self.text, tok[2])
        return node

    def expr(self):
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek()[0] in ("*", "/"):
            op = self.take()[0]
            node = BinOp(op, node, self.factor())
        return node

    def factor(self):
        node = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.peek()
            if tok[0] != "int":
                raise ExprSyntaxError(
                    "exponent must be a non-negative integer literal", self.text, tok[2]
                )
            self.take()
            node = Pow(node, int(tok[1]))
        return node

    def atom(self):
        kind, value, pos = self.peek()
        if kind == "int":
            self.take()
            return Num(int(value))
        if kind == "name":
            self.take()
            if value == "i":
                return Imag()
            if self.params is not None and value not in self.params:
                raise UnknownIdentifier(f"unknown identifier {value!r}", self.text, pos)
            return Param(value)
        if kind == "(":
            self.take()
            node = self.expr()
            self.take(")")
            return node
        if kind == "-":
            self.take()
            return Neg(self.factor())
        what = "end of input" if kind == "end" else repr(value)
        raise ExprSyntaxError(f"unexpected {what}", self.text, pos)


def parse_expr(text: str, params=None) -> ScalarExpr:
    """Parse ``text`` into an AST.  With ``params`` given, other identifiers are rejected."""
    params = None if params is None else set(params)
    return _Parser(text, params).parse()


def parse_scalar(text, params=None) -> Scalar:
    """Parse and evaluate; ints and Scalars pass through unchanged."""
    if isinstance(text, Scalar):
        return text
    if isinstance(text, (int, GaussianRational)):
        return Scalar(text)
    return parse_expr(str(text), params).evaluate()


def format_scalar(s: Scalar, order=None) -> str:
    """Render a scalar in the input grammar (re-parses to an equal value)."""
    return Scalar(s).to_str(order) if not isinstance(s, Scalar) else s.to_str(order)
