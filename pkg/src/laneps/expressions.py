"""Small arithmetic expression language for user-defined problem data.

Grammar: identifiers drawn from the declared variable list (x, or x and y),
the constant pi, numeric literals, binary + - * / ^ (right-associative power),
unary minus, and the functions sin cos tan exp log sqrt sinh cosh abs pow.
Expressions compile to closure trees evaluated with numpy, so they vectorize
over arrays; parse errors carry the offending column and evaluation-time
domain violations report the offending abscissa.  No Python eval is involved.
"""
from __future__ import annotations

import re

import numpy as np

__all__ = ["Expression", "ExpressionError", "DomainEvalError", "parse_expression"]


class ExpressionError(ValueError):
    """Parse-time failure, with the 1-based column of the offending token."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (column {position + 1})")
        self.position = position


class DomainEvalError(ArithmeticError):
    """Evaluation left the function's domain (log of nonpositive, etc.)."""


_NUMBER = re.compile(r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")
_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")
_OPS = set("+-*/^(),")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch in _OPS:
            tokens.append(("op", ch, pos))
            pos += 1
            continue
        m = _NUMBER.match(text, pos)
        if m:
            tokens.append(("num", m.group(), pos))
            pos = m.end()
            continue
        m = _NAME.match(text, pos)
        if m:
            tokens.append(("name", m.group(), pos))
            pos = m.end()
            continue
        raise ExpressionError(f"unexpected character {ch!r}", pos)
    tokens.append(("end", "", len(text)))
    return tokens


def _domain_check(label: str, bad, ctx: dict) -> None:
    bad = np.asarray(bad)
    if not bad.any():
        return
    detail = ""
    x = ctx.get("x")
    if x is not None:
        try:
            x_grid = np.broadcast_to(np.asarray(x, dtype=float), bad.shape)
            where = np.unravel_index(int(np.argmax(bad)), bad.shape) if bad.shape else ()
            detail = f" at x = {float(x_grid[where]):.17g}"
        except ValueError:
            pass
    raise DomainEvalError(label + detail)


def _fn_log(arg, ctx):
    _domain_check("log of a nonpositive value", arg <= 0, ctx)
    return np.log(arg)


def _fn_sqrt(arg, ctx):
    _domain_check("square root of a negative value", arg < 0, ctx)
    return np.sqrt(arg)


def _power(base, exponent, ctx):
    exponent = np.asarray(exponent)
    fractional = exponent != np.floor(exponent)
    _domain_check("fractional power of a negative value", (np.asarray(base) < 0) & fractional, ctx)
    _domain_check("zero raised to a negative power", (np.asarray(base) == 0) & (exponent < 0), ctx)
    return np.power(base, exponent)


def _divide(num, den, ctx):
    _domain_check("division by zero", np.asarray(den) == 0, ctx)
    return num / den


_UNARY_FUNCTIONS = {
    "sin": np.sin,
    "cos": np.cos,
    "tan": np.tan,
    "exp": np.exp,
    "sinh": np.sinh,
    "cosh": np.cosh,
    "abs": np.abs,
}
_CHECKED_FUNCTIONS = {"log": _fn_log, "sqrt": _fn_sqrt}
_FUNCTION_NAMES = set(_UNARY_FUNCTIONS) | set(_CHECKED_FUNCTIONS) | {"pow"}


class _Parser:
    """Recursive descent over the token stream, emitting closure nodes."""

    def __init__(self, text: str, variables: tuple[str, ...]):
        self.text = text
        self.variables = variables
        self.tokens = _tokenize(text)
        self.index = 0

    def peek(self):
        return self.tokens[self.index]

    def advance(self):
        token = self.tokens[self.index]
        self.index += 1
        return token

    def expect_op(self, op: str):
        kind, value, pos = self.peek()
        if kind != "op" or value != op:
            shown = value if kind != "end" else "end of expression"
            raise ExpressionError(f"expected {op!r}, found {shown}", pos)
        return self.advance()

    def parse(self):
        node = self.expression()
        kind, value, pos = self.peek()
        if kind != "end":
            raise ExpressionError(f"unexpected trailing input {value!r}", pos)
        return node

    def expression(self):
        node = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.advance()[1]
            rhs = self.term()
            lhs = node
            if op == "+":
                node = lambda ctx, l=lhs, r=rhs: l(ctx) + r(ctx)
            else:
                node = lambda ctx, l=lhs, r=rhs: l(ctx) - r(ctx)
        return node

    def term(self):
        node = self.unary()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            op = self.advance()[1]
            rhs = self.unary()
            lhs = node
            if op == "*":
                node = lambda ctx, l=lhs, r=rhs: l(ctx) * r(ctx)
            else:
                node = lambda ctx, l=lhs, r=rhs: _divide(l(ctx), r(ctx), ctx)
        return node

    def unary(self):
        kind, value, _ = self.peek()
        if kind == "op" and value in "+-":
            self.advance()
            inner = self.unary()
            if value == "-":
                return lambda ctx, f=inner: -f(ctx)
            return inner
        return self.power()

    def power(self):
        base = self.atom()
        kind, value, _ = self.peek()
        if kind == "op" and value == "^":
            self.advance()
            exponent = self.unary()
            return lambda ctx, b=base, e=exponent: _power(b(ctx), e(ctx), ctx)
        return base

    def atom(self):
        kind, value, pos = self.advance()
        if kind == "num":
            constant = float(value)
            return lambda ctx, v=constant: v
        if kind == "op" and value == "(":
            node = self.expression()
            self.expect_op(")")
            return node
        if kind == "name":
            if value == "pi":
                return lambda ctx: np.pi
            if value in self.variables:
                return lambda ctx, name=value: ctx[name]
            if value in _FUNCTION_NAMES:
                return self.call(value, pos)
            raise ExpressionError(f"unknown identifier {value!r}", pos)
        shown = value if kind != "end" else "end of expression"
        raise ExpressionError(f"expected a value, found {shown}", pos)

    def call(self, name: str, pos: int):
        self.expect_op("(")
        args = [self.expression()]
        while self.peek()[:2] == ("op", ","):
            self.advance()
            args.append(self.expression())
        self.expect_op(")")
        if name == "pow":
            if len(args) != 2:
                raise ExpressionError("pow expects exactly 2 arguments", pos)
            lhs, rhs = args
            return lambda ctx: _power(lhs(ctx), rhs(ctx), ctx)
        if len(args) != 1:
            raise ExpressionError(f"{name} expects exactly 1 argument", pos)
        (arg,) = args
        if name in _CHECKED_FUNCTIONS:
            return lambda ctx, f=_CHECKED_FUNCTIONS[name], a=arg: f(a(ctx), ctx)
        return lambda ctx, f=_UNARY_FUNCTIONS[name], a=arg: f(a(ctx))


class Expression:
    """A compiled expression callable on its declared variables."""

    def __init__(self, text: str, variables: tuple[str, ...]):
        self.text = text
        self.variables = variables
        self._root = _Parser(text, variables).parse()

    def __call__(self, *values):
        if len(values) != len(self.variables):
            raise TypeError(
                f"expression over {self.variables} takes {len(self.variables)} "
                f"argument(s), got {len(values)}"
            )
        ctx = {name: np.asarray(v, dtype=float) for name, v in zip(self.variables, values)}
        with np.errstate(all="ignore"):
            return self._root(ctx)

    def __repr__(self):
        return f"Expression({self.text!r}, variables={self.variables})"


def parse_expression(text: str, variables: tuple[str, ...] = ("x",)) -> Expression:
    """Compile an expression over the given variables; raises ExpressionError."""
    return Expression(text, variables)
