"""A small arithmetic expression language over the state index ``n``.

Used to specify per-state transition rates on the command line, e.g.
``--lambda "1" --mu "n"`` or ``--mu "0.5*n + 2"``.

Grammar (whitespace insignificant)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := atom ('^' unary)?          # right-associative, binds tightest
    atom    := NUMBER | 'n' | func '(' expr (',' expr)* ')' | '(' expr ')'
    NUMBER  := digits ['.' digits] [('e'|'E') ['+'|'-'] digits]

The only variable is ``n``.  Functions: ``exp``, ``log``, ``sqrt`` (one
argument), ``min``, ``max`` (two arguments).  There is no implicit
multiplication: ``2n`` is a syntax error, write ``2*n``.

Number literals are kept as text and widened to the evaluating context's
precision at eval time, so one parsed tree serves every precision.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

from . import arithmetic
from .arithmetic import Real, RealContext
from .errors import ExprEvalError, ExprSyntaxError

__all__ = [
    "RateExpr", "Number", "Variable", "Unary", "Binary", "Call",
    "parse", "eval_expr", "pretty",
]

_FUNCTIONS = {"exp": 1, "log": 1, "sqrt": 1, "min": 2, "max": 2}

_VARIABLE = "n"


@dataclass(frozen=True)
class Number:
    literal: str
    pos: int = field(compare=False, default=0)


@dataclass(frozen=True)
class Variable:
    name: str
    pos: int = field(compare=False, default=0)


@dataclass(frozen=True)
class Unary:
    op: str
    operand: "RateExpr"
    pos: int = field(compare=False, default=0)


@dataclass(frozen=True)
class Binary:
    op: str
    left: "RateExpr"
    right: "RateExpr"
    pos: int = field(compare=False, default=0)


@dataclass(frozen=True)
class Call:
    func: str
    args: tuple
    pos: int = field(compare=False, default=0)


RateExpr = Union[Number, Variable, Unary, Binary, Call]


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^(),])
    """,
    re.VERBOSE,
)


def _tokenize(text: str):
    tokens = []
    i = 0
    while i < len(text):
        m = _TOKEN_RE.match(text, i)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {text[i]!r}", i)
        if m.lastgroup != "ws":
            tokens.append((m.lastgroup, m.group(), i))
        i = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, value, pos = self.peek()
        if kind != "op" or value != op:
            shown = value if value else "end of input"
            raise ExprSyntaxError(f"expected {op!r}, found {shown!r}", pos)
        return self.advance()

    def parse(self) -> RateExpr:
        node = self.expr()
        kind, value, pos = self.peek()
        if kind != "end":
            raise ExprSyntaxError(f"unexpected trailing input {value!r}", pos)
        return node

    def expr(self) -> RateExpr:
        node = self.term()
        while True:
            kind, value, pos = self.peek()
            if kind == "op" and value in "+-":
                self.advance()
                node = Binary(value, node, self.term(), pos)
            else:
                return node

    def term(self) -> RateExpr:
        node = self.unary()
        while True:
            kind, value, pos = self.peek()
            if kind == "op" and value in "*/":
                self.advance()
                node = Binary(value, node, self.unary(), pos)
            else:
                return node

    def unary(self) -> RateExpr:
        kind, value, pos = self.peek()
        if kind == "op" and value == "-":
            self.advance()
            return Unary("-", self.unary(), pos)
        return self.power()

    def power(self) -> RateExpr:
        node = self.atom()
        kind, value, pos = self.peek()
        if kind == "op" and value == "^":
            self.advance()
            # exponent parses at unary level: 2^-3 works, 2^3^2 is right-assoc
            return Binary("^", node, self.unary(), pos)
        return node

    def atom(self) -> RateExpr:
        kind, value, pos = self.advance()
        if kind == "number":
            return Number(value, pos)
        if kind == "ident":
            nkind, nvalue, _ = self.peek()
            if nkind == "op" and nvalue == "(":
                return self.call(value, pos)
            if value != _VARIABLE:
                raise ExprSyntaxError(f"unknown identifier {value!r}", pos)
            return Variable(value, pos)
        if kind == "op" and value == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        shown = value if value else "end of input"
        raise ExprSyntaxError(f"unexpected {shown!r}", pos)

    def call(self, func: str, pos: int) -> RateExpr:
        if func not in _FUNCTIONS:
            raise ExprSyntaxError(f"unknown function {func!r}", pos)
        self.expect_op("(")
        args = [self.expr()]
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value == ",":
                self.advance()
                args.append(self.expr())
            else:
                break
        self.expect_op(")")
        arity = _FUNCTIONS[func]
        if len(args) != arity:
            raise ExprSyntaxError(
                f"{func} expects {arity} argument(s), got {len(args)}", pos
            )
        return Call(func, tuple(args), pos)


def parse(text: str) -> RateExpr:
    """Parse ``text`` into an expression tree.

    Raises :class:`ExprSyntaxError` (with byte offset) on malformed input,
    unknown identifiers, or wrong function arity.
    """
    return _Parser(text).parse()


def eval_expr(expr: RateExpr, n: int, ctx: RealContext) -> Real:
    """Evaluate ``expr`` at state index ``n`` under ``ctx``.

    Pure: identical (expr, n, ctx) triples give bit-identical results.
    Division by zero, log of a non-positive value, sqrt of a negative
    value, and overflow raise :class:`ExprEvalError` pointing at the
    offending node.
    """
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ValueError(f"state index must be a non-negative integer, got {n!r}")
    return _eval(expr, n, ctx)


def _eval(node: RateExpr, n: int, ctx: RealContext) -> Real:
    if isinstance(node, Number):
        try:
            return ctx.real(node.literal)
        except (ValueError, OverflowError) as exc:
            raise ExprEvalError(str(exc), node.pos) from exc
    if isinstance(node, Variable):
        return ctx.real(n)
    if isinstance(node, Unary):
        return -_eval(node.operand, n, ctx)
    if isinstance(node, Binary):
        left = _eval(node.left, n, ctx)
        right = _eval(node.right, n, ctx)
        try:
            if node.op == "+":
                return left + right
            if node.op == "-":
                return left - right
            if node.op == "*":
                return left * right
            if node.op == "/":
                return left / right
            if node.op == "^":
                return left ** right
        except ZeroDivisionError as exc:
            raise ExprEvalError("division by zero", node.pos) from exc
        except (ValueError, OverflowError) as exc:
            raise ExprEvalError(str(exc), node.pos) from exc
        raise AssertionError(f"unreachable operator {node.op!r}")
    if isinstance(node, Call):
        args = [_eval(a, n, ctx) for a in node.args]
        try:
            if node.func == "exp":
                return arithmetic.exp(args[0])
            if node.func == "log":
                return arithmetic.log(args[0])
            if node.func == "sqrt":
                return arithmetic.sqrt(args[0])
            if node.func == "min":
                return min(args)
            if node.func == "max":
                return max(args)
        except (ValueError, OverflowError) as exc:
            raise ExprEvalError(f"{node.func}: {exc}", node.pos) from exc
        raise AssertionError(f"unreachable function {node.func!r}")
    raise TypeError(f"not an expression node: {node!r}")


# precedence levels for the printer; atoms sit above every operator
_PREC_ADD, _PREC_MUL, _PREC_UNARY, _PREC_POW, _PREC_ATOM = 1, 2, 3, 4, 5


def pretty(expr: RateExpr) -> str:
    """Render a tree back to source text that reparses to an identical tree."""
    text, _ = _render(expr)
    return text


def _render(node: RateExpr):
    if isinstance(node, Number):
        return node.literal, _PREC_ATOM
    if isinstance(node, Variable):
        return node.name, _PREC_ATOM
    if isinstance(node, Call):
        args = ", ".join(_render(a)[0] for a in node.args)
        return f"{node.func}({args})", _PREC_ATOM
    if isinstance(node, Unary):
        text, prec = _render(node.operand)
        if prec < _PREC_UNARY:
            text = f"({text})"
        return f"-{text}", _PREC_UNARY
    if isinstance(node, Binary):
        lt, lp = _render(node.left)
        rt, rp = _render(node.right)
        if node.op in "+-":
            if lp < _PREC_ADD:
                lt = f"({lt})"
            if rp <= _PREC_ADD:
                rt = f"({rt})"
            return f"{lt} {node.op} {rt}", _PREC_ADD
        if node.op in "*/":
            if lp < _PREC_MUL:
                lt = f"({lt})"
            if rp <= _PREC_MUL:
                rt = f"({rt})"
            return f"{lt}{node.op}{rt}", _PREC_MUL
        # '^' is right-associative and binds tighter than unary minus
        if lp <= _PREC_POW:
            lt = f"({lt})"
        if rp < _PREC_UNARY:
            rt = f"({rt})"
        return f"{lt}^{rt}", _PREC_POW
    raise TypeError(f"not an expression node: {node!r}")
