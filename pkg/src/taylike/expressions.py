"""Parser and evaluator for single-variable expressions in x.

Grammar (whitespace-insensitive, case-sensitive names)::

    expr   = term { ("+" | "-") term }
    term   = unary { ("*" | "/") unary }
    unary  = "-" unary | power
    power  = atom [ "^" unary ]            # right-associative
    atom   = NUMBER | "x" | FUNC "(" expr ")" | "(" expr ")"
    FUNC   = "sin" | "cos" | "exp" | "log" | "sqrt" | "tanh"

"^" binds tighter than unary minus, so -x^2 is -(x^2) while 2^-3 is
2^(-3).  Evaluation propagates (value, f', f'') triples, so one pass
yields the function and both derivatives.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from . import autodiff as ad
from .autodiff import DiffTriple
from .errors import ExprSyntaxError, NonFiniteEvaluation, UnknownIdentifier
from .scheme import CurvatureBounds, Interval

FUNCTION_NAMES = ("sin", "cos", "exp", "log", "sqrt", "tanh")


@dataclass(frozen=True)
class Const:
    value: float


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class BinOp:
    op: str
    lhs: object
    rhs: object


@dataclass(frozen=True)
class Call:
    name: str
    arg: object


ExprAst = Const | Var | Neg | BinOp | Call

_TOKEN_RE = re.compile(
    r"(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()])"
)


def _byte_offset(src: str, pos: int) -> int:
    return len(src[:pos].encode("utf-8"))


def _tokenize(src: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(src):
        if src[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(src, pos)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {src[pos]!r}", _byte_offset(src, pos))
        kind = m.lastgroup
        tokens.append((kind, m.group(), _byte_offset(src, pos)))
        pos = m.end()
    tokens.append(("eof", "", _byte_offset(src, len(src))))
    return tokens


class _Parser:
    def __init__(self, src: str):
        self.tokens = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, text, offset = self.peek()
        if kind != "op" or text != op:
            raise ExprSyntaxError(f"expected '{op}'", offset)
        self.advance()

    def parse_expr(self):
        node = self.parse_term()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "+-":
                self.advance()
                node = BinOp(text, node, self.parse_term())
            else:
                return node

    def parse_term(self):
        node = self.parse_unary()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "*/":
                self.advance()
                node = BinOp(text, node, self.parse_unary())
            else:
                return node

    def parse_unary(self):
        kind, text, _ = self.peek()
        if kind == "op" and text == "-":
            self.advance()
            return Neg(self.parse_unary())
        return self.parse_power()

    def parse_power(self):
        node = self.parse_atom()
        kind, text, _ = self.peek()
        if kind == "op" and text == "^":
            self.advance()
            # the exponent may itself carry a unary minus or another power
            return BinOp("^", node, self.parse_unary())
        return node

    def parse_atom(self):
        kind, text, offset = self.advance()
        if kind == "num":
            return Const(float(text))
        if kind == "name":
            if text == "x":
                return Var()
            if text in FUNCTION_NAMES:
                self.expect_op("(")
                arg = self.parse_expr()
                self.expect_op(")")
                return Call(text, arg)
            raise UnknownIdentifier(text, offset)
        if kind == "op" and text == "(":
            node = self.parse_expr()
            self.expect_op(")")
            return node
        raise ExprSyntaxError(f"expected a number, 'x', a function call, or '('", offset)


def parse(src: str) -> ExprAst:
    """Parse expression text into an AST."""
    parser = _Parser(src)
    node = parser.parse_expr()
    kind, text, offset = parser.peek()
    if kind != "eof":
        raise ExprSyntaxError(f"unexpected trailing input {text!r}", offset)
    return node


_CALLS = {
    "sin": ad.sin,
    "cos": ad.cos,
    "exp": ad.exp,
    "log": ad.log,
    "sqrt": ad.sqrt,
    "tanh": ad.tanh,
}


def _eval(node, x: DiffTriple) -> DiffTriple:
    match node:
        case Const(value):
            return ad.constant(value)
        case Var():
            return x
        case Neg(operand):
            return -_eval(operand, x)
        case BinOp("+", lhs, rhs):
            return _eval(lhs, x) + _eval(rhs, x)
        case BinOp("-", lhs, rhs):
            return _eval(lhs, x) - _eval(rhs, x)
        case BinOp("*", lhs, rhs):
            return _eval(lhs, x) * _eval(rhs, x)
        case BinOp("/", lhs, rhs):
            return _eval(lhs, x) / _eval(rhs, x)
        case BinOp("^", lhs, rhs):
            return ad.pow(_eval(lhs, x), _eval(rhs, x))
        case Call(name, arg):
            return _CALLS[name](_eval(arg, x))
        case _:
            raise TypeError(f"not an AST node: {node!r}")


def eval_d2(ast: ExprAst, x: float) -> DiffTriple:
    """Evaluate the expression and its first two derivatives at x."""
    out = _eval(ast, ad.seed(x))
    if not out.is_finite:
        raise NonFiniteEvaluation(f"non-finite result at x = {x}: {out}")
    return out


def as_function(ast: ExprAst):
    """Wrap an AST as a plain ``x -> DiffTriple`` callable."""
    return lambda x: eval_d2(ast, x)


_PREC_ADD, _PREC_MUL, _PREC_NEG, _PREC_POW, _PREC_ATOM = 1, 2, 3, 4, 5


def _render(node, parent_prec: int) -> str:
    match node:
        case Const(value):
            text, prec = repr(value), _PREC_ATOM
        case Var():
            text, prec = "x", _PREC_ATOM
        case Neg(operand):
            text, prec = "-" + _render(operand, _PREC_NEG), _PREC_NEG
        case BinOp("^", lhs, rhs):
            text, prec = _render(lhs, _PREC_ATOM) + "^" + _render(rhs, _PREC_NEG), _PREC_POW
        case BinOp(op, lhs, rhs):
            prec = _PREC_ADD if op in "+-" else _PREC_MUL
            text = f"{_render(lhs, prec)} {op} {_render(rhs, prec + 1)}"
        case Call(name, arg):
            text, prec = f"{name}({_render(arg, 0)})", _PREC_ATOM
        case _:
            raise TypeError(f"not an AST node: {node!r}")
    return f"({text})" if prec < parent_prec else text


def to_source(ast: ExprAst) -> str:
    """Render an AST back to expression text.

    Reparsing the output yields a structurally equal AST, provided all
    constants are non-negative (parser output always satisfies this: a
    leading minus sign becomes a Neg node, never a negative constant).
    """
    return _render(ast, 0)


def _golden_extremum(fn, lo: float, hi: float, evals: int, sign: float) -> float:
    """Best sign*fn value over a golden-section scan of [lo, hi].

    Returns the extreme *observed* value (min for sign=+1, max for
    sign=-1), so the result can only sharpen a grid estimate.
    """
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = sign * fn(c), sign * fn(d)
    best = min(fc, fd)
    for _ in range(evals - 2):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = sign * fn(c)
            best = min(best, fc)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = sign * fn(d)
            best = min(best, fd)
    return sign * best


def estimate_curvature_bounds(ast: ExprAst, iv: Interval, samples: int) -> CurvatureBounds:
    """Sampled (heuristic, not rigorous) bounds on f'' over the interval.

    Evaluates f'' on an equally spaced grid including both endpoints, then
    sharpens each extreme with one golden-section pass (31 extra
    evaluations) bracketed by the neighbours of the best grid point.
    """
    if samples < 2:
        raise ValueError(f"need samples >= 2, got {samples}")
    step = iv.width / (samples - 1)
    xs = [iv.a + i * step for i in range(samples)]
    xs[0], xs[-1] = iv.a, iv.b
    d2 = lambda x: eval_d2(ast, x).d2
    values = [d2(x) for x in xs]

    i_min = min(range(samples), key=lambda i: values[i])
    i_max = max(range(samples), key=lambda i: values[i])
    lo_min, hi_min = xs[max(i_min - 1, 0)], xs[min(i_min + 1, samples - 1)]
    lo_max, hi_max = xs[max(i_max - 1, 0)], xs[min(i_max + 1, samples - 1)]
    m2 = min(values[i_min], _golden_extremum(d2, lo_min, hi_min, 31, +1.0))
    M2 = max(values[i_max], _golden_extremum(d2, lo_max, hi_max, 31, -1.0))
    return CurvatureBounds(m2=m2, M2=M2)
