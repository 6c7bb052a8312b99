"""A small expression language for virtual motives.

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := '-' unary | atom
    atom   := 'point' | 'lefschetz' | NAME | '(' expr ')'
            | 'rat' '(' list ',' list ',' INT ')'
            | ('dual') '(' expr ')'
            | ('twist' | 'shift' | 'push') '(' expr ',' INT ')'
    list   := '[' [rational (',' rational)*] ']'

``*`` is the tensor product and binds tighter than ``+``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Union

from . import polyq as P
from .errors import BaseMismatch, ExprSyntaxError, UnboundIdentifier
from .motive import (
    VirtualMotive,
    dual,
    from_rational,
    pushforward_scalars,
    shift,
    tate_twist,
)
from .series import RationalFunctionQ

# -- AST ----------------------------------------------------------------------


@dataclass(frozen=True)
class Point:
    pass


@dataclass(frozen=True)
class Lefschetz:
    pass


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Rat:
    num: tuple
    den: tuple
    q: int


@dataclass(frozen=True)
class BinOp:
    op: str  # '+', '-', '*'
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Neg:
    child: "Expr"


@dataclass(frozen=True)
class Unary:
    op: str  # dual, twist, shift, push
    child: "Expr"
    arg: int = 0


Expr = Union[Point, Lefschetz, Var, Rat, BinOp, Neg, Unary]

# -- lexer --------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")
_KEYWORDS = {"point", "lefschetz", "rat", "dual", "twist", "shift", "push"}


@dataclass(frozen=True)
class Token:
    kind: str  # INT, NAME, OP, EOF
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[Token]:
    out = []
    line_starts = [0] + [m.end() for m in re.finditer("\n", text)]

    def where(pos):
        line = max(i for i, s in enumerate(line_starts) if s <= pos)
        return line + 1, pos - line_starts[line] + 1

    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.end() == pos or not m.group(0).strip():
            break
        start = m.start(m.lastindex)
        kind = {1: "INT", 2: "NAME", 3: "OP"}[m.lastindex]
        tok = m.group(m.lastindex)
        if kind == "OP" and tok not in "+-*/(),[]":
            raise ExprSyntaxError(f"unexpected character {tok!r}", *where(start))
        out.append(Token(kind, tok, *where(start)))
        pos = m.end()
    out.append(Token("EOF", "", *where(len(text.rstrip()) if text.strip() else len(text))))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def fail(self, message, tok=None):
        tok = tok or self.tok
        found = "end of input" if tok.kind == "EOF" else repr(tok.text)
        raise ExprSyntaxError(f"{message}, found {found}", tok.line, tok.col)

    def take(self, text=None, kind=None) -> Token:
        t = self.tok
        if (text is not None and t.text != text) or (kind is not None and t.kind != kind):
            self.fail(f"expected {text or kind}")
        self.i += 1
        return t

    def at(self, text) -> bool:
        return self.tok.kind == "OP" and self.tok.text == text

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "EOF":
            self.fail("expected an operator or end of input")
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.at("+") or self.at("-"):
            op = self.take().text
            e = BinOp(op, e, self.term())
        return e

    def term(self) -> Expr:
        e = self.unary()
        while self.at("*"):
            self.take()
            e = BinOp("*", e, self.unary())
        return e

    def unary(self) -> Expr:
        if self.at("-"):
            self.take()
            return Neg(self.unary())
        return self.atom()

    def integer(self) -> int:
        sign = -1 if self.at("-") and self.take() else 1
        return sign * int(self.take(kind="INT").text)

    def rational(self) -> Fraction:
        n = self.integer()
        if self.at("/"):
            self.take()
            d = self.take(kind="INT")
            if int(d.text) == 0:
                self.fail("zero denominator", d)
            return Fraction(n, int(d.text))
        return Fraction(n)

    def coeff_list(self) -> tuple:
        self.take("[")
        items = []
        if not self.at("]"):
            items.append(self.rational())
            while self.at(","):
                self.take()
                items.append(self.rational())
        self.take("]")
        return tuple(items)

    def atom(self) -> Expr:
        t = self.tok
        if self.at("("):
            self.take()
            e = self.expr()
            self.take(")")
            return e
        if t.kind != "NAME":
            self.fail("expected an expression")
        self.take()
        if t.text == "point":
            return Point()
        if t.text == "lefschetz":
            return Lefschetz()
        if t.text == "rat":
            self.take("(")
            num = self.coeff_list()
            self.take(",")
            den = self.coeff_list()
            self.take(",")
            q = self.take(kind="INT")
            self.take(")")
            return Rat(num, den, int(q.text))
        if t.text == "dual":
            self.take("(")
            child = self.expr()
            self.take(")")
            return Unary("dual", child)
        if t.text in ("twist", "shift", "push"):
            self.take("(")
            child = self.expr()
            self.take(",")
            arg = self.integer()
            self.take(")")
            return Unary(t.text, child, arg)
        return Var(t.text)


def parse_expr(text: str) -> Expr:
    return _Parser(text).parse()


# -- elaboration -------------------------------------------------------------

Binding = Union[VirtualMotive, Callable[[int], VirtualMotive]]


def elaborate(e: Expr, q: int, env: Mapping[str, Binding] = {}) -> VirtualMotive:
    """Evaluate ``e`` to a class over F_q.

    Identifiers are looked up in ``env``; a binding is either a fixed class
    or a function of the base size (e.g. counting a variety over F_q).
    ``push(e, m)`` elaborates ``e`` over F_{q^m}.
    """
    if isinstance(e, Point):
        return VirtualMotive.point(q)
    if isinstance(e, Lefschetz):
        return VirtualMotive.lefschetz(q)
    if isinstance(e, Var):
        if e.name not in env:
            raise UnboundIdentifier(f"unbound identifier {e.name!r}")
        b = env[e.name]
        M = b if isinstance(b, VirtualMotive) else b(q)
        if M.q != q:
            raise BaseMismatch(f"{e.name!r} is a class over F_{M.q}, expected F_{q}")
        return M
    if isinstance(e, Rat):
        if e.q != q:
            raise BaseMismatch(f"rat(...) over F_{e.q} used where F_{q} is expected")
        return from_rational(RationalFunctionQ.make(e.num, e.den), q)
    if isinstance(e, Neg):
        return -elaborate(e.child, q, env)
    if isinstance(e, BinOp):
        a, b = elaborate(e.left, q, env), elaborate(e.right, q, env)
        return {"+": a.__add__, "-": a.__sub__, "*": a.__mul__}[e.op](b)
    if isinstance(e, Unary):
        if e.op == "push":
            if e.arg < 1:
                raise BaseMismatch("push needs a positive degree")
            return pushforward_scalars(elaborate(e.child, q**e.arg, env), e.arg)
        M = elaborate(e.child, q, env)
        if e.op == "dual":
            return dual(M)
        if e.op == "twist":
            return tate_twist(M, e.arg)
        return shift(M, e.arg)
    raise TypeError(f"not an expression: {e!r}")  # pragma: no cover


def _fmt(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def print_class(M: VirtualMotive) -> str:
    """Canonical ``rat([...], [...], q)`` form of a class."""
    Z = M.zeta()
    num = ", ".join(_fmt(c) for c in Z.num)
    den = ", ".join(_fmt(c) for c in Z.den)
    return f"rat([{num}], [{den}], {M.q})"


def print_expr(e: Expr) -> str:
    if isinstance(e, Point):
        return "point"
    if isinstance(e, Lefschetz):
        return "lefschetz"
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Rat):
        num = ", ".join(_fmt(c) for c in P.poly(e.num) or (Fraction(0),))
        den = ", ".join(_fmt(c) for c in P.poly(e.den) or (Fraction(0),))
        return f"rat([{num}], [{den}], {e.q})"
    if isinstance(e, Neg):
        return f"-({print_expr(e.child)})"
    if isinstance(e, BinOp):
        return f"({print_expr(e.left)} {e.op} {print_expr(e.right)})"
    if e.op == "dual":
        return f"dual({print_expr(e.child)})"
    return f"{e.op}({print_expr(e.child)}, {e.arg})"
