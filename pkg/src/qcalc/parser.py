"""Surface syntax for quantity expressions.

Grammar (whitespace-insensitive except inside ``p/q`` literals)::

    expr   := jux (('*' | '/') jux)*
    jux    := power power*                      # adjacency multiplies: "20 metre"
    power  := atom ('^' int)?
    atom   := number | 'pi' | unit | '(' expr ')'
            | 'to' '[' SYS ']' '(' expr ')'
            | 'dnorm' '[' dimexpr ']' '(' expr ')'
    unit   := [SYS ':'] [prefix] name

Numbers are decimals (``0.9144``, ``6.62607015e-34``) or rational literals
written without spaces (``1/12``); ``1 / 12`` is a division.  Adjacency binds
tighter than ``*`` and ``/``, so ``25 metre/second`` is ``(25 metre)/second``.
Unit names resolve against the registry of the default system unless
qualified, e.g. ``BIS:inch``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .dimension import DimExpr, normalise, parse_dimexpr, render_dimexpr
from .errors import ParseError, UnknownSystemError
from .quantity import Quantity, dnorm, q_div, q_inv, q_mul, q_one, q_pow, scale_q
from .scalar import PI, ExactScalar, s_div, s_inv, s_mul, s_pow
from .si import PrefixEntry, UnitTable, apply_prefix, prefix_table
from .systems import get_system, qmc

__all__ = [
    "Num",
    "Unit",
    "Mul",
    "Div",
    "Pow",
    "Convert",
    "Dnorm",
    "QExpr",
    "parse",
    "evaluate",
    "eval_ast",
    "render_ast",
    "resolve_unit",
]


@dataclass(frozen=True)
class Num:
    value: ExactScalar


@dataclass(frozen=True)
class Unit:
    name: str
    prefix: str | None
    system: str


@dataclass(frozen=True)
class Mul:
    left: QExpr
    right: QExpr


@dataclass(frozen=True)
class Div:
    left: QExpr
    right: QExpr


@dataclass(frozen=True)
class Pow:
    base: QExpr
    n: int


@dataclass(frozen=True)
class Convert:
    expr: QExpr
    system: str


@dataclass(frozen=True)
class Dnorm:
    expr: QExpr
    dim: DimExpr


QExpr = Union[Num, Unit, Mul, Div, Pow, Convert, Dnorm]


# --- lexer -------------------------------------------------------------------

_NUM = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_TOKEN = re.compile(
    rf"""
    (?P<ws>\s+)
  | (?P<num>{_NUM}(?:/{_NUM})?)
  | (?P<ident>(?:[^\W\d]|[°Ωµμπ])(?:[\w°Ωµμ]|-(?=[^\W\d]))*)
  | (?P<op>[*/^()\[\]:+\-·•×⋅÷])
    """,
    re.VERBOSE,
)
_OP_ALIASES = {"·": "*", "•": "*", "×": "*", "⋅": "*", "÷": "/"}


@dataclass(frozen=True)
class _Tok:
    kind: str  # num, ident, op, dim, eof
    text: str
    pos: int


def _lex(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        val = m.group(kind)
        if kind != "ws":
            if kind == "op":
                val = _OP_ALIASES.get(val, val)
            toks.append(_Tok(kind, val, pos))
        pos = m.end()
        # the bracketed argument of dnorm uses the dimension grammar
        if (
            kind == "op"
            and val == "["
            and len(toks) >= 2
            and toks[-2].kind == "ident"
            and toks[-2].text == "dnorm"
        ):
            end = text.find("]", pos)
            if end < 0:
                raise ParseError("unterminated dimension in dnorm[...]", pos, text)
            toks.append(_Tok("dim", text[pos:end], pos))
            pos = end
    toks.append(_Tok("eof", "", n))
    return toks


# --- unit resolution -----------------------------------------------------------


def _prefix_spellings() -> list[tuple[str, PrefixEntry]]:
    return sorted(prefix_table().items(), key=lambda kv: -len(kv[0]))


def resolve_unit(word: str, table: UnitTable, pos: int | None = None) -> tuple[str, str | None]:
    """Split ``word`` into ``(canonical unit name, prefix name or None)``.

    Exact names and aliases win over a prefix split; among splits the longest
    prefix is tried first.
    """
    entry = table.lookup(word)
    if entry is not None:
        return entry.name, None
    refused: str | None = None
    for spelling, pfx in _prefix_spellings():
        if not word.startswith(spelling) or len(word) == len(spelling):
            continue
        rest = word[len(spelling):]
        entry = table.lookup(rest)
        if entry is None:
            continue
        if entry.prefixable:
            return entry.name, pfx.name
        refused = refused or entry.name
    if refused is not None:
        raise ParseError(f"unit {refused!r} does not accept a prefix (in {word!r})", pos)
    for spelling, _ in _prefix_spellings():
        if word.startswith(spelling) and len(word) > len(spelling):
            rest = word[len(spelling):]
            for spelling2, _ in _prefix_spellings():
                if rest.startswith(spelling2) and table.lookup(rest[len(spelling2):]):
                    raise ParseError(f"at most one prefix is allowed: {word!r}", pos)
    raise ParseError(f"unknown unit {word!r} in system {table.system}", pos)


# --- parser --------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str, system: str):
        self.text = text
        self.system = system
        self.toks = _lex(text)
        self.i = 0

    def error(self, msg: str, tok: _Tok | None = None) -> ParseError:
        tok = tok or self.peek()
        return ParseError(msg, tok.pos, self.text)

    def peek(self, k: int = 0) -> _Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self) -> _Tok:
        tok = self.peek()
        self.i = min(self.i + 1, len(self.toks) - 1)
        return tok

    def expect(self, text: str) -> _Tok:
        tok = self.take()
        if tok.text != text or tok.kind not in ("op",):
            shown = tok.text or "end of input"
            raise ParseError(f"expected {text!r}, found {shown!r}", tok.pos, self.text)
        return tok

    def parse(self) -> QExpr:
        if self.peek().kind == "eof":
            raise self.error("empty expression")
        e = self.expr()
        tok = self.peek()
        if tok.kind != "eof":
            raise self.error(f"unexpected {tok.text!r}")
        return e

    def expr(self) -> QExpr:
        e = self.jux()
        while self.peek().kind == "op" and self.peek().text in ("*", "/"):
            op = self.take().text
            rhs = self.jux()
            e = Mul(e, rhs) if op == "*" else Div(e, rhs)
        return e

    def _starts_atom(self) -> bool:
        tok = self.peek()
        if tok.kind in ("num", "ident"):
            return True
        if tok.kind == "op" and tok.text == "(":
            return True
        return tok.kind == "op" and tok.text == "-" and self.peek(1).kind == "num"

    def jux(self) -> QExpr:
        e = self.power()
        while self._starts_atom():
            e = Mul(e, self.power())
        return e

    def power(self) -> QExpr:
        e = self.atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.take()
            e = Pow(e, self.exponent())
        return e

    def exponent(self) -> int:
        paren = self.peek().text == "(" and self.peek().kind == "op"
        if paren:
            self.take()
        sign = 1
        tok = self.peek()
        if tok.kind == "op" and tok.text in ("+", "-"):
            self.take()
            sign = -1 if tok.text == "-" else 1
        tok = self.take()
        if tok.kind != "num" or not tok.text.isdigit():
            shown = tok.text or "end of input"
            raise ParseError(
                f"malformed exponent: expected an integer, found {shown!r}", tok.pos, self.text
            )
        if paren:
            self.expect(")")
        return sign * int(tok.text)

    def atom(self) -> QExpr:
        tok = self.take()
        if tok.kind == "op" and tok.text == "-":
            num = self.take()
            return Num(-self._number(num))
        if tok.kind == "num":
            return Num(self._number(tok))
        if tok.kind == "op" and tok.text == "(":
            e = self.expr()
            self.expect(")")
            return e
        if tok.kind == "ident":
            if tok.text in ("pi", "π"):
                return Num(PI)
            if tok.text == "to" and self.peek().text == "[":
                return self._convert()
            if tok.text == "dnorm" and self.peek().text == "[":
                return self._dnorm()
            return self._unit(tok)
        shown = tok.text or "end of input"
        raise ParseError(f"unexpected {shown!r}", tok.pos, self.text)

    def _number(self, tok: _Tok) -> ExactScalar:
        try:
            return ExactScalar.of(tok.text)
        except ZeroDivisionError:
            raise ParseError(f"zero denominator in {tok.text!r}", tok.pos, self.text) from None

    def _system_name(self) -> str:
        tok = self.take()
        if tok.kind != "ident":
            raise ParseError("expected a unit system name", tok.pos, self.text)
        try:
            get_system(tok.text)
        except UnknownSystemError:
            raise ParseError(f"unknown unit system {tok.text!r}", tok.pos, self.text) from None
        return tok.text

    def _convert(self) -> QExpr:
        self.expect("[")
        sys = self._system_name()
        self.expect("]")
        self.expect("(")
        e = self.expr()
        self.expect(")")
        return Convert(e, sys)

    def _dnorm(self) -> QExpr:
        self.expect("[")
        tok = self.take()
        if tok.kind != "dim":
            raise ParseError("expected a dimension", tok.pos, self.text)
        try:
            target = parse_dimexpr(tok.text, tok.pos)
        except ParseError as exc:
            raise ParseError(exc.message, exc.pos, self.text) from None
        self.expect("]")
        self.expect("(")
        e = self.expr()
        self.expect(")")
        return Dnorm(e, normalise(target))

    def _unit(self, tok: _Tok) -> QExpr:
        sys = self.system
        word = tok.text
        if self.peek().kind == "op" and self.peek().text == ":":
            try:
                get_system(word)
            except UnknownSystemError:
                raise ParseError(f"unknown unit system {word!r}", tok.pos, self.text) from None
            self.take()
            sys = word
            tok = self.take()
            if tok.kind != "ident":
                raise ParseError("expected a unit name after ':'", tok.pos, self.text)
            word = tok.text
        table = get_system(sys).units
        try:
            name, pfx = resolve_unit(word, table, tok.pos)
        except ParseError as exc:
            raise ParseError(exc.message, exc.pos, self.text) from None
        return Unit(name, pfx, sys)


def parse(text: str, default_system: str = "SI") -> QExpr:
    try:
        get_system(default_system)
    except UnknownSystemError:
        raise ParseError(f"unknown unit system {default_system!r}") from None
    return _Parser(text, default_system).parse()


# --- evaluation ----------------------------------------------------------------

_Value = Union[ExactScalar, Quantity]


def _as_quantity(v: _Value, system: str) -> Quantity:
    return scale_q(v, q_one(system)) if isinstance(v, ExactScalar) else v


def _eval(e: QExpr, system: str) -> _Value:
    if isinstance(e, Num):
        return e.value
    if isinstance(e, Unit):
        value = get_system(e.system).units[e.name].value
        return apply_prefix(e.prefix, value) if e.prefix else value
    if isinstance(e, Mul):
        a, b = _eval(e.left, system), _eval(e.right, system)
        if isinstance(a, ExactScalar) and isinstance(b, ExactScalar):
            return s_mul(a, b)
        if isinstance(a, ExactScalar):
            return scale_q(a, b)
        if isinstance(b, ExactScalar):
            return scale_q(b, a)
        return q_mul(a, b)
    if isinstance(e, Div):
        a, b = _eval(e.left, system), _eval(e.right, system)
        if isinstance(a, ExactScalar) and isinstance(b, ExactScalar):
            return s_div(a, b)
        if isinstance(a, ExactScalar):
            return scale_q(a, q_inv(b))
        if isinstance(b, ExactScalar):
            return scale_q(s_inv(b), a)
        return q_div(a, b)
    if isinstance(e, Pow):
        v = _eval(e.base, system)
        return s_pow(v, e.n) if isinstance(v, ExactScalar) else q_pow(v, e.n)
    if isinstance(e, Convert):
        return qmc(_as_quantity(_eval(e.expr, system), system), e.system)
    if isinstance(e, Dnorm):
        return dnorm(_as_quantity(_eval(e.expr, system), system), e.dim)
    raise TypeError(f"not a quantity expression: {e!r}")


def eval_ast(ast: QExpr, system: str = "SI") -> Quantity:
    """Evaluate bottom-up; bare numbers become dimensionless in ``system``."""
    return _as_quantity(_eval(ast, system), system)


def evaluate(text: str, system: str = "SI") -> Quantity:
    return eval_ast(parse(text, system), system)


# --- rendering -----------------------------------------------------------------


def _render_num(v: ExactScalar) -> str:
    c = v.coeff
    lit = str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    if v.piexp == 0:
        return lit
    pi = "pi" if v.piexp == 1 else f"pi^{v.piexp}"
    return pi if c == 1 else f"({lit} * {pi})"


def _render(e: QExpr, ctx: str) -> str:
    # ctx: "top", "left" (left of * or /), "right" (right of * or /), "base" (of ^)
    if isinstance(e, Num):
        return _render_num(e.value)
    if isinstance(e, Unit):
        return f"{e.system}:{e.prefix or ''}{e.name}"
    if isinstance(e, (Mul, Div)):
        op = "*" if isinstance(e, Mul) else "/"
        s = f"{_render(e.left, 'left')} {op} {_render(e.right, 'right')}"
        return f"({s})" if ctx in ("right", "base") else s
    if isinstance(e, Pow):
        base = _render(e.base, "base")
        if isinstance(e.base, Pow) or (isinstance(e.base, Num) and "(" in base):
            base = f"({base})"
        return f"{base}^{e.n}"
    if isinstance(e, Convert):
        return f"to[{e.system}]({_render(e.expr, 'top')})"
    if isinstance(e, Dnorm):
        return f"dnorm[{render_dimexpr(e.dim)}]({_render(e.expr, 'top')})"
    raise TypeError(f"not a quantity expression: {e!r}")


def render_ast(e: QExpr) -> str:
    """Fully qualified text that parses back to an equal tree."""
    return _render(e, "top")
