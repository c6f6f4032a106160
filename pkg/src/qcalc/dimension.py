"""Dimension vectors over the seven ISQ base quantities.

A dimension is stored as a fixed-length tuple of integer exponents indexed by
:class:`BaseQuantity`.  Dimension *expressions* (:class:`DimExpr`) are the
syntactic counterpart: trees that evaluate to a vector and can be rewritten
into a canonical ordered product by :func:`normalise`.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .errors import DimensionOverflowError, ParseError

__all__ = [
    "BaseQuantity",
    "DimVec",
    "DimExpr",
    "BaseSym",
    "One",
    "Times",
    "Inv",
    "Pow",
    "NDIM",
    "dv_one",
    "dv_base",
    "dv_mul",
    "dv_inv",
    "dv_div",
    "dv_pow",
    "mk_dimvec",
    "mk_dimvec_strict",
    "dv_to_list",
    "is_base_dim",
    "dimexpr_eval",
    "normalise",
    "parse_dimexpr",
    "render_dimexpr",
    "format_dim",
]

_INT_MIN = -(2**63)
_INT_MAX = 2**63 - 1


class BaseQuantity(enum.Enum):
    Length = 0
    Mass = 1
    Time = 2
    Current = 3
    Temperature = 4
    Amount = 5
    Intensity = 6

    @property
    def index(self) -> int:
        return self.value

    @property
    def symbol(self) -> str:
        return _SYMBOLS[self.value]

    def __lt__(self, other: BaseQuantity) -> bool:
        if not isinstance(other, BaseQuantity):
            return NotImplemented
        return self.value < other.value


NDIM = len(BaseQuantity)
_SYMBOLS = ("L", "M", "T", "I", "Theta", "N", "J")
_BY_SYMBOL = {s: q for s, q in zip(_SYMBOLS, BaseQuantity)}
_BY_SYMBOL["Θ"] = BaseQuantity.Temperature


def _checked(values: Iterable[int]) -> tuple[int, ...]:
    out = tuple(values)
    for v in out:
        if v < _INT_MIN or v > _INT_MAX:
            raise DimensionOverflowError(f"dimension exponent {v} exceeds 64-bit range")
    return out


@dataclass(frozen=True)
class DimVec:
    """Immutable exponent vector; ``exps[i]`` is the power of base quantity ``i``."""

    exps: tuple[int, ...]

    def __post_init__(self):
        if len(self.exps) != NDIM:
            raise ValueError(f"DimVec needs {NDIM} exponents, got {len(self.exps)}")
        if not all(isinstance(e, int) and not isinstance(e, bool) for e in self.exps):
            raise TypeError("DimVec exponents must be integers")
        _checked(self.exps)

    def __getitem__(self, q: BaseQuantity | int) -> int:
        if isinstance(q, BaseQuantity):
            return self.exps[q.value]
        return self.exps[q]

    def __iter__(self):
        return iter(self.exps)

    def __mul__(self, other: DimVec) -> DimVec:
        if not isinstance(other, DimVec):
            return NotImplemented
        return dv_mul(self, other)

    def __truediv__(self, other: DimVec) -> DimVec:
        if not isinstance(other, DimVec):
            return NotImplemented
        return dv_div(self, other)

    def __pow__(self, n: int) -> DimVec:
        return dv_pow(self, n)

    def inverse(self) -> DimVec:
        return dv_inv(self)

    @property
    def is_one(self) -> bool:
        return not any(self.exps)

    def __str__(self) -> str:
        return format_dim(self)

    def __repr__(self) -> str:
        return f"DimVec({list(self.exps)})"


_ONE = DimVec((0,) * NDIM)


def dv_one() -> DimVec:
    return _ONE


def dv_base(q: BaseQuantity) -> DimVec:
    exps = [0] * NDIM
    exps[q.value] = 1
    return DimVec(tuple(exps))


def dv_mul(x: DimVec, y: DimVec) -> DimVec:
    return DimVec(_checked(a + b for a, b in zip(x.exps, y.exps)))


def dv_inv(x: DimVec) -> DimVec:
    return DimVec(_checked(-a for a in x.exps))


def dv_div(x: DimVec, y: DimVec) -> DimVec:
    return dv_mul(x, dv_inv(y))


def dv_pow(x: DimVec, n: int) -> DimVec:
    return DimVec(_checked(n * a for a in x.exps))


def mk_dimvec(ds: Sequence[int]) -> DimVec:
    """List codec; any list not of length 7 maps to the null dimension."""
    ds = list(ds)
    if len(ds) != NDIM:
        return _ONE
    return DimVec(tuple(ds))


def mk_dimvec_strict(ds: Sequence[int]) -> DimVec:
    ds = list(ds)
    if len(ds) != NDIM:
        raise ValueError(f"expected {NDIM} exponents, got {len(ds)}")
    return DimVec(tuple(ds))


def dv_to_list(x: DimVec) -> list[int]:
    return list(x.exps)


def is_base_dim(x: DimVec) -> bool:
    return sorted(x.exps) == [0] * (NDIM - 1) + [1]


# --- dimension expressions -------------------------------------------------


@dataclass(frozen=True)
class BaseSym:
    q: BaseQuantity


@dataclass(frozen=True)
class One:
    pass


@dataclass(frozen=True)
class Times:
    left: DimExpr
    right: DimExpr


@dataclass(frozen=True)
class Inv:
    arg: DimExpr


@dataclass(frozen=True)
class Pow:
    base: DimExpr
    n: int


DimExpr = Union[BaseSym, One, Times, Inv, Pow]


def dimexpr_eval(e: DimExpr) -> DimVec:
    if isinstance(e, BaseSym):
        return dv_base(e.q)
    if isinstance(e, One):
        return _ONE
    if isinstance(e, Times):
        return dv_mul(dimexpr_eval(e.left), dimexpr_eval(e.right))
    if isinstance(e, Inv):
        return dv_inv(dimexpr_eval(e.arg))
    if isinstance(e, Pow):
        return dv_pow(dimexpr_eval(e.base), e.n)
    raise TypeError(f"not a dimension expression: {e!r}")


def _from_vec(v: DimVec) -> DimExpr:
    out: DimExpr | None = None
    for q in BaseQuantity:
        k = v[q]
        if k == 0:
            continue
        factor: DimExpr = BaseSym(q) if k == 1 else Pow(BaseSym(q), k)
        out = factor if out is None else Times(out, factor)
    return One() if out is None else out


def normalise(e: DimExpr | DimVec) -> DimExpr:
    """Canonical form: L^a*M^b*T^c*I^d*Theta^e*N^f*J^g, zero powers dropped."""
    v = e if isinstance(e, DimVec) else dimexpr_eval(e)
    return _from_vec(v)


# --- textual syntax ----------------------------------------------------------

_DIM_TOKEN = re.compile(
    r"\s*(?:(?P<int>[+-]?\d+)|(?P<sym>Theta|Θ|[LMTINJ])(?![A-Za-z_])|(?P<op>[*/^()·•]))"
)


def _lex_dim(text: str, offset: int) -> list[tuple[str, str, int]]:
    toks: list[tuple[str, str, int]] = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _DIM_TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r} in dimension", offset + start)
        kind = m.lastgroup
        tok_pos = offset + m.start(kind)
        val = m.group(kind)
        if val in ("·", "•"):
            val = "*"
        toks.append((kind, val, tok_pos))
        pos = m.end()
    toks.append(("eof", "", offset + len(text)))
    return toks


class _DimParser:
    def __init__(self, text: str, offset: int = 0):
        self.toks = _lex_dim(text, offset)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def parse(self) -> DimExpr:
        e = self.expr()
        kind, val, pos = self.peek()
        if kind != "eof":
            raise ParseError(f"unexpected {val!r} in dimension", pos)
        return e

    def expr(self) -> DimExpr:
        e = self.term()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            _, op, _ = self.take()
            rhs = self.term()
            e = Times(e, rhs) if op == "*" else Times(e, Inv(rhs))
        return e

    def term(self) -> DimExpr:
        e = self.atom()
        if self.peek()[1] == "^":
            self.take()
            kind, val, pos = self.take()
            paren = False
            if val == "(":
                paren = True
                kind, val, pos = self.take()
            if kind != "int":
                raise ParseError("malformed exponent: expected an integer", pos)
            if paren:
                k, v, p = self.take()
                if v != ")":
                    raise ParseError("expected ')' after exponent", p)
            e = Pow(e, int(val))
        return e

    def atom(self) -> DimExpr:
        kind, val, pos = self.take()
        if kind == "sym":
            return BaseSym(_BY_SYMBOL[val])
        if kind == "int":
            if int(val) != 1:
                raise ParseError("only '1' may appear as a number in a dimension", pos)
            return One()
        if val == "(":
            e = self.expr()
            k, v, p = self.take()
            if v != ")":
                raise ParseError("expected ')'", p)
            return e
        raise ParseError(f"unexpected {val or 'end of input'!r} in dimension", pos)


def parse_dimexpr(text: str, offset: int = 0) -> DimExpr:
    """Parse ``L*T^-1``-style syntax; ``offset`` shifts reported positions."""
    return _DimParser(text, offset).parse()


def _render(e: DimExpr, prec: int) -> str:
    # prec 0: top level, 1: right operand of '*', 2: base of '^'
    if isinstance(e, BaseSym):
        return e.q.symbol
    if isinstance(e, One):
        return "1"
    if isinstance(e, (Pow, Inv)):
        n = e.n if isinstance(e, Pow) else -1
        inner = e.base if isinstance(e, Pow) else e.arg
        s = f"{_render(inner, 2)}^{n}"
        return f"({s})" if prec == 2 else s
    if isinstance(e, Times):
        s = f"{_render(e.left, 0)}*{_render(e.right, 1)}"
        return f"({s})" if prec else s
    raise TypeError(f"not a dimension expression: {e!r}")


def render_dimexpr(e: DimExpr) -> str:
    return _render(e, 0)


def format_dim(v: DimVec) -> str:
    """Canonical text of a dimension vector, e.g. ``L^-2*T^4*I^2`` or ``1``."""
    return render_dimexpr(_from_vec(v))
