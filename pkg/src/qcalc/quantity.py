"""Quantities: an exact magnitude, a dimension vector and a unit-system tag.

Every operation that combines two quantities requires them to share a unit
system; mixing systems raises :class:`~qcalc.errors.SystemMismatchError`
rather than silently producing a value in neither.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

from .dimension import (
    BaseQuantity,
    DimExpr,
    DimVec,
    dimexpr_eval,
    dv_base,
    dv_div,
    dv_inv,
    dv_mul,
    dv_one,
    dv_pow,
    format_dim,
    is_base_dim,
)
from .errors import DimensionMismatchError, SystemMismatchError, UnknownSystemError
from .scalar import (
    ONE,
    ZERO,
    ExactScalar,
    ScalarLike,
    render,
    render_exact,
    s_add,
    s_cmp,
    s_div,
    s_inv,
    s_mul,
    s_pow,
    s_sub,
)

__all__ = [
    "Quantity",
    "register_system_id",
    "require_system",
    "registered_system_ids",
    "q_zero",
    "q_one",
    "q_mul",
    "q_inv",
    "q_div",
    "q_add",
    "q_sub",
    "q_neg",
    "q_pow",
    "scale_q",
    "q_equiv",
    "q_less_eq",
    "dnorm",
    "mag",
    "dim",
    "system",
    "bunit",
    "is_base_unit",
]

_system_lock = threading.Lock()
_system_ids: frozenset[str] = frozenset({"SI"})


def register_system_id(sys: str) -> None:
    global _system_ids
    if not sys or not sys.isidentifier():
        raise ValueError(f"invalid system identifier {sys!r}")
    with _system_lock:
        _system_ids = _system_ids | {sys}


def registered_system_ids() -> frozenset[str]:
    return _system_ids


def require_system(sys: str) -> str:
    if sys not in _system_ids:
        raise UnknownSystemError(f"unknown unit system {sys!r}")
    return sys


@dataclass(frozen=True)
class Quantity:
    mag: ExactScalar
    dim: DimVec
    system: str = "SI"

    def __post_init__(self):
        if not isinstance(self.mag, ExactScalar):
            object.__setattr__(self, "mag", ExactScalar.of(self.mag))
        if not isinstance(self.dim, DimVec):
            raise TypeError("dim must be a DimVec")
        require_system(self.system)

    def __mul__(self, other):
        if isinstance(other, Quantity):
            return q_mul(self, other)
        try:
            return scale_q(other, self)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return scale_q(other, self)
        except TypeError:
            return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Quantity):
            return q_div(self, other)
        try:
            return scale_q(s_inv(ExactScalar.of(other)), self)
        except TypeError:
            return NotImplemented

    def __rtruediv__(self, other):
        try:
            return scale_q(other, q_inv(self))
        except TypeError:
            return NotImplemented

    def __pow__(self, n: int):
        return q_pow(self, n)

    def __add__(self, other):
        if not isinstance(other, Quantity):
            return NotImplemented
        return q_add(self, other)

    def __sub__(self, other):
        if not isinstance(other, Quantity):
            return NotImplemented
        return q_sub(self, other)

    def __neg__(self):
        return q_neg(self)

    def inverse(self) -> Quantity:
        return q_inv(self)

    def equiv(self, other: Quantity) -> bool:
        return q_equiv(self, other)

    def less_eq(self, other: Quantity) -> bool:
        return q_less_eq(self, other)

    def __str__(self) -> str:
        d = "" if self.dim.is_one else f" [{format_dim(self.dim)}]"
        return f"{render(self.mag)}{d} ({self.system})"

    def __repr__(self) -> str:
        return f"Quantity({render_exact(self.mag)}, {format_dim(self.dim)}, {self.system})"


def _same_system(x: Quantity, y: Quantity, what: str) -> str:
    if x.system != y.system:
        raise SystemMismatchError(
            f"cannot {what} quantities from different unit systems ({x.system} and {y.system})"
        )
    return x.system


def q_zero(sys: str = "SI") -> Quantity:
    return Quantity(ZERO, dv_one(), require_system(sys))


def q_one(sys: str = "SI") -> Quantity:
    return Quantity(ONE, dv_one(), require_system(sys))


def q_mul(x: Quantity, y: Quantity) -> Quantity:
    sys = _same_system(x, y, "multiply")
    return Quantity(s_mul(x.mag, y.mag), dv_mul(x.dim, y.dim), sys)


def q_inv(x: Quantity) -> Quantity:
    return Quantity(s_inv(x.mag), dv_inv(x.dim), x.system)


def q_div(x: Quantity, y: Quantity) -> Quantity:
    sys = _same_system(x, y, "divide")
    return Quantity(s_div(x.mag, y.mag), dv_div(x.dim, y.dim), sys)


def _same_dim(x: Quantity, y: Quantity, what: str) -> None:
    if x.dim != y.dim:
        raise DimensionMismatchError(
            f"cannot {what} quantities of dimension {format_dim(x.dim)} and {format_dim(y.dim)}",
            x.dim,
            y.dim,
        )


def q_add(x: Quantity, y: Quantity) -> Quantity:
    sys = _same_system(x, y, "add")
    _same_dim(x, y, "add")
    return Quantity(s_add(x.mag, y.mag), x.dim, sys)


def q_sub(x: Quantity, y: Quantity) -> Quantity:
    sys = _same_system(x, y, "subtract")
    _same_dim(x, y, "subtract")
    return Quantity(s_sub(x.mag, y.mag), x.dim, sys)


def q_neg(x: Quantity) -> Quantity:
    return Quantity(-x.mag, x.dim, x.system)


def q_pow(x: Quantity, n: int) -> Quantity:
    return Quantity(s_pow(x.mag, n), dv_pow(x.dim, n), x.system)


def scale_q(n: ScalarLike, x: Quantity) -> Quantity:
    """``n *q x``: scale the magnitude, keep dimension and system."""
    return Quantity(s_mul(ExactScalar.of(n), x.mag), x.dim, x.system)


def q_equiv(x: Quantity, y: Quantity) -> bool:
    """Heterogeneous equality: same magnitude and same dimension vector."""
    _same_system(x, y, "compare")
    return x.mag == y.mag and x.dim == y.dim


def q_less_eq(x: Quantity, y: Quantity) -> bool:
    """Magnitude order, false (not an error) when dimensions differ."""
    _same_system(x, y, "compare")
    return x.dim == y.dim and s_cmp(x.mag, y.mag) <= 0


def dnorm(x: Quantity, target: DimExpr | DimVec) -> Quantity:
    """Coerce ``x`` to ``target``; zero of the target dimension if they disagree."""
    want = target if isinstance(target, DimVec) else dimexpr_eval(target)
    if want == x.dim:
        return x
    return Quantity(ZERO, want, x.system)


def mag(x: Quantity) -> ExactScalar:
    return x.mag


def dim(x: Quantity) -> DimVec:
    return x.dim


def system(x: Quantity) -> str:
    return x.system


def bunit(d: BaseQuantity, sys: str = "SI") -> Quantity:
    """The coherent base unit for base quantity ``d`` in system ``sys``."""
    return Quantity(ONE, dv_base(d), require_system(sys))


def is_base_unit(x: Quantity) -> bool:
    return x.mag == ONE and is_base_dim(x.dim)

