"""Exact magnitudes of the form ``coeff * pi**piexp`` with rational ``coeff``.

Pi is the only irrational number the unit ontology introduces (through the
degree and the parsec), so this two-component form is closed under every
operation qcalc needs except addition of different pi powers, which raises
:class:`~qcalc.errors.PiClosureError`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Context, Decimal
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Union

from .errors import (
    PiClosureError,
    PrecisionExhaustedError,
    ScalarZeroDivisionError,
)

__all__ = [
    "ExactScalar",
    "ScalarLike",
    "scalar",
    "s_add",
    "s_sub",
    "s_neg",
    "s_mul",
    "s_inv",
    "s_div",
    "s_pow",
    "s_cmp",
    "pi_bounds",
    "to_fraction",
    "render",
    "render_exact",
    "PI",
    "ZERO",
    "ONE",
    "COMPARE_DIGITS",
]

# 281 significant digits of pi, "3" followed by the fractional part.
_PI_DIGITS = (
    "31415926535897932384626433832795028841971693993751058209749445923078164062"
    "86208998628034825342117067982148086513282306647093844609550582231725359408"
    "12848111745028410270193852110555964462294895493038196442881097566593344612"
    "84756482337867831652712019091456485669234603486104543266482"
)
assert len(_PI_DIGITS) == 281

# Precision levels (fractional digits) tried in turn when ordering two values.
COMPARE_DIGITS = (64, 128, 256)


@lru_cache(maxsize=None)
def pi_bounds(digits: int) -> tuple[Fraction, Fraction]:
    """Rational ``(lo, hi)`` with ``lo < pi < hi`` and ``hi - lo = 10**-digits``."""
    if not 0 <= digits <= len(_PI_DIGITS) - 1:
        raise ValueError(f"pi bounds available up to {len(_PI_DIGITS) - 1} digits")
    lo = Fraction(int(_PI_DIGITS[: digits + 1]), 10**digits)
    return lo, lo + Fraction(1, 10**digits)


_DECIMAL_RE = re.compile(
    r"""^\s*(?P<num>[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)
        (?:\s*/\s*(?P<den>[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?))?\s*$""",
    re.VERBOSE,
)


def _parse_rational(text: str) -> Fraction:
    m = _DECIMAL_RE.match(text)
    if not m:
        raise ValueError(f"not an exact decimal or rational literal: {text!r}")
    num = Fraction(m.group("num"))
    if m.group("den") is None:
        return num
    den = Fraction(m.group("den"))
    if den == 0:
        raise ScalarZeroDivisionError(f"zero denominator in {text!r}")
    return num / den


@dataclass(frozen=True, eq=False)
class ExactScalar:
    coeff: Fraction
    piexp: int = 0

    def __post_init__(self):
        c = self.coeff
        if not isinstance(c, Fraction):
            if isinstance(c, bool) or not isinstance(c, Rational):
                raise TypeError(f"coefficient must be rational, got {type(c).__name__}")
            c = Fraction(c)
            object.__setattr__(self, "coeff", c)
        if not isinstance(self.piexp, int) or isinstance(self.piexp, bool):
            raise TypeError("piexp must be an integer")
        if c == 0 and self.piexp != 0:
            object.__setattr__(self, "piexp", 0)

    @classmethod
    def of(cls, value: ScalarLike) -> ExactScalar:
        """Coerce ints, Fractions, Decimals and decimal/``p/q`` strings exactly.

        Floats are refused: their binary expansion would leak into every
        equality check downstream.
        """
        if isinstance(value, ExactScalar):
            return value
        if isinstance(value, bool):
            raise TypeError("booleans are not magnitudes")
        if isinstance(value, (int, Fraction)):
            return cls(Fraction(value))
        if isinstance(value, Decimal):
            if not value.is_finite():
                raise ValueError("non-finite decimal")
            return cls(Fraction(value))
        if isinstance(value, str):
            return cls(_parse_rational(value))
        if isinstance(value, float):
            raise TypeError("floats are not exact; pass a string such as '0.9144'")
        if isinstance(value, Rational):
            return cls(Fraction(value.numerator, value.denominator))
        raise TypeError(f"cannot make an exact scalar from {type(value).__name__}")

    @property
    def is_zero(self) -> bool:
        return self.coeff == 0

    @property
    def sign(self) -> int:
        return (self.coeff > 0) - (self.coeff < 0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = ExactScalar(Fraction(other))
        if not isinstance(other, ExactScalar):
            return NotImplemented
        return self.coeff == other.coeff and self.piexp == other.piexp

    def __hash__(self) -> int:
        if self.piexp == 0:
            return hash(self.coeff)
        return hash((self.coeff, self.piexp))

    def __add__(self, other):
        return s_add(self, _coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return s_sub(self, _coerce(other))

    def __rsub__(self, other):
        return s_sub(_coerce(other), self)

    def __neg__(self):
        return s_neg(self)

    def __mul__(self, other):
        if not _scalar_operand(other):
            return NotImplemented
        return s_mul(self, _coerce(other))

    def __rmul__(self, other):
        if not _scalar_operand(other):
            return NotImplemented
        return s_mul(_coerce(other), self)

    def __truediv__(self, other):
        if not _scalar_operand(other):
            return NotImplemented
        return s_div(self, _coerce(other))

    def __rtruediv__(self, other):
        return s_div(_coerce(other), self)

    def __pow__(self, n: int):
        return s_pow(self, n)

    def __abs__(self):
        return ExactScalar(abs(self.coeff), self.piexp)

    def __lt__(self, other):
        return s_cmp(self, _coerce(other)) < 0

    def __le__(self, other):
        return s_cmp(self, _coerce(other)) <= 0

    def __gt__(self, other):
        return s_cmp(self, _coerce(other)) > 0

    def __ge__(self, other):
        return s_cmp(self, _coerce(other)) >= 0

    def __str__(self) -> str:
        return render_exact(self)

    def __repr__(self) -> str:
        return f"ExactScalar({render_exact(self)})"


ScalarLike = Union[ExactScalar, int, Fraction, Decimal, str]

ZERO = ExactScalar(Fraction(0))
ONE = ExactScalar(Fraction(1))
PI = ExactScalar(Fraction(1), 1)


def _scalar_operand(x) -> bool:
    return isinstance(x, (ExactScalar, int, Fraction, Decimal, str)) and not isinstance(x, bool)


def _coerce(x) -> ExactScalar:
    return ExactScalar.of(x)


def scalar(value: ScalarLike, piexp: int = 0) -> ExactScalar:
    """Shorthand: ``scalar("0.9144")``, ``scalar(648000, -1)``."""
    base = ExactScalar.of(value)
    return ExactScalar(base.coeff, base.piexp + piexp)


def s_add(a: ExactScalar, b: ExactScalar) -> ExactScalar:
    if a.is_zero:
        return b
    if b.is_zero:
        return a
    if a.piexp != b.piexp:
        raise PiClosureError(
            f"cannot add {render_exact(a)} and {render_exact(b)}: different powers of pi"
        )
    return ExactScalar(a.coeff + b.coeff, a.piexp)


def s_neg(a: ExactScalar) -> ExactScalar:
    return ExactScalar(-a.coeff, a.piexp)


def s_sub(a: ExactScalar, b: ExactScalar) -> ExactScalar:
    return s_add(a, s_neg(b))


def s_mul(a: ExactScalar, b: ExactScalar) -> ExactScalar:
    return ExactScalar(a.coeff * b.coeff, a.piexp + b.piexp)


def s_inv(a: ExactScalar) -> ExactScalar:
    if a.is_zero:
        raise ScalarZeroDivisionError("inverse of zero")
    return ExactScalar(1 / a.coeff, -a.piexp)


def s_div(a: ExactScalar, b: ExactScalar) -> ExactScalar:
    if b.is_zero:
        raise ScalarZeroDivisionError("division by zero")
    return s_mul(a, s_inv(b))


def s_pow(a: ExactScalar, n: int) -> ExactScalar:
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError("exponent must be an integer")
    if n < 0:
        return s_pow(s_inv(a), -n)
    return ExactScalar(a.coeff**n, a.piexp * n)


def _interval(a: ExactScalar, digits: int) -> tuple[Fraction, Fraction]:
    if a.piexp == 0:
        return a.coeff, a.coeff
    lo, hi = pi_bounds(digits)
    k = a.piexp
    if k > 0:
        plo, phi = lo**k, hi**k
    else:
        plo, phi = 1 / hi ** (-k), 1 / lo ** (-k)
    if a.coeff > 0:
        return a.coeff * plo, a.coeff * phi
    return a.coeff * phi, a.coeff * plo


def s_cmp(a: ExactScalar, b: ExactScalar) -> int:
    """Three-way comparison of the represented reals (-1, 0 or 1)."""
    if a == b:
        return 0
    if a.sign != b.sign:
        return -1 if a.sign < b.sign else 1
    if a.piexp == b.piexp:
        return -1 if a.coeff < b.coeff else 1
    for digits in COMPARE_DIGITS:
        alo, ahi = _interval(a, digits)
        blo, bhi = _interval(b, digits)
        if ahi < blo:
            return -1
        if alo > bhi:
            return 1
    raise PrecisionExhaustedError(
        f"cannot order {render_exact(a)} and {render_exact(b)} with "
        f"{COMPARE_DIGITS[-1]}-digit bounds on pi"
    )


def to_fraction(a: ExactScalar, digits: int = 64) -> Fraction:
    """Rational approximation with relative error well below ``10**-digits``."""
    if a.piexp == 0:
        return a.coeff
    need = digits + 10 + len(str(abs(a.piexp)))
    need = min(need, len(_PI_DIGITS) - 1)
    lo, _ = pi_bounds(need)
    return a.coeff * lo**a.piexp


def _format_decimal(d: Decimal, digits: int) -> str:
    if d == 0:
        return "0"
    adj = d.adjusted()
    if -7 <= adj < digits + 3:
        s = format(d, "f")
    else:
        s = format(d, "E")
        mant, _, exp = s.partition("E")
        if "." in mant:
            mant = mant.rstrip("0").rstrip(".")
        s = f"{mant}e{int(exp)}"
    return s


def render(a: ExactScalar, digits: int = 10) -> str:
    """Decimal string rounded half-even to ``digits`` significant digits."""
    if digits < 1:
        raise ValueError("digits must be positive")
    ctx = Context(prec=digits, rounding=ROUND_HALF_EVEN, Emax=10**9, Emin=-(10**9))
    if a.piexp == 0:
        value = ctx.divide(Decimal(a.coeff.numerator), Decimal(a.coeff.denominator))
    else:
        approx = to_fraction(a, digits + 20)
        value = ctx.divide(Decimal(approx.numerator), Decimal(approx.denominator))
    return _format_decimal(value, digits)


def render_exact(a: ExactScalar) -> str:
    """``p``, ``p/q``, optionally followed by ``*pi`` or ``*pi^k``."""
    c = a.coeff
    text = str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    if a.piexp == 0:
        return text
    pi_part = "pi" if a.piexp == 1 else f"pi^{a.piexp}"
    if c == 1:
        return pi_part
    return f"{text}*{pi_part}"
