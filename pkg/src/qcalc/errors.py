"""Exception hierarchy shared by every qcalc module."""

from __future__ import annotations


class QCalcError(Exception):
    """Base class for all errors raised by qcalc."""


class DimensionOverflowError(QCalcError, OverflowError):
    """A dimension exponent left the checked 64-bit range."""


class DimensionMismatchError(QCalcError):
    def __init__(self, message: str, lhs=None, rhs=None):
        super().__init__(message)
        self.lhs = lhs
        self.rhs = rhs


class SystemMismatchError(QCalcError):
    pass


class UnknownSystemError(QCalcError, LookupError):
    pass


class NonMetrifiableError(QCalcError):
    pass


class PiClosureError(QCalcError, ArithmeticError):
    """Sum of two nonzero magnitudes carrying different powers of pi."""


class ScalarZeroDivisionError(QCalcError, ZeroDivisionError):
    pass


class PrecisionExhaustedError(QCalcError, ArithmeticError):
    """Stored bounds on pi could not separate two values."""


class SchemaError(QCalcError, ValueError):
    pass


class ParseError(QCalcError, ValueError):
    """Syntax or name-resolution failure, with a 0-based character offset."""

    def __init__(self, message: str, pos: int | None = None, text: str | None = None):
        self.message = message
        self.pos = pos
        self.text = text
        super().__init__(self.describe())

    def describe(self) -> str:
        if self.pos is None:
            return self.message
        return f"{self.message} (at column {self.pos + 1})"


class CorpusError(QCalcError):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
