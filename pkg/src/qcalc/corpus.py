"""Line-oriented assertion corpora (``.qeq`` files) and their verifier.

Each non-blank, non-comment line reads::

    LHS OP RHS [@ TOL] [!erratum NOTE]

with ``OP`` one of ``==`` (exact equality, dimensions must agree), ``~``
(equivalence), ``<=`` (order) or ``~=`` (approximate, relative tolerance
``TOL``).  A single ``=`` and the symbols ``≅ ≈ ≤`` are accepted as
spellings of ``==``, ``~``, ``~=`` and ``<=``.  Lines flagged ``!erratum`` record a published figure known to be
wrong; they are evaluated and reported but never count as failures.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Iterable

from .dimension import format_dim
from .errors import CorpusError, DimensionMismatchError, ParseError, QCalcError, SystemMismatchError
from .parser import QExpr, eval_ast, parse
from .quantity import Quantity, q_equiv, q_less_eq
from .scalar import ExactScalar, to_fraction

__all__ = [
    "OPS",
    "CorpusAssertion",
    "LineResult",
    "Report",
    "compare",
    "parse_corpus",
    "verify",
    "verify_file",
    "bundled_corpus",
]

OPS = ("==", "~=", "~", "<=")
_UNICODE_OPS = {"≅": "~", "≈": "~=", "≤": "<=", "=": "=="}
APPROX_DIGITS = 64


def _normalise_op(op: str) -> str:
    op = _UNICODE_OPS.get(op, op)
    if op not in OPS:
        raise ValueError(f"unknown comparison {op!r}; expected one of {', '.join(OPS)}")
    return op


def _approx_equal(a: ExactScalar, b: ExactScalar, tol: Fraction) -> bool:
    x, y = to_fraction(a, APPROX_DIGITS), to_fraction(b, APPROX_DIGITS)
    return abs(x - y) <= tol * max(abs(x), abs(y))


def compare(lhs: Quantity, op: str, rhs: Quantity, tol: Fraction | None = None) -> bool:
    """Decide ``lhs OP rhs``.

    ``==`` is homogeneous: comparing different dimensions raises
    :class:`DimensionMismatchError`.  The other relations return False when
    the dimensions differ.  Every relation requires a common unit system.
    """
    op = _normalise_op(op)
    if lhs.system != rhs.system:
        raise SystemMismatchError(
            f"cannot compare quantities from {lhs.system} and {rhs.system}; convert with to[...]"
        )
    if op == "==":
        if lhs.dim != rhs.dim:
            raise DimensionMismatchError(
                f"dimension mismatch: {format_dim(lhs.dim)} vs {format_dim(rhs.dim)}",
                lhs.dim,
                rhs.dim,
            )
        return lhs.mag == rhs.mag
    if op == "~":
        return q_equiv(lhs, rhs)
    if op == "<=":
        return q_less_eq(lhs, rhs)
    if tol is None or tol <= 0:
        raise ValueError("approximate comparison needs a positive tolerance")
    return lhs.dim == rhs.dim and _approx_equal(lhs.mag, rhs.mag, tol)


@dataclass(frozen=True)
class CorpusAssertion:
    lhs: QExpr
    op: str
    rhs: QExpr
    tol: Fraction | None = None
    erratum: bool = False
    note: str = ""
    lineno: int = 0
    text: str = field(default="", compare=False)

    def __post_init__(self):
        if self.op == "~=" and (self.tol is None or self.tol <= 0):
            raise CorpusError("'~=' needs a positive tolerance ('@ TOL')", self.lineno)


def _split_op(body: str, lineno: int) -> tuple[str, str, str]:
    depth = 0
    i = 0
    while i < len(body):
        ch = body[i]
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif depth == 0:
            for op in ("==", "~=", "<=", "~", "=", "≅", "≈", "≤"):
                if body.startswith(op, i):
                    return body[:i].strip(), _normalise_op(op), body[i + len(op):].strip()
        i += 1
    raise CorpusError("no comparison operator (==, =, ~, <=, ~=) found", lineno)


def _parse_tol(text: str, lineno: int) -> Fraction:
    try:
        tol = ExactScalar.of(text.strip())
    except (ValueError, ZeroDivisionError):
        raise CorpusError(f"bad tolerance {text.strip()!r}", lineno) from None
    if tol.piexp != 0 or tol.coeff <= 0:
        raise CorpusError("tolerance must be a positive rational", lineno)
    return tol.coeff


def parse_line(line: str, lineno: int = 0, system: str = "SI") -> CorpusAssertion | None:
    raw = line
    line = line.split("#", 1)[0].strip()
    if not line:
        return None
    note = ""
    erratum = False
    if "!erratum" in line:
        line, _, note = line.partition("!erratum")
        erratum = True
        note = note.strip()
        line = line.strip()
    tol = None
    if "@" in line:
        line, _, tol_text = line.partition("@")
        tol = _parse_tol(tol_text, lineno)
    lhs_text, op, rhs_text = _split_op(line, lineno)
    if not lhs_text or not rhs_text:
        raise CorpusError("both sides of an assertion must be present", lineno)
    try:
        lhs = parse(lhs_text, system)
        rhs = parse(rhs_text, system)
    except ParseError as exc:
        raise CorpusError(f"syntax error: {exc}", lineno) from None
    return CorpusAssertion(lhs, op, rhs, tol, erratum, note, lineno, raw.rstrip("\n"))


def parse_corpus(text: str, system: str = "SI") -> list[CorpusAssertion]:
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        a = parse_line(line, lineno, system)
        if a is not None:
            out.append(a)
    return out


@dataclass
class LineResult:
    assertion: CorpusAssertion
    holds: bool | None
    verdict: str  # "pass", "fail" or "erratum"
    detail: str = ""
    lhs: Quantity | None = None
    rhs: Quantity | None = None


@dataclass
class Report:
    results: list[LineResult]
    elapsed: float = 0.0

    @property
    def passed(self) -> int:
        return sum(r.verdict == "pass" for r in self.results)

    @property
    def failed(self) -> int:
        return sum(r.verdict == "fail" for r in self.results)

    @property
    def errata(self) -> int:
        return sum(r.verdict == "erratum" for r in self.results)

    @property
    def ok(self) -> bool:
        return self.failed == 0


def check(a: CorpusAssertion, system: str = "SI") -> LineResult:
    lhs = rhs = None
    try:
        lhs = eval_ast(a.lhs, system)
        rhs = eval_ast(a.rhs, system)
        holds: bool | None = compare(lhs, a.op, rhs, a.tol)
        detail = ""
    except QCalcError as exc:
        holds, detail = None, str(exc)
    if a.erratum:
        verdict = "erratum"
    else:
        verdict = "pass" if holds else "fail"
    return LineResult(a, holds, verdict, detail, lhs, rhs)


def verify(assertions: Iterable[CorpusAssertion], system: str = "SI") -> Report:
    start = time.perf_counter()
    results = [check(a, system) for a in assertions]
    return Report(results, time.perf_counter() - start)


def verify_file(path: str | Path, system: str = "SI") -> Report:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except FileNotFoundError:
        raise CorpusError(f"corpus file not found: {path}") from None
    return verify(parse_corpus(text, system), system)


def bundled_corpus() -> Path:
    """Path of the corpus shipped with the package."""
    return Path(str(resources.files("qcalc") / "data" / "paper.qeq"))
