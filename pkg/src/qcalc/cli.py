"""``qcalc`` command-line front end.

Exit codes: 0 success, 1 assertion false, 2 usage/parse/evaluation error,
3 dimension mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, TextIO

from .corpus import LineResult, Report, compare, verify_file
from .dimension import format_dim, normalise, parse_dimexpr, render_dimexpr
from .errors import CorpusError, DimensionMismatchError, ParseError, QCalcError
from .parser import evaluate
from .quantity import Quantity, q_div
from .scalar import ExactScalar, render, render_exact
from .systems import builtin_systems, get_system, load_schemas, qmc

__all__ = ["main", "build_parser", "CliConfig"]

EXIT_OK, EXIT_FALSE, EXIT_ERROR, EXIT_DIM = 0, 1, 2, 3
DEFAULT_APPROX_TOL = Fraction(1, 10**6)

_EQ_OPS = {
    "==": "==", "=": "==",
    "~": "~", "≅": "~",
    "~=": "~=", "≈": "~=",
    "<=": "<=", "≤": "<=",
}


@dataclass
class CliConfig:
    system: str = "SI"
    digits: int = 10
    exact: bool = False
    json: bool = False
    schemas: str | None = None

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> CliConfig:
        return cls(ns.system, ns.digits, ns.exact, ns.json, ns.schemas)


class _Fail(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _positive_int(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


def build_parser() -> argparse.ArgumentParser:
    # global flags are accepted both before and after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--system", default=argparse.SUPPRESS, help="default unit system (SI)")
    common.add_argument("--digits", type=_positive_int, default=argparse.SUPPRESS,
                        help="significant digits for decimal output (10)")
    common.add_argument("--exact", action="store_true", default=argparse.SUPPRESS,
                        help="print exact magnitudes only")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
    common.add_argument("--schemas", metavar="FILE", default=argparse.SUPPRESS,
                        help="JSON file of extra unit systems to register")

    p = argparse.ArgumentParser(prog="qcalc", parents=[common],
                                description="Exact quantity calculus over the ISQ and SI.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("dim", parents=[common], help="dimension of an expression")
    s.add_argument("expr")

    s = sub.add_parser("norm", parents=[common], help="normal form of a dimension expression")
    s.add_argument("dimexpr")

    s = sub.add_parser("convert", parents=[common], help="express a quantity in a target unit")
    s.add_argument("expr")
    s.add_argument("--to", required=True, metavar="UNITEXPR", dest="target")

    s = sub.add_parser("eq", parents=[common], help="decide LHS OP RHS")
    s.add_argument("lhs")
    s.add_argument("op", help="one of ==, ~, <=, ~=")
    s.add_argument("rhs")
    s.add_argument("--tol", default=None, help="relative tolerance for ~= (default 1e-6)")

    s = sub.add_parser("verify", parents=[common], help="check a .qeq corpus")
    s.add_argument("file")

    sub.add_parser("units", parents=[common], help="list the units of a system")
    return p


def _parse_args(argv: Sequence[str] | None) -> argparse.Namespace:
    ns = build_parser().parse_args(argv)
    defaults = {"system": "SI", "digits": 10, "exact": False, "json": False, "schemas": None}
    for key, val in defaults.items():
        if not hasattr(ns, key):
            setattr(ns, key, val)
    return ns


def _mag_text(m: ExactScalar, cfg: CliConfig) -> str:
    return render_exact(m) if cfg.exact else render(m, cfg.digits)


def _qjson(q: Quantity, cfg: CliConfig) -> dict:
    return {
        "magnitude": render_exact(q.mag),
        "decimal": render(q.mag, cfg.digits),
        "dim": format_dim(q.dim),
        "system": q.system,
    }


def _qtext(q: Quantity, cfg: CliConfig) -> str:
    return f"{_mag_text(q.mag, cfg)} [{format_dim(q.dim)}] ({q.system})"


def _emit(out: TextIO, cfg: CliConfig, payload: dict, lines: Sequence[str]) -> None:
    if cfg.json:
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        for line in lines:
            out.write(line + "\n")


def cmd_dim(ns, cfg: CliConfig, out: TextIO) -> int:
    q = evaluate(ns.expr, cfg.system)
    d = format_dim(q.dim)
    _emit(out, cfg, {"ok": True, "dim": d, "exponents": list(q.dim.exps)}, [d])
    return EXIT_OK


def cmd_norm(ns, cfg: CliConfig, out: TextIO) -> int:
    text = render_dimexpr(normalise(parse_dimexpr(ns.dimexpr)))
    _emit(out, cfg, {"ok": True, "dim": text}, [text])
    return EXIT_OK


def cmd_convert(ns, cfg: CliConfig, out: TextIO) -> int:
    x = evaluate(ns.expr, cfg.system)
    try:
        t = evaluate(ns.target, cfg.system)
    except ParseError:
        # "to[BIS](...) --to inch": read bare target names in the result's system
        if x.system == cfg.system:
            raise
        t = evaluate(ns.target, x.system)
    if x.system != t.system:
        x = qmc(x, t.system)
    if x.dim != t.dim:
        raise DimensionMismatchError(
            f"cannot convert {format_dim(x.dim)} to {format_dim(t.dim)}", x.dim, t.dim
        )
    if t.mag.is_zero:
        raise _Fail(EXIT_ERROR, "target unit has zero magnitude")
    ratio = q_div(x, t)
    assert ratio.dim.is_one
    exact, dec = render_exact(ratio.mag), render(ratio.mag, cfg.digits)
    payload = {
        "ok": True,
        "lhs": _qjson(x, cfg),
        "rhs": _qjson(t, cfg),
        "verdict": "converted",
        "value": {"exact": exact, "decimal": dec},
    }
    if cfg.exact:
        lines = [f"{exact} {ns.target}"]
    else:
        lines = [f"{dec} {ns.target}"]
        if exact != dec:
            lines.append(f"exact: {exact}")
    _emit(out, cfg, payload, lines)
    return EXIT_OK


def cmd_eq(ns, cfg: CliConfig, out: TextIO) -> int:
    op = _EQ_OPS.get(ns.op)
    if op is None:
        raise _Fail(EXIT_ERROR, f"unknown comparison {ns.op!r}; use ==, ~, <= or ~=")
    tol = None
    if op == "~=":
        tol = DEFAULT_APPROX_TOL if ns.tol is None else ExactScalar.of(ns.tol).coeff
        if tol <= 0:
            raise _Fail(EXIT_ERROR, "tolerance must be positive")
    lhs = evaluate(ns.lhs, cfg.system)
    rhs = evaluate(ns.rhs, cfg.system)
    holds = compare(lhs, op, rhs, tol)
    verdict = "true" if holds else "false"
    payload = {"ok": holds, "lhs": _qjson(lhs, cfg), "rhs": _qjson(rhs, cfg), "verdict": verdict}
    _emit(out, cfg, payload, [f"lhs: {_qtext(lhs, cfg)}", f"rhs: {_qtext(rhs, cfg)}", verdict])
    return EXIT_OK if holds else EXIT_FALSE


def _line_text(r: LineResult) -> str:
    a = r.assertion
    tag = {"pass": "PASS", "fail": "FAIL", "erratum": "ERRATUM"}[r.verdict]
    body = a.text.split("#", 1)[0].strip()
    extra = ""
    if r.detail:
        extra = f"  ({r.detail})"
    elif r.verdict == "erratum":
        extra = f"  (holds: {str(r.holds).lower()})"
    return f"line {a.lineno}: {tag} {body}{extra}"


def _report_json(rep: Report) -> dict:
    return {
        "ok": rep.ok,
        "passed": rep.passed,
        "failed": rep.failed,
        "errata": rep.errata,
        "elapsed": rep.elapsed,
        "lines": [
            {
                "line": r.assertion.lineno,
                "verdict": r.verdict,
                "holds": r.holds,
                "text": r.assertion.text.strip(),
                "detail": r.detail,
            }
            for r in rep.results
        ],
    }


def cmd_verify(ns, cfg: CliConfig, out: TextIO) -> int:
    rep = verify_file(ns.file, cfg.system)
    lines = [_line_text(r) for r in rep.results]
    lines.append(f"{rep.passed} passed, {rep.failed} failed, {rep.errata} errata")
    _emit(out, cfg, _report_json(rep), lines)
    return EXIT_OK if rep.ok else EXIT_FALSE


def cmd_units(ns, cfg: CliConfig, out: TextIO) -> int:
    table = get_system(cfg.system).units
    entries = [table[name] for name in table]
    if cfg.json:
        out.write(json.dumps([e.to_json() for e in entries], indent=2, ensure_ascii=False) + "\n")
        return EXIT_OK
    rows = [
        (e.name, ", ".join(e.aliases), _mag_text(e.value.mag, cfg), format_dim(e.value.dim), e.category)
        for e in entries
    ]
    header = ("name", "aliases", "magnitude", "dim", "category")
    widths = [max(len(r[i]) for r in [header, *rows]) for i in range(len(header))]
    for r in [header, *rows]:
        out.write("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() + "\n")
    return EXIT_OK


_COMMANDS = {
    "dim": cmd_dim,
    "norm": cmd_norm,
    "convert": cmd_convert,
    "eq": cmd_eq,
    "verify": cmd_verify,
    "units": cmd_units,
}


def main(argv: Sequence[str] | None = None, out: TextIO | None = None,
         err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        ns = _parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cfg = CliConfig.from_args(ns)
    try:
        builtin_systems()
        if cfg.schemas:
            try:
                load_schemas(cfg.schemas)
            except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
                raise _Fail(EXIT_ERROR, f"cannot load schemas from {cfg.schemas}: {exc}") from None
        get_system(cfg.system)
        return _COMMANDS[ns.command](ns, cfg, out)
    except DimensionMismatchError as exc:
        lhs = format_dim(exc.lhs) if exc.lhs is not None else "?"
        rhs = format_dim(exc.rhs) if exc.rhs is not None else "?"
        err.write(f"qcalc: dimension mismatch: {lhs} vs {rhs}\n")
        return EXIT_DIM
    except ParseError as exc:
        err.write(f"qcalc: parse error: {exc.describe()}\n")
        if exc.text is not None and exc.pos is not None:
            err.write(f"  {exc.text}\n  {' ' * exc.pos}^\n")
        return EXIT_ERROR
    except CorpusError as exc:
        err.write(f"qcalc: {exc}\n")
        return EXIT_ERROR
    except _Fail as exc:
        err.write(f"qcalc: {exc}\n")
        return exc.code
    except (QCalcError, ValueError, ZeroDivisionError, ArithmeticError) as exc:
        err.write(f"qcalc: {exc}\n")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
