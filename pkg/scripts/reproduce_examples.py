"""Print a table of the worked examples: expression, reference value, computed value.

    python3 scripts/reproduce_examples.py [--digits 12] [--markdown]
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass
from fractions import Fraction

from qcalc import evaluate, format_dim, qmc, render, render_exact
from qcalc.quantity import q_div
from qcalc.scalar import ExactScalar, to_fraction


@dataclass
class Config:
    digits: int = 12
    markdown: bool = False


@dataclass(frozen=True)
class Example:
    label: str
    expr: str
    unit: str
    reference: str
    system: str = "SI"
    tol: str = "0"  # relative; 0 means exact


EXAMPLES = [
    Example("hour in seconds", "1 hour", "second", "3600"),
    Example("day in seconds", "1 day", "second", "86400"),
    Example("25 m/s in km/h", "25 metre/second", "kilometre/hour", "90"),
    Example("hectare in hm^2", "1 hectare", "hectometre^2", "1"),
    Example("distance at 5 m/s for 10 s", "(5 metre/second) * (10 second)", "metre", "50"),
    Example("cubic yard (exact)", "1 yard^3", "metre^3", "0.764554857984"),
    Example("cubic yard (rounded)", "1 yard^3", "metre^3", "0.764555", tol="1e-6"),
    Example("BIS yard", "to[SI](1 BIS:yard)", "metre", "0.9143993"),
    Example("BIS pound", "to[SI](1 BIS:pound)", "kilogram", "0.453592338"),
    Example("USC yard", "to[SI](1 USC:yard)", "metre", "0.9144018"),
    Example("12 cm in BIS inches", "to[BIS](12 centimetre)", "BIS:inch", "4.724", "CGS", "1e-3"),
    Example("30 BIS pounds", "to[SI](30 BIS:pound)", "kilogram", "13.60777014"),
    Example("BIS ounce", "to[SI](1 BIS:ounce)", "gram", "28.3495", tol="1e-4"),
    Example("light-year", "light-year", "metre", "9460730472580800"),
    Example("180 degrees", "180 degree", "radian", "3.14159265358979", tol="1e-14"),
    Example("parsec", "parsec", "astronomical-unit", "206264.806247", tol="1e-11"),
]


def run_example(ex: Example, digits: int) -> tuple[str, str, str]:
    x = evaluate(ex.expr, ex.system)
    t = evaluate(ex.unit, ex.system)
    if x.system != t.system:
        x = qmc(x, t.system)
    ratio = q_div(x, t)
    if not ratio.dim.is_one:
        return "dimension " + format_dim(ratio.dim), "", "FAIL"
    ref = Fraction(ExactScalar.of(ex.reference).coeff)
    tol = Fraction(ExactScalar.of(ex.tol).coeff)
    got = to_fraction(ratio.mag)
    if tol == 0:
        ok = ratio.mag == ExactScalar(ref)
    else:
        ok = abs(got - ref) <= tol * max(abs(got), abs(ref))
    return render(ratio.mag, digits), render_exact(ratio.mag), "ok" if ok else "FAIL"


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--digits", type=int, default=Config.digits)
    p.add_argument("--markdown", action="store_true")
    cfg = Config(**vars(p.parse_args(argv)))

    rows = [("example", "reference", "computed", "exact", "tol", "")]
    bad = 0
    for ex in EXAMPLES:
        dec, exact, verdict = run_example(ex, cfg.digits)
        bad += verdict != "ok"
        rows.append((ex.label, f"{ex.reference} {ex.unit}", dec, exact, ex.tol, verdict))
    if cfg.markdown:
        print("| " + " | ".join(rows[0]) + " |")
        print("|" + "---|" * len(rows[0]))
        for r in rows[1:]:
            print("| " + " | ".join(r) + " |")
    else:
        widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
        for r in rows:
            print("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
