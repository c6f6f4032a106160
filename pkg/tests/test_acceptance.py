"""The ten acceptance criteria, one test each.

Each test records a PASS/FAIL line in ``RESULTS``; the conftest prints them in
the terminal summary.  Run this file directly for the same report without
pytest's output.
"""

import subprocess
import sys
import time
from contextlib import contextmanager
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from qcalc.corpus import bundled_corpus, compare, verify_file
from qcalc.dimension import (
    BaseQuantity,
    BaseSym,
    Inv,
    Pow,
    Times,
    dimexpr_eval,
    dv_inv,
    dv_mul,
    dv_one,
    dv_pow,
    mk_dimvec,
    normalise,
    render_dimexpr,
)
from qcalc.parser import evaluate
from qcalc.quantity import Quantity, q_add, q_equiv, q_inv, q_less_eq, q_mul, scale_q
from qcalc.scalar import ExactScalar, s_cmp, to_fraction
from qcalc.si import foundational_check
from qcalc.systems import metrify, qconv, qmc, schema_compose, schema_id, schema_invert

from strategies import dimexprs, dimvecs, exp_lists, quantities, rational_scalars, scalars, schemas

RESULTS: dict[int, tuple[bool, str]] = {}


@contextmanager
def criterion(n: int, title: str):
    try:
        yield
    except BaseException:
        RESULTS[n] = (False, title)
        print(f"criterion {n:2d}: FAIL  {title}", flush=True)
        raise
    RESULTS[n] = (True, title)
    print(f"criterion {n:2d}: PASS  {title}", flush=True)


def holds(lhs: str, op: str, rhs: str, tol=None) -> bool:
    return compare(evaluate(lhs), op, evaluate(rhs), tol)


def rel_close(q: Quantity, ref: Quantity, tol: Fraction) -> bool:
    a, b = to_fraction(q.mag), to_fraction(ref.mag)
    return q.dim == ref.dim and abs(a - b) <= tol * max(abs(a), abs(b))


def test_c01_exact_unit_equalities():
    with criterion(1, "exact unit equalities (hour, day, km/h, hectare)"):
        assert holds("1 hour", "==", "3600 second")
        assert holds("1 day", "==", "86400 second")
        assert holds("25 metre/second", "==", "90 kilometre/hour")
        assert holds("1 hectare", "==", "(hectometre)^2")


def test_c02_derived_unit_equivalences():
    with criterion(2, "derived-unit equivalences (joule, watt, volt, farad)"):
        assert q_equiv(evaluate("joule"), evaluate("newton * metre"))
        assert q_equiv(evaluate("watt"), evaluate("joule / second"))
        assert q_equiv(evaluate("volt"), evaluate("watt / ampere"))
        assert q_equiv(evaluate("farad"), evaluate("coulomb / volt"))


def test_c03_foundational_equalities():
    with criterion(3, "foundational equalities (second, metre, kilogram)"):
        checks = foundational_check()
        assert [name for name, _ in checks] == ["second", "metre", "kilogram"]
        assert all(ok for _, ok in checks)


def test_c04_normalisation():
    L, M, T, I = (BaseSym(q) for q in list(BaseQuantity)[:4])

    @settings(max_examples=200, deadline=None)
    @given(dimexprs, dimexprs)
    def suite(e1, e2):
        n1 = normalise(e1)
        assert dimexpr_eval(n1) == dimexpr_eval(e1)
        assert normalise(n1) == n1
        assert (n1 == normalise(e2)) == (dimexpr_eval(e1) == dimexpr_eval(e2))

    with criterion(4, "normalisation example and soundness/idempotence/uniqueness (200 trees)"):
        e = Times(Times(Times(Times(Pow(T, 4), Pow(L, -2)), Inv(M)), Pow(I, 2)), M)
        assert render_dimexpr(normalise(e)) == "L^-2*T^4*I^2"
        suite()


def test_c05_group_and_codec_laws():
    @settings(max_examples=1000, deadline=None)
    @given(dimvecs, dimvecs, dimvecs)
    def group(x, y, z):
        assert dv_mul(dv_mul(x, y), z) == dv_mul(x, dv_mul(y, z))
        assert dv_mul(x, y) == dv_mul(y, x)
        assert dv_mul(dv_one(), x) == x
        assert dv_mul(x, dv_inv(x)) == dv_one()

    @settings(max_examples=1000, deadline=None)
    @given(exp_lists, exp_lists, st.integers(min_value=-10, max_value=10))
    def codec(xs, ys, n):
        assert dv_mul(mk_dimvec(xs), mk_dimvec(ys)) == mk_dimvec([a + b for a, b in zip(xs, ys)])
        assert dv_pow(mk_dimvec(xs), n) == mk_dimvec([n * a for a in xs])
        assert dv_inv(mk_dimvec(xs)) == mk_dimvec([-a for a in xs])
        assert dv_one() == mk_dimvec([0] * 7)

    with criterion(5, "abelian group axioms and the four code equations (1000 vectors each)"):
        group()
        codec()


def test_c06_quantity_algebra():
    @settings(max_examples=1000, deadline=None)
    @given(dimvecs, st.lists(rational_scalars, min_size=3, max_size=3), rational_scalars)
    def vector_space(d, mags, a):
        x, y, z = (Quantity(m, d) for m in mags)
        assert q_add(q_add(x, y), z) == q_add(x, q_add(y, z))
        assert q_add(x, y) == q_add(y, x)
        assert scale_q(a, q_add(x, y)) == q_add(scale_q(a, x), scale_q(a, y))

    @settings(max_examples=1000, deadline=None)
    @given(quantities(mags=scalars(nonzero=True)), quantities(mags=scalars(nonzero=True)),
           rational_scalars)
    def laws(x, y, a):
        assert q_equiv(q_mul(x, y), q_mul(y, x))
        assert q_equiv(q_inv(q_mul(x, y)), q_mul(q_inv(x), q_inv(y)))
        # congruence: an equivalent x built along another path
        x2 = q_mul(q_mul(x, y), q_inv(y))
        assert q_equiv(x, x2)
        assert q_equiv(q_mul(x, y), q_mul(x2, y))
        assert q_equiv(q_inv(x), q_inv(x2))
        assert q_equiv(scale_q(a, x), scale_q(a, x2))
        # transfer laws
        assert q_equiv(x, y) == (x.mag == y.mag and x.dim == y.dim)
        same = Quantity(y.mag, x.dim)
        assert q_less_eq(x, same) == (s_cmp(x.mag, same.mag) <= 0)
        assert q_mul(x, y).mag == x.mag * y.mag

    with criterion(6, "vector-space, congruence and transfer laws (1000 quantities each)"):
        vector_space()
        laws()


def test_c07_conversions():
    @settings(max_examples=500, deadline=None)
    @given(schemas(), schemas(), schemas(), quantities())
    def category(a, b, c, x):
        assert schema_compose(schema_compose(c, b), a) == schema_compose(c, schema_compose(b, a))
        assert schema_compose(schema_id("SI"), a) == a == schema_compose(a, schema_id("SI"))
        assert schema_compose(schema_invert(a), a) == schema_id("SI")
        assert qconv(schema_compose(b, a), x) == qconv(b, qconv(a, x))

    @settings(max_examples=300, deadline=None)
    @given(quantities("CGS"))
    def round_trips(x):
        assert qmc(qmc(x, "BIS"), "CGS") == x
        assert qmc(qmc(x, "USC"), "CGS") == x

    with criterion(7, "cubic yard exact, 12 cm -> 4.724 inch, exact round trips, 500 schema laws"):
        cube = evaluate("1 yard^3")
        assert cube == scale_q(Fraction(9144**3, 10**12), evaluate("metre^3"))
        assert cube.mag == ExactScalar.of("0.764554857984")
        assert rel_close(cube, evaluate("0.764555 metre^3"), Fraction(1, 10**6))
        inches = evaluate("to[BIS](12 centimetre)", "CGS")
        assert rel_close(inches, evaluate("4.724 BIS:inch"), Fraction(1, 1000))
        round_trips()
        category()


def test_c08_errata():
    with criterion(8, "ounce and 30-pound errata flagged, corrected values hold"):
        rep = verify_file(bundled_corpus())
        errata = [r for r in rep.results if r.verdict == "erratum"]
        texts = " ".join(r.assertion.text for r in errata)
        assert "37.8 gram" in texts and "9.07 kilogram" in texts
        assert rep.failed == 0
        ounce = metrify(evaluate("1 BIS:ounce"))
        assert rel_close(ounce, evaluate("28.3495 gram"), Fraction(1, 10**4))
        assert metrify(evaluate("30 BIS:pound")) == evaluate("13.60777014 kilogram")


def test_c09_astronomical():
    with criterion(9, "light-year, 180 degree ~ pi radian, parsec*pi == 648000 au"):
        assert holds("light-year", "==", "9460730472580800 metre")
        assert holds("180 degree", "~", "pi radian")
        assert holds("parsec * pi", "==", "648000 astronomical-unit")


def test_c10_bundled_corpus_cli():
    with criterion(10, "qcalc verify on the bundled corpus exits 0 in under 5 s"):
        start = time.perf_counter()
        proc = subprocess.run(
            [sys.executable, "-m", "qcalc", "verify", str(bundled_corpus())],
            capture_output=True, text=True, check=False,
        )
        elapsed = time.perf_counter() - start
        assert proc.returncode == 0, proc.stdout + proc.stderr
        assert " 0 failed" in proc.stdout.splitlines()[-1]
        assert elapsed < 5


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_c")]
    failed = 0
    for t in tests:
        try:
            t()
        except Exception:
            failed += 1
    sys.exit(1 if failed else 0)
