from decimal import Decimal
from fractions import Fraction

import mpmath
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from qcalc.errors import PiClosureError, PrecisionExhaustedError, ScalarZeroDivisionError
from qcalc.scalar import (
    ONE,
    PI,
    ZERO,
    ExactScalar,
    pi_bounds,
    render,
    render_exact,
    s_add,
    s_cmp,
    s_div,
    s_inv,
    s_mul,
    s_pow,
    s_sub,
    scalar,
    to_fraction,
)

from strategies import fractions, scalars

mpmath.mp.dps = 60


def mp(a: ExactScalar):
    c = a.coeff
    return mpmath.mpf(c.numerator) / c.denominator * mpmath.pi**a.piexp


def close(x, y, rel=mpmath.mpf("1e-40")):
    if y == 0:
        return abs(x) < rel
    return abs(x - y) <= rel * abs(y)


# --- construction -------------------------------------------------------------

@pytest.mark.parametrize(
    "value, expected",
    [
        ("0.9144", Fraction(1143, 1250)),
        ("6.62607015e-34", Fraction(662607015, 10**42)),
        ("1/12", Fraction(1, 12)),
        ("-3", Fraction(-3)),
        (Decimal("0.25"), Fraction(1, 4)),
        (7, Fraction(7)),
    ],
)
def test_of_is_exact(value, expected):
    assert ExactScalar.of(value) == ExactScalar(expected)


@pytest.mark.parametrize("bad", [0.5, True, None, "abc", "1/0"])
def test_of_rejects(bad):
    with pytest.raises((TypeError, ValueError, ZeroDivisionError)):
        ExactScalar.of(bad)


def test_zero_drops_pi_power():
    assert ExactScalar(Fraction(0), 3) == ZERO
    assert hash(ExactScalar(Fraction(0), 3)) == hash(ZERO)


def test_equality_with_plain_numbers():
    assert ExactScalar(Fraction(3, 2)) == Fraction(3, 2)
    assert ONE == 1
    assert PI != 3
    assert hash(ExactScalar(Fraction(5))) == hash(5)


# --- arithmetic examples -----------------------------------------------------

def test_mul_example():
    assert s_mul(scalar("3/2"), scalar("4/3", 1)) == scalar(2, 1)


def test_add_identity_and_pi_closure():
    x = scalar("7/3", 1)
    assert s_add(x, ZERO) == x
    with pytest.raises(PiClosureError):
        s_add(ONE, PI)


def test_division_by_zero():
    with pytest.raises(ScalarZeroDivisionError):
        s_inv(ZERO)
    with pytest.raises(ZeroDivisionError):
        s_div(ONE, ZERO)


def test_compare_examples():
    assert s_cmp(scalar("1/2"), scalar("1/2")) == 0
    assert s_cmp(PI, scalar(3)) == 1
    assert s_cmp(ZERO, scalar(1, -1)) == -1
    assert PI < scalar("3.1415926536")
    assert PI > scalar("3.1415926535")


def test_compare_needs_more_digits():
    # agrees with pi to 100 places, so 64-digit bounds cannot separate it
    lo, _ = pi_bounds(100)
    assert s_cmp(PI, ExactScalar(lo)) == 1
    assert s_cmp(ExactScalar(lo + Fraction(1, 10**100)), PI) == 1


def test_compare_exhaustion():
    lo, _ = pi_bounds(280)
    with pytest.raises(PrecisionExhaustedError):
        s_cmp(PI, ExactScalar(lo + Fraction(1, 10**275)))


@pytest.mark.parametrize("digits", [0, 10, 64, 128, 256, 280])
def test_pi_bounds_bracket_pi(digits):
    lo, hi = pi_bounds(digits)
    with mpmath.workdps(320):
        p = +mpmath.pi
        assert mpmath.mpf(lo.numerator) / lo.denominator < p < mpmath.mpf(hi.numerator) / hi.denominator
    assert hi - lo == Fraction(1, 10**digits)


# --- rendering -----------------------------------------------------------------

@pytest.mark.parametrize(
    "value, digits, text",
    [
        (scalar("43200000/9143993"), 10, "4.724413065"),
        (scalar(3600), 10, "3600"),
        (scalar("0.764554857984"), 6, "0.764555"),
        (scalar("6.62607015e-34"), 10, "6.62607015e-34"),
        (scalar(1, 1), 5, "3.1416"),
        (scalar("2.5"), 1, "2"),  # half-even
        (scalar("3.5"), 1, "4"),
    ],
)
def test_render(value, digits, text):
    assert render(value, digits) == text


def test_render_exact():
    assert render_exact(scalar("1/3")) == "1/3"
    assert render_exact(scalar(648000, -1)) == "648000*pi^-1"
    assert render_exact(PI) == "pi"


# --- oracle: 50-digit mpmath arithmetic over random operations -------------------------

ops = st.sampled_from(["add", "sub", "mul", "div", "pow"])


@settings(max_examples=1000)
@given(ops, scalars(), scalars(), st.integers(min_value=-4, max_value=4))
def test_arithmetic_matches_mpmath(op, a, b, n):
    if op in ("add", "sub") and a.piexp != b.piexp and not (a.is_zero or b.is_zero):
        with pytest.raises(PiClosureError):
            (s_add if op == "add" else s_sub)(a, b)
        return
    if op == "div":
        assume(not b.is_zero)
    if op == "pow":
        assume(not (a.is_zero and n < 0))
    exact = {
        "add": lambda: s_add(a, b),
        "sub": lambda: s_sub(a, b),
        "mul": lambda: s_mul(a, b),
        "div": lambda: s_div(a, b),
        "pow": lambda: s_pow(a, n),
    }[op]()
    expected = {
        "add": lambda: mp(a) + mp(b),
        "sub": lambda: mp(a) - mp(b),
        "mul": lambda: mp(a) * mp(b),
        "div": lambda: mp(a) / mp(b),
        "pow": lambda: mp(a) ** n,
    }[op]()
    assert close(mp(exact), expected)
    f = to_fraction(exact, 64)
    assert close(mpmath.mpf(f.numerator) / f.denominator, expected)


@settings(max_examples=1000)
@given(scalars(), scalars())
def test_ordering_matches_mpmath(a, b):
    x, y = mp(a), mp(b)
    expected = (x > y) - (x < y)
    assert s_cmp(a, b) == expected


@settings(max_examples=300)
@given(scalars(), st.integers(min_value=1, max_value=30))
def test_render_matches_mpmath(a, digits):
    text = render(a, digits)
    got = mpmath.mpf(text)
    assert close(got, mp(a), rel=mpmath.mpf(10) ** (1 - digits)) or a.is_zero


@given(fractions, fractions)
def test_field_laws(p, q):
    a, b = ExactScalar(p), ExactScalar(q)
    assert a + b == b + a
    assert a * b == b * a
    assert (a - b) + b == a
    if q:
        assert (a / b) * b == a
