import io
from fractions import Fraction

import pytest

from qcalc.cli import main
from qcalc.corpus import (
    bundled_corpus,
    compare,
    parse_corpus,
    parse_line,
    verify,
    verify_file,
)
from qcalc.errors import CorpusError, DimensionMismatchError, SystemMismatchError
from qcalc.parser import eval_ast, evaluate, render_ast
from qcalc.quantity import q_equiv


def test_parse_line_parts():
    a = parse_line("to[SI](1 BIS:ounce) ~= 37.8 gram @ 1e-3 !erratum wrong figure", 7)
    assert a.op == "~=" and a.tol == Fraction(1, 1000)
    assert a.erratum and a.note == "wrong figure"
    assert a.lineno == 7


def test_comments_and_blank_lines():
    assert parse_line("   # nothing here") is None
    assert parse_line("") is None
    a = parse_line("1 hour == 3600 second  # trailing comment")
    assert a.op == "=="


@pytest.mark.parametrize(
    "line, op",
    [("joule ≅ newton*metre", "~"), ("1 hour = 3600 second", "=="),
     ("3 metre ≤ 4 metre", "<="), ("1 yard ≈ 0.9 metre @ 1/5", "~=")],
)
def test_unicode_relations(line, op):
    assert parse_line(line).op == op


def test_operator_inside_brackets_is_ignored():
    a = parse_line("dnorm[L*T^-1](metre / second) == metre / second")
    assert a.op == "=="


@pytest.mark.parametrize(
    "line, fragment",
    [
        ("metre metre", "no comparison operator"),
        ("1 yard ~= 0.9 metre", "tolerance"),
        ("1 yard ~= 0.9 metre @ -1", "tolerance"),
        ("1 yard ~= 0.9 metre @ abc", "tolerance"),
        ("== metre", "both sides"),
        ("metre == foo", "syntax error"),
    ],
)
def test_bad_lines(line, fragment):
    with pytest.raises(CorpusError) as info:
        parse_line(line, 3)
    assert fragment in str(info.value)
    assert "line 3" in str(info.value)


def test_compare_relations():
    m3, m4, kg = evaluate("3 metre"), evaluate("4 metre"), evaluate("4 kilogram")
    assert compare(m3, "<=", m4)
    assert not compare(m3, "<=", kg)
    assert not compare(m3, "~", kg)
    with pytest.raises(DimensionMismatchError):
        compare(m3, "==", kg)
    with pytest.raises(SystemMismatchError):
        compare(m3, "==", evaluate("3 BIS:yard"))
    assert compare(evaluate("1 yard"), "~=", evaluate("0.9 metre"), Fraction(2, 100))
    assert not compare(evaluate("1 yard"), "~=", evaluate("0.9 metre"), Fraction(1, 100))


def test_verify_counts():
    rep = verify(parse_corpus(
        "1 hour == 3600 second\n"
        "1 hour == 3601 second\n"
        "1 hour == 3601 second !erratum known bad\n"
        "metre == kilogram\n"
    ))
    assert (rep.passed, rep.failed, rep.errata) == (1, 2, 1)
    assert not rep.ok
    assert "dimension mismatch" in rep.results[3].detail


def test_empty_corpus():
    rep = verify(parse_corpus(""))
    assert (rep.passed, rep.failed, rep.errata) == (0, 0, 0)
    assert rep.ok


def test_missing_file(tmp_path):
    with pytest.raises(CorpusError):
        verify_file(tmp_path / "absent.qeq")


def test_bundled_corpus_passes():
    rep = verify_file(bundled_corpus())
    assert rep.ok, [r.assertion.text for r in rep.results if r.verdict == "fail"]
    assert rep.failed == 0
    assert rep.errata == 3
    assert rep.passed >= 70
    assert rep.elapsed < 5


def test_bundled_errata_hold_or_not_as_documented():
    rep = verify_file(bundled_corpus())
    errata = {r.assertion.text.split("!erratum")[0].strip(): r.holds for r in rep.results
              if r.verdict == "erratum"}
    assert errata["to[SI](30 BIS:pound) ~= 9.07 kilogram @ 1e-3"] is False
    assert errata["to[SI](1 BIS:ounce) ~= 37.8 gram @ 1e-3"] is False
    assert errata["to[SI](1/12 BIS:pound) ~= 37.8 gram @ 1e-3"] is True


def test_cli_equiv_agrees_with_q_equiv_on_corpus():
    for a in parse_corpus(bundled_corpus().read_text(encoding="utf-8")):
        lhs, rhs = eval_ast(a.lhs), eval_ast(a.rhs)
        if lhs.system != rhs.system:
            continue
        argv = ["eq", render_ast(a.lhs), "~", render_ast(a.rhs)]
        code = main(argv, out=io.StringIO(), err=io.StringIO())
        assert (code == 0) == q_equiv(lhs, rhs), a.text
