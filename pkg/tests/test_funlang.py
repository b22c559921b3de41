import pytest
from hypothesis import given
from hypothesis import strategies as st

from eeq.errors import OverflowFault, ParseError
from eeq.funlang import (
    Compose,
    Const,
    Double,
    Id,
    Mod,
    Pair,
    Proj0,
    Proj1,
    Succ,
    Table,
    compile_fun,
    evaluate,
    parse,
    parse_sequence,
    size,
    subterms,
    to_text,
)
from eeq.pairing import cantor_pair

from .strategies import terms


def test_eval_examples():
    assert evaluate(Id(), 7) == 7
    assert evaluate(Double(), 5) == 10
    f = Compose(Proj0(), Pair(Const(3), Id()))
    assert all(evaluate(f, x) == 3 for x in range(100))


def test_parse_examples():
    assert parse("double") == Double()
    f = parse("compose(succ, const 4)")
    assert f == Compose(Succ(), Const(4))
    assert {evaluate(f, x) for x in range(10)} == {5}


def test_mod_zero_rejected_at_parse():
    with pytest.raises(ParseError):
        parse("mod 0")
    with pytest.raises(ValueError):
        Mod(0)


def test_print_examples():
    assert to_text(Double()) == "double"
    t = Table({2: 9}, Id())
    back = parse(to_text(t))
    assert back == t
    assert evaluate(back, 2) == 9 and evaluate(back, 5) == 5


def test_table_accepts_commas_and_sorts():
    assert parse("table{4->1, 2->9} else id") == Table({2: 9, 4: 1}, Id())
    assert to_text(Table({4: 1, 2: 9}, Id())) == "table{2->9 4->1} else id"


@pytest.mark.parametrize(
    "text, line, col",
    [("pair(id)", 1, 1), ("compose(succ,\n  bogus)", 2, 3), ("const", 1, 6), ("id id", 1, 4)],
)
def test_parse_errors_carry_position(text, line, col):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert (info.value.line, info.value.col) == (line, col)


def test_parse_sequence():
    assert parse_sequence("const 0 id") == [Const(0), Id()]
    assert parse_sequence("pair(id, id) table{} else succ") == [Pair(Id(), Id()), Table({}, Succ())]


@given(terms)
def test_print_parse_roundtrip(e):
    assert parse(to_text(e)) == e
    assert to_text(parse(to_text(e))) == to_text(e)


@given(terms, st.integers(0, 200))
def test_total_or_overflow(e, x):
    # every term is total; the only failure mode is leaving the word range
    try:
        v = evaluate(e, x)
    except OverflowFault:
        return
    assert isinstance(v, int) and v >= 0
    assert compile_fun(e)(x) == v


@given(terms)
def test_size_counts_subterms(e):
    assert size(e) == sum(1 for _ in subterms(e))


@given(st.integers(0, 500), st.integers(0, 500))
def test_projections_of_pair(a, b):
    f = Pair(Const(a), Const(b))
    assert evaluate(f, 0) == cantor_pair(a, b)
    assert evaluate(Compose(Proj0(), f), 0) == a
    assert evaluate(Compose(Proj1(), f), 0) == b
