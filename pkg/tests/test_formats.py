from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from eeq import core_rel as cr
from eeq.constructions import CoCeFamily
from eeq.core_rel import ClosureOf, Coequalizer, Coproduct, EnumU, IdAll, IdN, Isolate, Kernel, Merge, Product, StageTrace
from eeq.errors import ParseError
from eeq.formats import format_family, format_trace, parse_family, parse_kbar, parse_relfile, parse_trace, resolve_relation
from eeq.funlang import Const, Double, Mod

DATA = Path(__file__).resolve().parents[1] / "src" / "eeq" / "data"


def test_trace_roundtrip_example():
    text = "merge 0 1 @0\nisolate 4 @2  # comment\n\nenumU 4 @2\n"
    tr = parse_trace(text)
    assert tr.events == (Merge(0, 1, 0), Isolate(4, 2), EnumU(4, 2))
    assert parse_trace(format_trace(tr)) == tr


@st.composite
def traces(draw):
    stages = sorted(draw(st.lists(st.integers(0, 50), max_size=12)))
    events, used = [], set()
    for t in stages:
        x = draw(st.integers(0, 40))
        pick = draw(st.integers(0, 2))
        if pick == 0:
            events.append(Merge(x, draw(st.integers(0, 40)), t))
        elif pick == 1 and x not in used:
            used.add(x)
            events.append(Isolate(x, t))
        else:
            events.append(EnumU(x, t))
    return StageTrace(tuple(events))


@given(traces())
def test_trace_roundtrip(tr):
    assert parse_trace(format_trace(tr)) == tr


def test_trace_errors():
    with pytest.raises(ParseError) as info:
        parse_trace("merge 0 1 @0\nsplit 3 @1\n")
    assert info.value.line == 2
    with pytest.raises(ParseError):
        parse_trace("merge 0 1 @4\nmerge 1 2 @1\n")


def test_family_roundtrip():
    fam = CoCeFamily(3, 9, ((1, 3, 4), (2, 4, 9)), ((0, 2),))
    assert parse_family(format_family(fam)) == fam


def test_family_errors():
    with pytest.raises(ParseError):
        parse_family("family E=2\nkeep 0 2\n")
    with pytest.raises(ParseError):
        parse_family("family E=2 horizon=5\nremove 0 2\n")
    with pytest.raises(ParseError):
        parse_family("")


def test_bundled_files_parse():
    fam = parse_family((DATA / "family_e8.txt").read_text())
    assert fam.E == 8 and fam.horizon == 64
    k = parse_kbar((DATA / "kbar.txt").read_text())
    assert k.horizon == 64 and k.k_at(64)


def test_relfile_forms(tmp_path):
    (tmp_path / "t.txt").write_text("isolate 5 @1\n")
    text = """
    rel A = idn 3          # congruence
    rel B = kernel mod 2
    rel C = frompairs [(0,1)@0, (1, 5)@2]
    rel D = funrange pair(id, succ)
    rel E = product A B
    rel F = coproduct A idn1
    rel G = coeq A const 0 double
    rel H = closure id [(0,7), (2,3)]
    rel I = coceer seed=[[0],[*]] trace=t.txt
    rel J = id
    """
    env = parse_relfile(text, tmp_path)
    assert env["A"] == IdN(3)
    assert env["B"] == Kernel(Mod(2))
    assert cr.approximant(env["C"], 2, 6).classes() == [[0, 1, 5], [2], [3], [4]]
    assert cr.classes_count(env["D"], 4, 8) == 4
    assert env["E"] == Product(IdN(3), Kernel(Mod(2)))
    assert env["F"] == Coproduct(IdN(3), IdN(1))
    assert env["G"] == Coequalizer(IdN(3), Const(0), Double())
    assert env["H"] == ClosureOf(IdAll(), ((0, 7), (2, 3)))
    assert cr.approximant(env["I"], 1, 7).classes() == [[0], [1, 2, 3, 4, 6], [5]]
    assert env["J"] == IdAll()


@pytest.mark.parametrize(
    "text, line",
    [
        ("rel A = idn 3\nrel A = id", 2),
        ("rel A = idn 3\nrel B = product A Q", 2),
        ("rel A = wibble", 1),
        ("A = id", 1),
        ("rel A = frompairs [(0,1)]", 1),
        ("rel A = id\nrel B = kernel mod 0", 2),
        ("rel A = frompairs [(0,1)@3, (1,2)@1]", 1),
        ("rel A = coeq id const 0", 1),
    ],
)
def test_relfile_errors(text, line):
    with pytest.raises(ParseError) as info:
        parse_relfile(text)
    assert info.value.line == line


def test_resolve_inline():
    assert resolve_relation("idn4", {}) == IdN(4)
    assert resolve_relation("id", {}) == IdAll()
    with pytest.raises(KeyError):
        resolve_relation("nope", {})


def test_bundled_remark_relfile():
    env = parse_relfile((DATA / "remark.rel").read_text(), DATA)
    assert cr.classes_count(env["Z"], 64, 64) == 1
