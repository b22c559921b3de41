from pathlib import Path

import pytest

from eeq.cli import build_parser, main, run

GOLDEN = Path(__file__).parent / "golden"
DATA = Path(__file__).resolve().parents[1] / "src" / "eeq" / "data"

GOLDEN_CASES = {
    "show_idn3": ["show", "-", "idn3", "--scope", "1,9", "--format", "structured"],
    "verify_reduction": ["verify", "reduction", "f=id", "R=idn4", "S=idn2", "--format", "structured"],
    "construct_counter_pi1": ["construct", "counter-pi1", "--scope", "64,64", "--format", "structured"],
    "construct_epi": ["construct", "epi-not-onto", "--scope", "64,64", "--format", "structured"],
    "construct_remark": ["construct", "remark", "X=idn3", "--scope", "64,64", "--format", "structured"],
}


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden(name):
    code, out, _ = run(GOLDEN_CASES[name])
    assert out == (GOLDEN / f"{name}.txt").read_text()
    assert code in (0, 1)


def test_show_human():
    code, out, _ = run(["show", "-", "idn3", "--scope", "1,9"])
    assert (code, out) == (0, "[0]={0,3,6} [1]={1,4,7} [2]={2,5,8}\n")
    code, out, _ = run(["show", "-", "id", "--scope", "1,3"])
    assert out == "[0]={0} [1]={1} [2]={2}\n"


def test_show_remark_relfile_single_class():
    code, out, _ = run(["show", str(DATA / "remark.rel"), "Z", "--scope", "64,64"])
    assert code == 0 and out.count("[") == 1 and out.startswith("[0]={0,1,2,")


def test_verify_exit_codes():
    code, out, _ = run(["verify", "reduction", "f=id", "R=idn4", "S=idn2"])
    assert code == 1 and out == "cex x=0 y=2\n"
    assert run(["verify", "reduction", "f=double", "R=id", "S=id"])[0] == 0
    assert run(["verify", "terminal", "R=id"])[0] == 0
    assert run(["verify", "initial", "X=idn1"])[0] == 0
    code, out, _ = run(["verify", "preserving", "f=double", "R=id", "S=id", "--scope", "4,8", "--strict-range"])
    assert code == 2 and out == "unknown need_n=15\n"


def test_verify_coeq_laws_seed_42():
    code, out, _ = run(["verify", "coeq-laws", "instances=5", "--seed", "42"])
    assert code == 0 and out.splitlines()[-1] == "summary passed=5/5 status=ok"


def test_verify_with_relfile(tmp_path):
    rel = tmp_path / "r.rel"
    rel.write_text("rel M = kernel mod 6\n")
    code, out, _ = run(["--relfile", str(rel), "verify", "preserving", "f=mod 3", "R=M", "S=idn3"])
    assert code == 0


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["verify", "bogus"],
        ["verify", "reduction", "f=id"],
        ["verify", "reduction", "f=id", "R=nowhere", "S=id"],
        ["verify", "reduction", "f=pair(id)", "R=id", "S=id"],
        ["verify", "reduction", "noequals"],
        ["show", "-", "idn3", "--scope", "3"],
        ["show", "-", "idn3", "--scope", "0,4"],
        ["construct", "counter-pi1", "family=/does/not/exist"],
    ],
)
def test_usage_errors_exit_64(argv, capsys):
    assert main(argv) == 64


def test_construct_writes_files(tmp_path):
    code, out, _ = run(["construct", "counter-pi1", "--out", str(tmp_path)])
    assert code == 0
    assert "check diagonal=pass diagonal ok 8/8" in out and "classes=2" in out
    assert (tmp_path / "diagnostics.txt").read_text() == out
    assert (tmp_path / "trace.txt").read_text().startswith("isolate 3 @5\nenumU 3 @5\n")


def test_construct_remark():
    code, out, _ = run(["construct", "remark", "X=idn3"])
    assert code == 0 and "classes=1" in out


def test_construct_empty_kbar_exits_65(tmp_path):
    kbar = tmp_path / "k.txt"
    kbar.write_text("kbar horizon=8\n")
    code, _, err = run(["construct", "epi-not-onto", f"kbar={kbar}"])
    assert code == 65 and "nonempty-C" in err


def test_construct_bad_family_exits_65(tmp_path):
    fam = tmp_path / "f.txt"
    fam.write_text("family E=2 horizon=4\nextract 0 2 @0\n")
    code, _, err = run(["construct", "counter-pi1", f"family={fam}"])
    assert code == 65 and "anti-monotone" in err


def test_construct_failed_diagnostic_exits_1():
    # Y = idn2 with no light witness into it: id is not a reduction of Id to Id_2
    code, out, _ = run(["construct", "darkstar", "X=id", "Y=idn2", "light=id"])
    assert code == 1 and "result=fail" in out


def test_construct_case_identities():
    argv = ["construct", "epi-not-onto", "f1=mod 2", "f2=table{6->0 7->1 14->0 15->1 24->0 25->1 40->0 41->1} else const 0", "S=id"]
    code, out, _ = run(argv)
    assert code == 0 and "case=2" in out


def test_trace_replay(tmp_path):
    tr = tmp_path / "t.txt"
    tr.write_text("isolate 4 @2\nenumU 4 @2\n")
    code, out, _ = run(["trace-replay", str(tr), "--scope", "4,8", "--format", "structured"])
    assert code == 0
    assert out.splitlines() == [
        "kind=coceer",
        "events=2",
        "stage=0 classes=2 [0]={0} [1]={1,2,3,4,5,6,7}",
        "stage=2 classes=3 [0]={0} [1]={1,2,3,5,6,7} [4]={4}",
        "U=4",
    ]
    code, out, _ = run(["trace-replay", str(tr), "seed=[[*]]", "--scope", "4,6"])
    assert out.splitlines()[-2] == "stage 2: [0]={0,1,2,3,5} [4]={4}"
    tr.write_text("merge 0 3 @1\n")
    code, out, _ = run(["trace-replay", str(tr), "--scope", "4,4"])
    assert out.splitlines()[-1] == "stage 1: [0]={0,3} [1]={1} [2]={2}"


def test_flags_before_or_after_subcommand():
    a = build_parser().parse_args(["--scope", "3,5", "show", "-", "id"])
    b = build_parser().parse_args(["show", "-", "id", "--scope", "3,5"])
    assert a.scope == b.scope == (3, 5)


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_structured_output_deterministic(name):
    assert run(GOLDEN_CASES[name]) == run(GOLDEN_CASES[name])
