"""Acceptance criteria, one test each, timed against the stated limits.

Each test prints a single ``ACCEPT <id> pass|fail ...`` line to the terminal,
including when run without ``-s``.
"""

import json
import random
import subprocess
import sys
import time
from contextlib import contextmanager

import pytest

from eeq import category_ops as co
from eeq import constructions as cons
from eeq import core_rel as cr
from eeq import laws
from eeq.cli import run
from eeq.core_rel import IdAll, IdN
from eeq.funlang import Id, Pair, Table
from eeq.oracles import matrix_closure, matrix_reps
from eeq.pairing import cantor_pair, cantor_proj


@pytest.fixture
def criterion(capsys):
    @contextmanager
    def _run(cid: str, title: str, limit: float):
        start = time.perf_counter()
        status, detail = "fail", ""
        try:
            yield
            elapsed = time.perf_counter() - start
            status = "pass" if elapsed < limit else "fail"
            detail = f"{elapsed:.2f}s < {limit:g}s" if status == "pass" else f"{elapsed:.2f}s exceeds {limit:g}s"
        except AssertionError as err:
            detail = f"assertion: {str(err).splitlines()[0] if str(err) else 'failed'}"
            raise
        finally:
            with capsys.disabled():
                print(f"\nACCEPT {cid} {status} {title} ({detail})")
        assert status == "pass", detail

    return _run


def test_c01_closure_oracle(criterion):
    with criterion("C01", "closure equals matrix oracle, n<=8 x 200 sets", 5):
        mismatches = 0
        for n in range(1, 9):
            for seed in range(200):
                rng = random.Random(n * 1000 + seed)
                pairs = [(rng.randrange(n), rng.randrange(n)) for _ in range(rng.randint(0, 2 * n))]
                if cr.equivalence_closure(pairs, n).reps != matrix_reps(matrix_closure(pairs, n)):
                    mismatches += 1
        assert mismatches == 0


def test_c02_pairing(criterion):
    with criterion("C02", "pairing mutually inverse on [0,200)^2 and [0,10^4)", 1):
        assert all(cantor_proj(cantor_pair(x, y)) == (x, y) for x in range(200) for y in range(200))
        assert all(cantor_pair(*cantor_proj(z)) == z for z in range(10**4))


def test_c03_product_coproduct_laws(criterion):
    with criterion("C03", "product and coproduct laws, 100 instances at (32,256), cap 7", 60):
        for name in ("product-laws", "coproduct-laws"):
            reports = laws.run_suite(name, 0, 100, s=32, n=256, cap=7)
            bad = [r.line() for r in reports if not r.ok]
            assert not bad, bad[:3]
            assert min(r.candidates for r in reports) >= 50


def test_c04_coequalizer_laws(criterion):
    with criterion("C04", "coequalizer laws and closure oracle, 100 instances at (32,128)", 30):
        reports = laws.run_suite("coeq-laws", 0, 100, s=32, n=128)
        bad = [r.line() for r in reports if not r.ok]
        assert not bad, bad[:3]


def test_c05_ceer_roundtrip(criterion):
    with criterion("C05", "ceer-as-coequalizer roundtrip, 50 table-backed h at n=32", 10):
        for seed in range(50):
            rng = random.Random(seed)
            table = {i: cantor_pair(rng.randrange(32), rng.randrange(32)) for i in range(rng.randint(1, 32))}
            assert cons.ceer_as_coequalizer(Table(table, Pair(Id(), Id())), 32, 32).roundtrip, seed


def test_c06_two_class_machine(criterion):
    with criterion("C06", "bundled family: 2 classes and diagonal 8/8 on [0,64)", 5):
        fam = cons.bundled_family()
        assert (fam.E, fam.horizon) == (8, 64)
        res = cons.counter_pi1_machine(fam, 64, 64)
        assert cr.classes_count(res.Z, res.final_stage, 64) == 2
        for e in range(8):
            assert cr.related_at(res.Z, res.final_stage, 64, 0, e + 2) == (not fam.final_member(e, e + 2))


def test_c07_epi_not_onto(criterion):
    with criterion("C07", "epi example: reduction ok, exactly A and B omitted on [0,64)", 5):
        k = cons.bundled_kbar()
        res = cons.epi_not_onto_example(k, k.horizon, 64)
        m = len(res.C)
        assert co.reduction_check(res.f, IdAll(), res.R, res.s, 64, domain=m).ok
        v = co.surjective_at(res.alpha, res.s, 64, domain=m)
        assert v.status == "cex"
        approx = cr.approximant(res.R, res.s, 64)
        omitted = sorted(tuple(c) for c in approx.classes() if c[0] in v.missed)
        assert omitted == sorted([res.A, res.B])


def test_c08_mono_separation(criterion):
    with criterion("C08", "mono separation pairs, 50 non-injective morphisms", 10):
        reports = laws.run_suite("mono", 0, 50)
        bad = [r.line() for r in reports if not r.ok]
        assert not bad, bad[:3]


def test_c09_terminal_initial(criterion):
    with criterion("C09", "terminal uniqueness over 50 morphisms; Id2 refutation distinct", 5):
        for R in (IdAll(), IdN(2), IdN(3)):
            r = laws.terminal_uniqueness(R, 0, family=50)
            assert r.ok and r.candidates == 50, r.line()
        for X in (IdAll(), IdN(1), IdN(3)):
            a, b = co.initial_refutation(X)
            assert not co.morphism_eq(a, b, 16, 64)


def test_c10_remark(criterion):
    with criterion("C10", "remark coequalizer has one class at (64,64)", 5):
        rng = random.Random(0)
        xs = [IdAll(), IdN(3)] + [laws.random_frompairs(rng, 64) for _ in range(10)]
        for X in xs:
            diag = cons.remark_demo(X, 64, 64)
            assert diag.ok, diag.lines()


STRUCTURED_RUNS = [
    ["show", "-", "idn3", "--scope", "1,9"],
    ["verify", "reduction", "f=id", "R=idn4", "S=idn2"],
    ["verify", "surjective", "f=double", "R=id", "S=id", "--scope", "8,8"],
    ["verify", "product-laws", "instances=3", "--seed", "7"],
    ["verify", "coproduct-laws", "instances=3", "--seed", "7"],
    ["verify", "coeq-laws", "instances=3", "--seed", "7", "--jobs", "2"],
    ["verify", "terminal", "R=id", "--seed", "7"],
    ["verify", "initial", "X=idn3"],
    ["construct", "counter-pi1", "--scope", "64,64"],
    ["construct", "epi-not-onto", "--scope", "64,64"],
    ["construct", "ceer-coeq", "h=pair(id, add(id, const 2))", "--scope", "64,32"],
    ["construct", "remark", "X=idn3", "--scope", "64,64"],
    ["construct", "darkstar", "X=id", "Y=id", "light=id"],
]


def test_c11_determinism(criterion, tmp_path):
    with criterion("C11", "structured CLI output byte-identical across two runs", 10):
        trace = tmp_path / "t.txt"
        trace.write_text("isolate 4 @2\nenumU 4 @2\nisolate 6 @5\n")
        runs = STRUCTURED_RUNS + [["trace-replay", str(trace), "--scope", "8,16"]]
        runs = [argv + ["--format", "structured"] for argv in runs]
        for argv in runs:
            first, second = run(argv), run(argv)
            assert first == second, argv
            assert first[1], argv
        # and across fresh interpreters, where no cache can hide nondeterminism
        script = "import json, sys\nfrom eeq.cli import run\nprint(json.dumps([run(a) for a in json.loads(sys.argv[1])]))"
        outs = [
            subprocess.run([sys.executable, "-c", script, json.dumps(runs)], capture_output=True, text=True, check=True).stdout
            for _ in range(2)
        ]
        assert outs[0] == outs[1]
