import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from eeq import category_ops as co
from eeq import core_rel as cr
from eeq import laws
from eeq.core_rel import IdAll, IdN


@given(st.integers(0, 2**32))
def test_random_preserving_is_a_morphism(seed):
    rng = random.Random(seed)
    R = laws.random_relation(rng, 16)
    f = laws.random_preserving(rng, R, 16, 64, rng.randint(1, 9))
    assert co.check_preserving(f, R, IdAll(), 16, 64).ok


@given(st.integers(0, 2**32))
def test_canonicalizer_picks_least_members(seed):
    rng = random.Random(seed)
    R = laws.random_relation(rng, 16)
    c = laws.canonicalizer(R, 16, 32)
    assert [c(x) for x in range(32)] == list(cr.approximant(R, 16, 32).reps)


@given(st.integers(0, 2**32), st.integers(1, 12))
def test_random_term_respects_cap(seed, cap):
    from eeq.funlang import size

    assert size(laws.random_term(random.Random(seed), cap)) <= cap


@pytest.mark.parametrize("name", sorted(laws.SUITES))
def test_suites_pass_small(name):
    reports = laws.run_suite(name, 3, 4)
    assert all(r.ok for r in reports), [r.line() for r in reports]


def test_candidate_families_are_large_enough():
    r = laws.product_instance(11)
    assert r.candidates >= laws.MIN_CANDIDATES and r.commuting >= 1
    r = laws.coproduct_instance(11)
    assert r.candidates >= laws.MIN_CANDIDATES and r.commuting >= 1


def test_run_suite_is_order_stable():
    one = laws.run_suite("coeq-laws", 5, 4, jobs=1)
    two = laws.run_suite("coeq-laws", 5, 4, jobs=2)
    assert one == two


def test_coequalizer_oracle_matches_direct():
    from eeq.funlang import Const, Double

    reps = laws.coequalizer_oracle(IdN(3), Const(0), Double(), 8, 20)
    assert reps == cr.approximant(cr.Coequalizer(IdN(3), Const(0), Double()), 8, 20).reps


def test_terminal_uniqueness_report():
    r = laws.terminal_uniqueness(IdN(4), 0)
    assert r.ok and r.candidates == 50
    assert r.line().startswith("law=terminal seed=0 status=ok")
