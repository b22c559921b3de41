from hypothesis import strategies as st

from eeq.funlang import (
    Add,
    Compose,
    Const,
    Double,
    DoublePlus1,
    Half,
    Id,
    IfLess,
    Mod,
    Mul,
    Pair,
    Proj0,
    Proj1,
    Succ,
    Table,
)

leaves = st.one_of(
    st.sampled_from([Id(), Succ(), Double(), DoublePlus1(), Half(), Proj0(), Proj1()]),
    st.integers(0, 50).map(Const),
    st.integers(1, 9).map(Mod),
)


def _extend(children):
    return st.one_of(
        st.builds(Pair, children, children),
        st.builds(Compose, children, children),
        st.builds(Add, children, children),
        st.builds(Mul, children, children),
        st.builds(IfLess, children, children, children, children),
        st.builds(Table, st.dictionaries(st.integers(0, 20), st.integers(0, 20), max_size=3), children),
    )


terms = st.recursive(leaves, _extend, max_leaves=6)

pair_sets = st.integers(1, 8).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=12))
)
