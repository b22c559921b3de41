import pytest
from hypothesis import given
from hypothesis import strategies as st

from eeq.errors import OverflowFault
from eeq.oracles import diagonal_listing
from eeq.pairing import WORD_LIMIT, cantor_pair, cantor_proj

naturals = st.integers(0, 10**6)


def test_base_cases():
    assert cantor_pair(0, 0) == 0
    assert cantor_proj(0) == (0, 0)


def test_closed_form_matches_diagonal_walk():
    listing = diagonal_listing(40)
    assert listing[(1, 2)] == 8
    for (x, y), idx in listing.items():
        assert cantor_pair(x, y) == idx
    assert cantor_proj(8) == (1, 2)


@given(naturals, naturals)
def test_proj_inverts_pair(x, y):
    assert cantor_proj(cantor_pair(x, y)) == (x, y)


@given(st.integers(0, 10**12))
def test_pair_inverts_proj(z):
    assert cantor_pair(*cantor_proj(z)) == z


def test_overflow_is_a_fault():
    big = 1 << 33
    with pytest.raises(OverflowFault):
        cantor_pair(big, big)
    x = 0
    while cantor_pair(x, 0) < WORD_LIMIT // 4:
        x = 2 * x + 1
    assert cantor_proj(cantor_pair(x, 0)) == (x, 0)


def test_negative_rejected():
    with pytest.raises(ValueError):
        cantor_pair(-1, 0)
    with pytest.raises(ValueError):
        cantor_proj(-3)
