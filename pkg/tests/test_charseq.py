import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rangemodes import CharSeq


def test_access_range_basic():
    seq = CharSeq([10, 11, 12, 13])
    assert seq.access_range(1, 2) == [11, 12]


def test_access_range_singleton():
    seq = CharSeq([7])
    assert seq.access_range(0, 0) == [7]


def test_access_range_full():
    seq = CharSeq([1, 2, 1])
    assert seq.access_range(0, 2) == [1, 2, 1]


def test_access_range_leaves_sequence_unchanged():
    seq = CharSeq([5, 6, 7])
    seq.access_range(0, 2)
    assert seq.to_list() == [5, 6, 7]


@pytest.mark.parametrize("lo,hi", [(-1, 0), (0, 3), (2, 1), (3, 3)])
def test_access_range_bounds(lo, hi):
    seq = CharSeq([1, 2, 3])
    with pytest.raises(IndexError):
        seq.access_range(lo, hi)


def test_insert_middle():
    seq = CharSeq([1, 2])
    seq.insert_at(1, 9)
    assert seq.to_list() == [1, 9, 2]


def test_insert_into_empty():
    seq = CharSeq()
    seq.insert_at(0, 4)
    assert seq.to_list() == [4]
    assert len(seq) == 1


def test_insert_append():
    seq = CharSeq([1])
    seq.insert_at(1, 2)
    assert seq.to_list() == [1, 2]


def test_insert_out_of_range():
    seq = CharSeq([1])
    with pytest.raises(IndexError):
        seq.insert_at(2, 5)
    with pytest.raises(IndexError):
        seq.insert_at(-1, 5)


def test_delete_front():
    seq = CharSeq([1, 2, 3])
    assert seq.delete_at(0) == 1
    assert seq.to_list() == [2, 3]


def test_delete_only_element():
    seq = CharSeq([1])
    assert seq.delete_at(0) == 1
    assert seq.to_list() == []
    assert len(seq) == 0


def test_delete_last():
    seq = CharSeq([1, 2])
    assert seq.delete_at(1) == 2
    assert seq.to_list() == [1]


def test_delete_out_of_range():
    with pytest.raises(IndexError):
        CharSeq().delete_at(0)
    with pytest.raises(IndexError):
        CharSeq([1]).delete_at(1)


def test_getitem():
    seq = CharSeq([4, 5, 6])
    assert [seq[i] for i in range(3)] == [4, 5, 6]
    with pytest.raises(IndexError):
        seq[3]


def test_distinct_inserts_read_back_in_order():
    seq = CharSeq()
    for k in range(50):
        seq.insert_at(len(seq), k)
    assert seq.access_range(0, 49) == list(range(50))


def test_differential_against_list_mirror():
    # Long interleaving crossing many chunk splits and merges.
    rng = random.Random(1234)
    seq = CharSeq()
    mirror: list[int] = []
    for step in range(20000):
        n = len(mirror)
        if n == 0 or rng.random() < 0.55:
            pos = rng.randint(0, n)
            sym = rng.randrange(1000)
            seq.insert_at(pos, sym)
            mirror.insert(pos, sym)
        else:
            pos = rng.randrange(n)
            assert seq.delete_at(pos) == mirror.pop(pos)
        if step % 500 == 0 and mirror:
            lo = rng.randrange(len(mirror))
            hi = rng.randint(lo, len(mirror) - 1)
            assert seq.access_range(lo, hi) == mirror[lo : hi + 1]
    assert seq.to_list() == mirror


@settings(max_examples=50, deadline=None)
@given(
    st.lists(
        st.tuples(st.integers(0, 10**6), st.integers(0, 5), st.booleans()),
        max_size=60,
    )
)
def test_property_matches_list(ops):
    seq = CharSeq()
    mirror: list[int] = []
    for raw_pos, sym, is_insert in ops:
        if is_insert or not mirror:
            pos = raw_pos % (len(mirror) + 1)
            seq.insert_at(pos, sym)
            mirror.insert(pos, sym)
        else:
            pos = raw_pos % len(mirror)
            assert seq.delete_at(pos) == mirror.pop(pos)
    assert seq.to_list() == mirror
    assert len(seq) == len(mirror)
