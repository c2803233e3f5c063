import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from omv.structures import IndexedMultiset, RangeMinIndex


def test_multiset_basic_flow():
    ms = IndexedMultiset(10)
    assert ms.min() is None
    ms.insert(4, "a")
    ms.insert(4, "b")
    ms.insert(7, "c")
    assert len(ms) == 3
    assert ms.min() == 4
    assert ms.count_le(3) == 0
    assert ms.count_le(4) == 2
    assert ms.count_le(10) == 3
    assert sorted(ms.enumerate_le(5, cap=5)) == ["a", "b"]
    assert ms.enumerate_le(7, cap=2) is None  # 3 payloads exceed the cap
    ms.remove(4, "a")
    assert ms.min() == 4
    ms.remove(4, "b")
    assert ms.min() == 7


def test_multiset_boundary_keys():
    ms = IndexedMultiset(0)
    ms.insert(0, 1)
    assert ms.min() == 0 and ms.count_le(0) == 1
    ms = IndexedMultiset(5)
    ms.insert(5, "x")
    assert ms.min() == 5
    assert ms.enumerate_le(5, cap=1) == ["x"]


def _naive_enumerate(pairs, key, cap):
    chosen = [p for k, p in pairs if k <= key]
    return None if len(chosen) > cap else sorted(chosen)


@settings(max_examples=60, deadline=None)
@given(
    st.lists(
        st.tuples(st.integers(0, 15), st.integers(0, 999)),
        max_size=40,
        unique_by=lambda kp: kp[1],
    ),
    st.integers(0, 16),
    st.integers(0, 20),
)
def test_multiset_against_naive_model(pairs, probe, cap):
    ms = IndexedMultiset(15)
    for key, payload in pairs:
        ms.insert(key, payload)
    keys = sorted(k for k, _ in pairs)
    assert len(ms) == len(pairs)
    assert ms.min() == (keys[0] if keys else None)
    assert ms.count_le(probe) == sum(1 for k in keys if k <= probe)
    got = ms.enumerate_le(probe, cap)
    want = _naive_enumerate(pairs, probe, cap)
    assert (got is None) == (want is None)
    if got is not None:
        assert sorted(got) == want


def test_multiset_random_churn():
    rng = random.Random(3)
    ms = IndexedMultiset(20)
    live: dict[int, int] = {}
    for step in range(500):
        if live and rng.random() < 0.4:
            payload = rng.choice(list(live))
            ms.remove(live.pop(payload), payload)
        else:
            payload = step
            key = rng.randint(0, 20)
            live[payload] = key
            ms.insert(key, payload)
        assert len(ms) == len(live)
        if live:
            assert ms.min() == min(live.values())
        probe = rng.randint(0, 20)
        assert ms.count_le(probe) == sum(1 for k in live.values() if k <= probe)


def test_range_min_basic():
    rmq = RangeMinIndex([5, 2, 7, 2, 9])
    assert rmq.range_min(0, 5) == (2, 1)  # leftmost of the tied minima
    assert rmq.range_min(2, 5) == (2, 3)
    assert rmq.range_min(2, 3) == (7, 2)
    with pytest.raises(ValueError):
        rmq.range_min(3, 3)


def test_range_min_against_naive():
    rng = random.Random(11)
    for _ in range(60):
        n = rng.randint(1, 30)
        data = [rng.randint(0, 6) for _ in range(n)]
        rmq = RangeMinIndex(data)
        for _ in range(30):
            lo = rng.randrange(n)
            hi = rng.randint(lo + 1, n)
            window = data[lo:hi]
            value = min(window)
            assert rmq.range_min(lo, hi) == (value, lo + window.index(value))
