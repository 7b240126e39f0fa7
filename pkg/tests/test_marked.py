"""Marked-set domination and tightness against hand-computed arithmetic."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from risethresh.curves import MEDIUM_MIN, mark_budget
from risethresh.marked import MarkedSet


def test_construction():
    ms = MarkedSet(10)
    assert len(ms) == 0
    assert ms.sizes == ()
    assert ms.dominated()
    assert ms.min_tight() is None
    for bad in (0, -1, 2.5, "3"):
        with pytest.raises(ValueError):
            MarkedSet(bad)


def test_within_budget_examples():
    # 1/10 <= mark_budget(0.3) ~ 0.124, but 1/4 is over it
    assert MarkedSet(10).within_budget(0.3)
    assert not MarkedSet(4).within_budget(0.3)
    # empty set is vacuously dominated
    assert MarkedSet(2).dominated()


def test_within_budget_duplicates():
    ms = MarkedSet(10)
    ms.insert(0.3)
    # second copy would put 2/10 = 0.2 above mark_budget(0.3)
    assert not ms.within_budget(0.3)
    # a candidate above an existing member raises that member's rank too:
    # {0.3, 0.4} puts count(>= 0.3) at 2/10 > mark_budget(0.3)
    assert not ms.within_budget(0.4)
    # with more bins both constraints clear
    ms20 = MarkedSet(20)
    ms20.insert(0.4)
    assert ms20.within_budget(0.3)


def test_insert_guard():
    ms = MarkedSet(4)
    with pytest.raises(ValueError):
        ms.insert(0.3)
    assert len(ms) == 0  # refused insert leaves the set unchanged


def test_domain_errors():
    ms = MarkedSet(10)
    for bad in (0.1, 0.6, 0.0, MEDIUM_MIN - 1e-9):
        with pytest.raises(ValueError):
            ms.within_budget(bad)
        with pytest.raises(ValueError):
            ms.insert(bad)


def test_min_tight_examples():
    ms = MarkedSet(10)
    ms.insert(0.3)
    # 0.1 > mark_budget(0.3) - 0.1 ~ 0.024
    assert ms.min_tight() == 0.3
    ms100 = MarkedSet(100)
    ms100.insert(0.3)
    # 0.01 <= 0.124 - 0.01
    assert ms100.min_tight() is None


def test_min_tight_prefers_smallest():
    ms = MarkedSet(100)
    for _ in range(10):
        ms.insert(0.22)
    for _ in range(3):
        ms.insert(0.4)
    # counts: >=0.22 is 13 -> 0.13 <= 0.1592; >=0.4 is 3 -> 0.03 <= 0.057
    assert ms.min_tight() is None
    for _ in range(3):
        ms.insert(0.4)
    # now >=0.22 is 16 -> 0.16 > 0.1592 and >=0.4 is 6 -> 0.06 > 0.057:
    # both tight, the smaller one is reported
    assert ms.min_tight() == 0.22


def test_count_at_least():
    ms = MarkedSet(50)
    for v in (0.3, 0.25, 0.3, 0.45):
        ms.insert(v)
    assert ms.count_at_least(0.3) == 3
    assert ms.count_at_least(0.25) == 4
    assert ms.count_at_least(0.46) == 0
    assert ms.sizes == (0.25, 0.3, 0.3, 0.45)
    assert ms.load() == pytest.approx(0.25 + 0.3 + 0.3 + 0.45)


@settings(max_examples=120)
@given(st.integers(2, 60),
       st.lists(st.floats(MEDIUM_MIN, 0.5), min_size=0, max_size=25))
def test_budget_respected_by_construction(n, candidates):
    ms = MarkedSet(n)
    for c in candidates:
        if ms.within_budget(c):
            ms.insert(c)
        assert ms.dominated()
    # tightness is consistent: the reported minimum really is tight and minimal
    mt = ms.min_tight()
    if mt is not None:
        assert ms.count_at_least(mt) / n > mark_budget(mt) - 1.0 / n
        for v in ms.sizes:
            if v < mt:
                assert ms.count_at_least(v) / n <= mark_budget(v) - 1.0 / n
