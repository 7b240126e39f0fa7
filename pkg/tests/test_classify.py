"""Classification boundaries, including every exact-boundary rule."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from risethresh.curves import MEDIUM_MIN
from risethresh.items import Item, classify, category, is_medium


@pytest.mark.parametrize("size,expected", [
    (0.6, "large"),
    (1.0, "large"),
    (0.5 + 1e-12, "large"),
    (0.5, "MT2"),              # exactly 1/2 is medium
    (0.4, "MT2"),
    (1.0 / 3.0, "MT3"),        # exactly 1/3 stays in MT3
    (0.3, "MT3"),
    (0.25, "MT4"),             # exactly 1/4 stays in MT4
    (0.22, "MT4"),
    (MEDIUM_MIN, "MT4"),       # exactly the medium floor is medium
    (MEDIUM_MIN - 1e-12, "small"),
    (0.1, "small"),
    (1e-9, "small"),
])
def test_boundaries(size, expected):
    assert classify(size) == expected


def test_domain_errors():
    for bad in (0.0, -0.1, 1.0 + 1e-12, 2.0):
        with pytest.raises(ValueError):
            classify(bad)


def test_category_collapse():
    assert category("MT2") == category("MT3") == category("MT4") == "medium"
    assert category("large") == "large"
    assert category("small") == "small"
    assert is_medium("MT3") and not is_medium("large")
    with pytest.raises(ValueError):
        category("bogus")


@settings(max_examples=200)
@given(st.floats(1e-12, 1.0))
def test_class_matches_band(size):
    cls = classify(size)
    if cls == "large":
        assert 0.5 < size <= 1.0
    elif cls == "small":
        assert 0.0 < size < MEDIUM_MIN
    else:
        assert MEDIUM_MIN <= size <= 0.5
        if cls == "MT2":
            assert 1.0 / 3.0 < size
        elif cls == "MT3":
            assert 0.25 < size <= 1.0 / 3.0
        else:
            assert size <= 0.25


def test_item_origin():
    raw = Item(size=0.3, index=7)
    merged = Item(size=0.25, parts=(1, 4, 9))
    assert raw.origin == "stream"
    assert merged.origin == "merged"
