from __future__ import annotations

import pytest

from polyideal.enumerate import (
    brute_force_convex_count,
    convex_polyominoes,
    convex_polyominoes_by_size,
    enumerate_kind,
    posets,
    stack_polyominoes,
)
from polyideal.errors import ResourceCapError
from polyideal.polyomino import canonical_form, is_convex, is_polyomino, is_stack


def test_convex_counts_by_size():
    assert [len(level) for level in convex_polyominoes_by_size(8)] == [0, 1, 1, 2, 5, 11, 29, 72, 191]


@pytest.mark.parametrize("k", range(1, 6))
def test_growth_matches_brute_force(k):
    assert len(convex_polyominoes_by_size(k)[k]) == brute_force_convex_count(k)


def test_classes_are_distinct_and_convex():
    items = list(convex_polyominoes(7))
    assert len({canonical_form(c) for c in items}) == len(items)
    assert all(is_polyomino(c) and is_convex(c) for c in items)


def test_stacks_are_in_stack_orientation():
    items = list(stack_polyominoes(8))
    assert len(items) == 80
    assert all(is_stack(s) for s in items)


def test_caps():
    with pytest.raises(ResourceCapError):
        convex_polyominoes_by_size(11)
    with pytest.raises(ResourceCapError):
        list(posets(7))


def test_enumerate_kind():
    assert sum(1 for _ in enumerate_kind("poset", 3)) == 1 + 2 + 5
    with pytest.raises(ValueError):
        enumerate_kind("tree", 3)
