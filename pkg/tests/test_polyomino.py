from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyideal.errors import ParseError
from polyideal.polyomino import (
    CellCollection,
    all_transforms,
    canonical_form,
    induced_collection,
    is_convex,
    is_isomorphic,
    is_polyomino,
    is_stack,
    parse_collection,
    parse_grid,
    parse_json,
    shape_profile,
    stack_orientation,
    stack_profile,
    to_grid,
    to_json,
    transform,
)

cells = st.sets(st.tuples(st.integers(1, 5), st.integers(1, 5)), min_size=1, max_size=12)


def test_grid_is_read_top_row_first():
    c = parse_grid("#.\n##")
    assert c.cells == {(1, 1), (2, 1), (1, 2)}
    assert (c.m, c.n) == (3, 3)


def test_grid_rejects_ragged_rows_and_junk():
    with pytest.raises(ParseError):
        parse_grid("##\n#")
    with pytest.raises(ParseError):
        parse_grid("#x")
    with pytest.raises(ParseError):
        parse_grid("...")


def test_json_validation():
    assert parse_json('{"cells": [[1, 1], [2, 1]]}') == CellCollection.of([(1, 1), (2, 1)])
    for bad in ('{"cells": []}', '{"cells": [[0, 1]]}', '{"cells": [[1, true]]}', "[1]", "{"):
        with pytest.raises(ParseError):
            parse_json(bad)


def test_parse_collection_dispatches_on_format():
    assert parse_collection('  {"cells": [[1, 1]]}') == parse_collection("#")


@given(cells)
def test_text_round_trips(cs):
    c = CellCollection.of(cs)
    # grids only encode cells relative to the bounding box corner (1, 1)
    if min(x for x, _ in cs) == 1 and min(y for _, y in cs) == 1:
        assert parse_grid(to_grid(c)) == c
    assert parse_json(to_json(c)) == c


def test_polyomino_and_convexity():
    assert is_polyomino(parse_grid("##\n#."))
    assert not is_polyomino(parse_grid("#.\n.#"))  # corner contact only
    assert not is_convex(parse_grid("###\n#.#"))
    assert is_convex(parse_grid(".#.\n###\n.#."))


@given(cells)
@settings(max_examples=60)
def test_canonical_form_is_a_symmetry_invariant(cs):
    c = CellCollection.of(cs)
    forms = {canonical_form(t) for t in all_transforms(c)}
    assert len(forms) == 1
    assert all(is_isomorphic(c, transform(c, k)) for k in range(8))
    assert is_polyomino(c) == is_polyomino(transform(c, 5))
    if is_polyomino(c):
        assert is_convex(c) == is_convex(transform(c, 5))


def test_induced_collection_of_a_square_is_a_square():
    sq = parse_grid("###\n###\n###")
    small = induced_collection(sq, [1, 2, 4], [1, 3, 4])
    assert small == parse_grid("##\n##")
    with pytest.raises(ValueError):
        induced_collection(sq, [2, 1], [1, 2])


def test_shape_profile_corner_counts():
    assert shape_profile(parse_grid("###\n###")).missing_corners == ()
    plus = shape_profile(parse_grid(".#.\n###\n.#."))
    assert len(plus.missing_corners) == 4


def test_stack_profile():
    c = parse_grid(".#.\n###")
    assert is_stack(c)
    sp = stack_profile(c)
    assert (sp.width, sp.height) == (3, 2)
    assert not is_stack(parse_grid("###\n.#."))
    assert stack_orientation(parse_grid("###\n.#.")) is not None
    assert stack_orientation(parse_grid("#..\n###\n..#")) is None
