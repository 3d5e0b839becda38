from __future__ import annotations

import pytest

from polyideal.classify import (
    classify_linearly_related,
    cross_verify,
    gorenstein_stack_predicate,
    is_extremal_stack_shape,
    is_linear_resolution_shape,
    report_matrix,
)
from polyideal.errors import NotPolyominoError, NotStackError
from polyideal.fixtures import get_fixture
from polyideal.polyomino import parse_grid, transform


@pytest.mark.parametrize(
    "grid,case",
    [
        ("###\n###\n###", "i"),
        (".##\n###\n###", "i"),
        (".#\n##", "i"),
        (".#.\n###\n###", "ii"),
        (".#.\n###\n.#.", "fails"),
        (".##\n###\n##.", "fails"),
    ],
)
def test_corner_cases(grid, case):
    v = classify_linearly_related(parse_grid(grid))
    assert v.case == case
    assert v.linearly_related == (case != "fails")
    assert (v.reason is None) == (case != "fails")


def test_verdict_is_symmetry_invariant():
    c = get_fixture("fig_cases_1").payload
    base = classify_linearly_related(c).linearly_related
    assert all(classify_linearly_related(transform(c, k)).linearly_related == base for k in range(8))


def test_non_convex_input_is_rejected():
    with pytest.raises(NotPolyominoError):
        classify_linearly_related(parse_grid("###\n#.#"))


def test_linear_resolution_shape():
    assert is_linear_resolution_shape(parse_grid("####"))
    assert is_linear_resolution_shape(parse_grid("#\n#"))
    assert not is_linear_resolution_shape(parse_grid("##\n##"))


def test_gorenstein_predicate():
    assert gorenstein_stack_predicate(parse_grid("##\n##"))
    assert not gorenstein_stack_predicate(parse_grid("###\n###"))
    # upside down stacks are read in stack orientation
    assert gorenstein_stack_predicate(parse_grid("##\n#."))
    with pytest.raises(NotStackError):
        gorenstein_stack_predicate(parse_grid("#..\n###\n..#"))


def test_extremal_shapes():
    assert is_extremal_stack_shape(parse_grid("#.\n##"))
    assert is_extremal_stack_shape(parse_grid("##\n##"))
    assert not is_extremal_stack_shape(parse_grid("##"))


def test_cross_verify_report():
    rep = cross_verify(parse_grid("##\n##"), name="square")
    assert rep.ok
    assert rep.h_vector == (1, 4, 1)
    assert rep.check("extremal_stack").oracle is True
    table = report_matrix([rep])
    assert table.splitlines()[1].startswith("square")
    assert rep.to_json()["checks"]["linearly_related"]["agree"]


def test_cross_verify_flags_a_disagreement():
    # the T pentomino has two inner minors with disjoint support: the oracle finds a
    # minimal Koszul syzygy while the corner rule accepts the shape
    rep = cross_verify(parse_grid("#..\n###\n#.."), koszul=True)
    lr = rep.check("linearly_related")
    assert lr.oracle is False and lr.predicate is True
    assert rep.check("koszul_pair").agree
    assert not rep.ok
