from __future__ import annotations

from math import factorial

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyideal.enumerate import posets_by_size
from polyideal.errors import NotALatticeError, NotSimpleError
from polyideal.lattice import (
    FLATTICE_POSETS,
    Poset,
    classify_lattice,
    h_vector_of_poset,
    hibi_semigroup,
    is_isomorphic_poset,
    is_lattice,
    is_pure,
    is_simple,
    join_irreducibles,
    join_meet_generators,
    linear_extensions,
    order_ideal_lattice,
    plane_poset,
    poset_canonical_form,
)
from polyideal.toric import h_vector

SMALL_POSETS = [p for level in posets_by_size(5) for p in level if p.n]


def _digraph(p: Poset) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(range(p.n))
    g.add_edges_from(p.covers)
    return g


def _eulerian(n: int) -> tuple[int, ...]:
    e = [1]
    for k in range(2, n + 1):
        e = [(i + 1) * (e[i] if i < len(e) else 0) + (k - i) * (e[i - 1] if i else 0) for i in range(k)]
    return tuple(e)


def test_json_round_trip_is_one_based():
    p = Poset.from_json('{"n": 3, "covers": [[1, 2], [2, 3]]}')
    assert p == Poset.chain(3)
    assert p.to_json() == {"n": 3, "covers": [[1, 2], [2, 3]]}


def test_relations_are_transitively_closed():
    p = Poset(3, [(0, 1), (1, 2)])
    assert p.lt(0, 2) and p.covers == ((0, 1), (1, 2))
    with pytest.raises(ValueError):
        Poset(2, [(0, 1), (1, 0)])


@pytest.mark.parametrize("p", SMALL_POSETS, ids=lambda p: f"n{p.n}-{len(p.covers)}")
def test_birkhoff_round_trip(p):
    lat = order_ideal_lattice(p)
    assert is_lattice(lat.as_poset())
    assert nx.is_isomorphic(_digraph(join_irreducibles(lat)), _digraph(p))


def test_canonical_form_agrees_with_networkx():
    level = posets_by_size(4)[4]
    for a in level:
        for b in level:
            same = nx.is_isomorphic(_digraph(a), _digraph(b))
            assert same == (a == b)
            assert is_isomorphic_poset(a, b) == same


def test_poset_counts():
    assert [len(level) for level in posets_by_size(5)] == [1, 1, 2, 5, 16, 63]


def test_join_irreducibles_need_a_lattice():
    with pytest.raises(NotALatticeError):
        join_irreducibles(Poset.antichain(2))


@pytest.mark.parametrize("n", range(1, 6))
def test_antichain_h_vector_is_eulerian(n):
    p = Poset.antichain(n)
    assert h_vector_of_poset(p) == _eulerian(n)
    assert len(linear_extensions(p)) == factorial(n)


@given(st.sampled_from(SMALL_POSETS), st.randoms(use_true_random=False))
@settings(max_examples=40)
def test_h_vector_does_not_depend_on_the_natural_labeling(p, rnd):
    order = p.natural_order()
    # another linear extension yields another natural labeling
    exts = linear_extensions(p)
    other = list(rnd.choice(exts))
    assert h_vector_of_poset(p, labeling=other) == h_vector_of_poset(p, labeling=order)
    assert sum(h_vector_of_poset(p)) == len(exts)


def test_descents_match_hibi_hilbert_series_small():
    for p in SMALL_POSETS[:20]:
        assert h_vector_of_poset(p) == h_vector(hibi_semigroup(order_ideal_lattice(p)))


def test_plane_lattice_binomials():
    lat = order_ideal_lattice(plane_poset(4))
    assert len(join_meet_generators(lat)) == 10


def test_simplicity():
    assert not is_simple(order_ideal_lattice(Poset.chain(3)))
    assert is_simple(order_ideal_lattice(Poset.antichain(2)))
    with pytest.raises(NotSimpleError):
        classify_lattice(order_ideal_lattice(Poset(3, [(0, 1), (0, 2)])))


def test_flattice_family():
    forms = {poset_canonical_form(p) for p in FLATTICE_POSETS}
    assert len(forms) == 4
    for p in FLATTICE_POSETS:
        assert is_pure(p)
        cls = classify_lattice(order_ideal_lattice(p))
        assert cls.extremal_gorenstein and not cls.linear_resolution


def test_plane_family_has_linear_resolution():
    for k in range(1, 5):
        cls = classify_lattice(order_ideal_lattice(plane_poset(k)))
        assert cls.linear_resolution
        assert len(h_vector_of_poset(plane_poset(k))) == 2
