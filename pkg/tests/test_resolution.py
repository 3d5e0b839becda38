from __future__ import annotations

from itertools import product
from math import comb

import pytest

from polyideal.errors import NotPolyominoError, ResourceCapError
from polyideal.linalg import GF32003, QQ
from polyideal.polyomino import CellCollection, parse_grid
from polyideal.resolution import (
    SyzygyEngine,
    betti_table,
    divisor_complex,
    divisor_homology,
    is_linearly_related_oracle,
    koszul_pair_minimal,
    minimal_koszul_pairs,
    resolution_verdict,
    syzygy_slice,
    verdict_from_h,
)
from polyideal.toric import InnerMinor, h_vector, krull_dimension, semigroup_of

SQUARE = CellCollection.of(product((1, 2), (1, 2)))
DOMINO = parse_grid("##")


def _ideal_totals(bt):
    return {(i - 1, j): v for (i, j), v in bt.totals.items() if i >= 1}


def test_domino_is_eagon_northcott():
    # 2-minors of a generic 2x3 matrix: 3 quadrics, 2 linear syzygies
    bt = betti_table(DOMINO, 4)
    assert _ideal_totals(bt) == {(0, 2): 3, (1, 3): 2}


@pytest.mark.parametrize("field", [QQ, GF32003])
def test_square_is_gulliksen_negard(field):
    # 2-minors of a generic 3x3 matrix
    bt = betti_table(SQUARE, 6, field)
    assert _ideal_totals(bt) == {(0, 2): 9, (1, 3): 16, (2, 4): 9, (3, 6): 1}
    assert bt.ideal(1, 3) == 16 and bt.ring(4, 6) == 1


@pytest.mark.parametrize("grid", ["##", "#.\n##", "###\n.#."])
def test_betti_numbers_match_the_hilbert_series(grid):
    # sum (-1)^i beta_ij t^j = h(t) (1 - t)^(codim) for a Cohen-Macaulay ring
    c = parse_grid(grid)
    sg = semigroup_of(c)
    codim = len(sg) - krull_dimension(sg)
    h = h_vector(sg)
    top = len(h) - 1 + codim
    bt = betti_table(c, top)
    assert bt.complete
    lhs = [0] * (top + 1)
    for (i, j), v in bt.totals.items():
        lhs[j] += (-1) ** i * v
    rhs = [0] * (top + 1)
    for a, ha in enumerate(h):
        for b in range(codim + 1):
            rhs[a + b] += ha * comb(codim, b) * (-1) ** b
    assert lhs == rhs


def test_betti_text_and_json():
    bt = betti_table(DOMINO, 3)
    text = bt.to_text()
    assert text.splitlines()[0].startswith("Betti numbers of I over")
    js = bt.to_json()
    assert {"i": 1, "j": 3, "beta": 2} in js["ideal_totals"]


def test_divisor_complex_of_a_generator_is_a_point():
    sg = semigroup_of(DOMINO)
    g = sg.generators[0]
    cx = divisor_complex(sg, g, max_dim=2)
    assert cx.f_vector()[:2] == (1, 1)
    assert divisor_homology(sg, g, (-1, 0, 1))[-1] == 0


def test_syzygy_slice_agrees_with_homology_on_the_square():
    sg = semigroup_of(SQUARE)
    eng = SyzygyEngine(SQUARE)
    for d in (3, 4):
        for h in sg.layer(d):
            assert eng.slice(h).minimal_dim == divisor_homology(sg, h, (1,))[1]


def test_slice_degree_guard():
    sg = semigroup_of(SQUARE)
    h = next(iter(sg.layer(6)))
    with pytest.raises(ResourceCapError):
        syzygy_slice(SQUARE, h, max_degree=5)


def test_disjoint_minors_give_a_minimal_koszul_syzygy():
    c = parse_grid("#..\n###\n#..")
    a = InnerMinor(((1, 1), (2, 4)))
    b = InnerMinor(((3, 2), (4, 3)))
    assert koszul_pair_minimal(c, a, b)
    assert koszul_pair_minimal(c, a, b, GF32003)
    assert not is_linearly_related_oracle(c).value


def test_rectangle_is_linearly_related():
    c = parse_grid("###\n###")
    assert is_linearly_related_oracle(c).value
    assert minimal_koszul_pairs(c) == []


def test_verdicts():
    assert verdict_from_h((1, 4, 1)).is_extremal_gorenstein
    assert verdict_from_h((1, 3)).has_linear_resolution
    assert not verdict_from_h((1, 2, 1)).has_linear_resolution
    assert not verdict_from_h((1, 3, 2)).is_gorenstein
    assert resolution_verdict(SQUARE).h_vector == (1, 4, 1)
    with pytest.raises(NotPolyominoError):
        resolution_verdict(parse_grid("###\n#.#"))
