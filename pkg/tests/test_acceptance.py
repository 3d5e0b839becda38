"""The twelve acceptance criteria, each reported as one PASS/FAIL line."""

from __future__ import annotations

import json
import time

from polyideal.classify import is_linear_resolution_shape
from polyideal.enumerate import convex_polyominoes
from polyideal.fixtures import get_fixture, load_fixtures
from polyideal.lattice import FLATTICE_POSETS, Poset, h_vector_of_poset, plane_poset, poset_canonical_form
from polyideal.linalg import GF32003, QQ
from polyideal.polyomino import CellCollection, canonical_form, parse_grid
from polyideal.resolution import (
    SyzygyEngine,
    betti_table,
    divisor_homology,
    is_linearly_related_oracle,
    resolution_verdict,
)
from polyideal.sweeps import verify_theorem
from polyideal.toric import InnerMinor, hilbert_function, inner_minors, semigroup_of

# x_{ij} -> vertex (i, j); each binomial as (positive term, negative term)
PLUS_PENTOMINO_BINOMIALS = [
    ("22 31", "32 21"), ("23 31", "33 21"), ("24 31", "34 21"), ("23 32", "33 22"),
    ("24 32", "34 22"), ("24 33", "34 23"), ("13 22", "12 23"), ("13 32", "12 33"),
    ("13 42", "12 43"), ("23 42", "22 43"), ("33 42", "32 43"),
]


def _term(text: str) -> frozenset:
    return frozenset((int(v[0]), int(v[1])) for v in text.split())


def _unsigned(plus, minus) -> frozenset:
    return frozenset({frozenset(plus), frozenset(minus)})


def _from_name(name: str) -> CellCollection:
    return parse_grid(name.replace("/", "\n"))


def test_criterion_01_generator_fidelity(criterion):
    with criterion(1, "inner minors of the plus pentomino") as rec:
        c = get_fixture("fig_convex_plus").payload
        t0 = time.perf_counter()
        minors = inner_minors(c)
        elapsed = time.perf_counter() - t0
        got = {_unsigned(f.plus, f.minus) for f in minors}
        want = {_unsigned(_term(a), _term(b)) for a, b in PLUS_PENTOMINO_BINOMIALS}
        rec.detail = f"{len(minors)} minors, {elapsed * 1000:.1f} ms"
        assert len(minors) == 11
        assert got == want
        assert elapsed < 1.0


def test_criterion_02_koszul_pair_reproduction(criterion):
    with criterion(2, "Koszul pair [12|12],[34|34] is minimal") as rec:
        a = InnerMinor(((1, 1), (2, 2)))
        b = InnerMinor(((3, 3), (4, 4)))
        times = []
        for name in ("fig_restricted_a", "fig_restricted_b"):
            c = get_fixture(name).payload
            for field in (QQ, GF32003):
                t0 = time.perf_counter()
                minimal, _ = SyzygyEngine(c, field).koszul_minimal(a, b)
                times.append(time.perf_counter() - t0)
                assert minimal, (name, field)
        rec.detail = f"slowest {max(times):.2f}s"
        assert max(times) < 5.0


def test_criterion_03_main_sweep(criterion):
    with criterion(3, "linear relatedness sweep, convex <= 8 cells") as rec:
        rep = verify_theorem("main", 8)
        pred_bad = [it for it in rep.items if it["oracle"] != it["predicate"]]
        kos_bad = [it for it in rep.items if it["koszul_pair"] == it["oracle"]]
        rec.detail = (
            f"{len(rep.items)} items, predicate disagreements {len(pred_bad)}, "
            f"Koszul disagreements {len(kos_bad)}"
        )
        assert len(rep.items) == 312 and not rep.capped
        assert not kos_bad
        assert not pred_bad, [it["item"] for it in pred_bad]


def test_criterion_04_no_high_first_syzygies(criterion):
    with criterion(4, "beta_1j(I) = 0 for j > 4 up to degree 6") as rec:
        rep = verify_theorem("no", 8, degree_cap=6)
        rec.detail = f"{len(rep.items)} items, {len(rep.mismatches)} violations, {len(rep.capped)} capped"
        assert len(rep.items) == 312 and not rep.capped
        assert rep.ok


def test_criterion_05_linear_resolution_sweep(criterion):
    with criterion(5, "linear resolution exactly for strips") as rec:
        rep = verify_theorem("linear", 8)
        strips = [it for it in rep.items if it["oracle"]]
        rec.detail = f"{len(rep.items)} items, {len(strips)} strips, {len(rep.mismatches)} mismatches"
        assert len(rep.items) == 312
        assert rep.ok
        for it in strips:
            c = _from_name(it["item"])
            assert min(c.m, c.n) == 2 and is_linear_resolution_shape(c)


def test_criterion_06_regularity_spot_check(criterion):
    with criterion(6, "2x2 square: h = (1,4,1), reg I = 3") as rec:
        c = CellCollection.of([(1, 1), (1, 2), (2, 1), (2, 2)])
        sg = semigroup_of(c)
        counts = [hilbert_function(sg, d) for d in range(3)]
        h = resolution_verdict(c).h_vector
        bt = betti_table(c, 6)
        # totals are indexed by the resolution of K[P]; beta_i(K[P]) = beta_{i-1}(I)
        reg = max(j - (i - 1) for (i, j), v in bt.totals.items() if v and i > 0)
        rec.detail = f"Hilbert {counts}, h {h}, reg I from Betti table {reg}"
        assert counts == [1, 9, 36]
        assert h == (1, 4, 1)
        assert len(h) == 3 and reg == 3


def test_criterion_07_gorenstein_stacks(criterion):
    with criterion(7, "Gorenstein stacks sweep and figures") as rec:
        rep = verify_theorem("gorenstein_stack", 8)
        rec.detail = f"{len(rep.items)} stacks, {len(rep.mismatches)} mismatches"
        assert rep.items and rep.ok
        assert not resolution_verdict(get_fixture("fig_stack_right").payload).is_gorenstein
        assert resolution_verdict(get_fixture("fig_gorenstein").payload).is_gorenstein
        for name in ("fig_width_1", "fig_width_2", "fig_width_3"):
            v = resolution_verdict(get_fixture(name).payload)
            assert v.is_gorenstein and not v.is_extremal_gorenstein, name


def test_criterion_08_extremal_stacks(criterion):
    with criterion(8, "extremal Gorenstein stacks are the L-tromino and the square") as rec:
        rep = verify_theorem("stack", 8)
        found = {canonical_form(_from_name(it["item"])) for it in rep.items if it["oracle"]}
        want = {
            canonical_form(get_fixture("fig_extremalstack_L").payload),
            canonical_form(get_fixture("fig_extremalstack_square").payload),
        }
        rec.detail = f"{len(rep.items)} stacks, {len(found)} extremal, {len(rep.mismatches)} mismatches"
        assert rep.ok
        assert found == want


def test_criterion_09_lattice_h_vectors(criterion):
    with criterion(9, "h-vectors of the three two-chain posets") as rec:
        got = [h_vector_of_poset(get_fixture(f"poset_flattice_{k}").payload) for k in (2, 3, 4)]
        rec.detail = str(got)
        assert got == [(1, 2, 1), (1, 3, 1), (1, 4, 1)]


def test_criterion_10_descents_match_hilbert_series(criterion):
    with criterion(10, "descent h-vector equals Hibi Hilbert h-vector") as rec:
        rep = verify_theorem("hibi_series", 6)
        rec.detail = f"{len(rep.items)} posets, {len(rep.mismatches)} mismatches"
        assert len(rep.items) == 1 + 2 + 5 + 16 + 63 + 318
        assert rep.ok


def test_criterion_11_hibi_classifications(criterion):
    with criterion(11, "simple lattices: linear and extremal Gorenstein") as rec:
        one = verify_theorem("hibione", 6)
        two = verify_theorem("hibitwo", 6)
        linear = {poset_canonical_form(_poset(it["item"])) for it in one.items if it["oracle"]}
        extremal = {poset_canonical_form(_poset(it["item"])) for it in two.items if it["oracle"]}
        plane = {poset_canonical_form(plane_poset(k)) for k in range(1, 6)}
        flattice = {poset_canonical_form(p) for p in FLATTICE_POSETS}
        rec.detail = (
            f"{len(one.items)} lattices, {len(linear)} linear, {len(extremal)} extremal, "
            f"{len(one.mismatches) + len(two.mismatches)} mismatches"
        )
        assert one.ok and two.ok
        assert linear == plane
        assert extremal == flattice and len(extremal) == 4


def _poset(label: str) -> Poset:
    # sweep labels look like "n=4 covers=[[1, 3], [2, 4]]"
    n_part, cov_part = label.split(" covers=")
    return Poset(int(n_part[2:]), [(a - 1, b - 1) for a, b in json.loads(cov_part)])


def test_criterion_12_oracle_self_consistency(criterion):
    with criterion(12, "syzygy slices match divisor homology; QQ agrees with GF(32003)") as rec:
        checked = bad = 0
        for fx in load_fixtures().values():
            if fx.kind != "cells":
                continue
            engines = {f: SyzygyEngine(fx.payload, f) for f in (QQ, GF32003)}
            sg = engines[QQ].sg
            for d in (3, 4):
                for h in sg.layer(d):
                    vals = set()
                    for f, eng in engines.items():
                        vals.add(eng.slice(h).minimal_dim)
                        vals.add(divisor_homology(sg, h, (1,), f)[1])
                    checked += 1
                    bad += len(vals) != 1
        field_bad = 0
        for c in convex_polyominoes(8):
            field_bad += is_linearly_related_oracle(c, QQ).value != is_linearly_related_oracle(c, GF32003).value
        rec.detail = f"{checked} multidegrees, {bad} disagreements; oracle field disagreements {field_bad}"
        assert checked and bad == 0
        assert field_bad == 0
