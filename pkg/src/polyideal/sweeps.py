"""Exhaustive sweeps that compare each classification with its oracle."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .classify import (
    classify_linearly_related,
    gorenstein_stack_predicate,
    is_extremal_stack_shape,
    is_linear_resolution_shape,
)
from .enumerate import convex_polyominoes, posets, stack_polyominoes
from .errors import ResourceCapError
from .lattice import (
    Poset,
    classify_lattice,
    h_vector_of_poset,
    hibi_semigroup,
    is_pure,
    is_simple,
    order_ideal_lattice,
)
from .linalg import QQ, Field
from .polyomino import CellCollection, to_grid
from .resolution import (
    betti_table,
    is_linearly_related_oracle,
    minimal_koszul_pairs,
    resolution_verdict,
)
from .toric import h_vector

THEOREMS = ("main", "linear", "stack", "gorenstein_stack", "hibione", "hibitwo", "no", "hibi_series")


@dataclass
class SweepReport:
    theorem: str
    bound: int
    universe: str
    items: list[dict] = field(default_factory=list)
    mismatches: list[dict] = field(default_factory=list)
    capped: list[str] = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    runtime: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "bound": self.bound,
            "universe": self.universe,
            "count": len(self.items),
            "mismatch_count": len(self.mismatches),
            "mismatches": self.mismatches,
            "capped": self.capped,
            "summary": self.summary,
            "runtime_seconds": round(self.runtime, 3),
            "items": self.items,
        }

    def to_text(self) -> str:
        lines = [
            f"theorem {self.theorem}: {self.universe}",
            f"  items checked: {len(self.items)}",
            f"  mismatches:    {len(self.mismatches)}",
        ]
        for k, v in self.summary.items():
            lines.append(f"  {k}: {v}")
        if self.capped:
            lines.append(f"  capped items:  {len(self.capped)}")
        for mm in self.mismatches[:20]:
            lines.append(f"  MISMATCH {mm}")
        if len(self.mismatches) > 20:
            lines.append(f"  ... {len(self.mismatches) - 20} more")
        lines.append(f"  runtime: {self.runtime:.1f}s")
        return "\n".join(lines)


def _name(c: CellCollection) -> str:
    return to_grid(c).replace("\n", "/")


def _poset_name(p: Poset) -> str:
    return f"n={p.n} covers={[[a + 1, b + 1] for a, b in p.covers]}"


def _run(report: SweepReport, universe: Iterable, fn: Callable[[object], dict], name: Callable) -> SweepReport:
    t0 = time.perf_counter()
    for obj in universe:
        label = name(obj)
        try:
            item = fn(obj)
        except ResourceCapError as exc:
            report.capped.append(f"{label}: {exc}")
            continue
        item = {"item": label, **item}
        report.items.append(item)
        if not item.pop("_agree"):
            report.mismatches.append(item)
    report.runtime = time.perf_counter() - t0
    return report


def _main_item(field: Field) -> Callable[[CellCollection], dict]:
    def fn(c: CellCollection) -> dict:
        oracle = is_linearly_related_oracle(c, field)
        verdict = classify_linearly_related(c)
        koszul = bool(minimal_koszul_pairs(c, field, first_only=True))
        return {
            "oracle": oracle.value,
            "predicate": verdict.linearly_related,
            "case": verdict.case,
            "koszul_pair": koszul,
            "witness": list(oracle.witness) if oracle.witness else None,
            "_agree": oracle.value == verdict.linearly_related and koszul == (not oracle.value),
        }

    return fn


def _linear_item(c: CellCollection) -> dict:
    v = resolution_verdict(c)
    shape = is_linear_resolution_shape(c)
    return {
        "h_vector": list(v.h_vector),
        "oracle": v.has_linear_resolution,
        "predicate": shape,
        "_agree": v.has_linear_resolution == shape,
    }


def _gorenstein_item(c: CellCollection) -> dict:
    v = resolution_verdict(c)
    pred = gorenstein_stack_predicate(c)
    return {"h_vector": list(v.h_vector), "oracle": v.is_gorenstein, "predicate": pred,
            "_agree": v.is_gorenstein == pred}


def _stack_item(c: CellCollection) -> dict:
    v = resolution_verdict(c)
    pred = is_extremal_stack_shape(c)
    return {"h_vector": list(v.h_vector), "oracle": v.is_extremal_gorenstein, "predicate": pred,
            "_agree": v.is_extremal_gorenstein == pred}


def _no_item(field: Field, cap: int) -> Callable[[CellCollection], dict]:
    def fn(c: CellCollection) -> dict:
        bt = betti_table(c, cap, field, ideal_indices=[1])
        if not bt.complete:
            raise ResourceCapError(bt.cap_note or "cap")
        high = {j: v for (i, j), v in bt.totals.items() if i == 2 and j > 4}
        return {"beta_1_high": high, "_agree": not high}

    return fn


def _simple_lattices(bound: int):
    for p in posets(bound):
        lat = order_ideal_lattice(p)
        if is_simple(lat):
            yield p, lat


def _hibione_item(pl) -> dict:
    p, lat = pl
    h = h_vector_of_poset(p)
    oracle = len(h) <= 2
    pred = classify_lattice(lat).linear_resolution
    return {"h_vector": list(h), "oracle": oracle, "predicate": pred, "_agree": oracle == pred}


def _hibitwo_item(pl) -> dict:
    p, lat = pl
    h = h_vector_of_poset(p)
    oracle = is_pure(p) and len(h) == 3 and h[2] == 1 and h[1] > 1
    pred = classify_lattice(lat).extremal_gorenstein
    return {"h_vector": list(h), "oracle": oracle, "predicate": pred, "_agree": oracle == pred}


def _series_item(p: Poset) -> dict:
    a = h_vector_of_poset(p)
    b = h_vector(hibi_semigroup(order_ideal_lattice(p)))
    return {"descent_h": list(a), "hilbert_h": list(b), "_agree": a == b}


def verify_theorem(name: str, bound: int | None = None, field: Field | str = QQ,
                   degree_cap: int = 6) -> SweepReport:
    """Sweep one classification over every object up to ``bound``.

    Polyomino sweeps take a cell bound (default 8), lattice sweeps a poset
    size bound (default 6).
    """
    field = Field.parse(field)
    if name not in THEOREMS:
        raise ValueError(f"unknown theorem {name!r}; choose from {', '.join(THEOREMS)}")
    lattice_kind = name in ("hibione", "hibitwo", "hibi_series")
    if bound is None:
        bound = 6 if lattice_kind else 8
    if name == "main":
        rep = SweepReport(name, bound, f"convex polyominoes with <= {bound} cells up to symmetry")
        _run(rep, convex_polyominoes(bound), _main_item(field), _name)
    elif name == "linear":
        rep = SweepReport(name, bound, f"convex polyominoes with <= {bound} cells up to symmetry")
        _run(rep, convex_polyominoes(bound), _linear_item, _name)
        rep.summary["linear_resolution_items"] = sum(1 for it in rep.items if it["oracle"])
    elif name == "no":
        rep = SweepReport(name, bound, f"convex polyominoes with <= {bound} cells, degrees <= {degree_cap}")
        _run(rep, convex_polyominoes(bound), _no_item(field, degree_cap), _name)
    elif name in ("gorenstein_stack", "stack"):
        rep = SweepReport(name, bound, f"convex stack polyominoes with <= {bound} cells up to symmetry")
        fn = _gorenstein_item if name == "gorenstein_stack" else _stack_item
        _run(rep, stack_polyominoes(bound), fn, _name)
        rep.summary["oracle_true_items"] = sum(1 for it in rep.items if it["oracle"])
    elif name in ("hibione", "hibitwo"):
        rep = SweepReport(name, bound, f"simple lattices J(P), P a poset with 1..{bound} elements")
        fn = _hibione_item if name == "hibione" else _hibitwo_item
        _run(rep, _simple_lattices(bound), fn, lambda pl: _poset_name(pl[0]))
        rep.summary["predicate_true_items"] = sum(1 for it in rep.items if it["predicate"])
    else:
        rep = SweepReport(name, bound, f"posets with 1..{bound} elements up to isomorphism")
        _run(rep, posets(bound), _series_item, _poset_name)
    return rep
