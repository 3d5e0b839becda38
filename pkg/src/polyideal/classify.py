"""Combinatorial classification predicates for convex polyominoes, and the
report that checks each of them against the homological oracles."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import NotPolyominoError, NotStackError
from .linalg import QQ, Field
from .polyomino import (
    CellCollection,
    ShapeProfile,
    canonical_form,
    is_convex,
    is_polyomino,
    shape_profile,
    stack_orientation,
    stack_profile,
    to_grid,
    transform,
)
from .resolution import (
    ResolutionVerdict,
    is_linearly_related_oracle,
    minimal_koszul_pairs,
    resolution_verdict,
)

CASE_CORNERS = "i"
CASE_ADJACENT = "ii"
CASE_THREE = "iii"
CASE_FAILS = "fails"


def _require_convex(c: CellCollection) -> None:
    if not is_polyomino(c) or not is_convex(c):
        raise NotPolyominoError("expected a convex polyomino")


@dataclass(frozen=True)
class MainVerdict:
    """Outcome of the corner/span test for linear relatedness.

    ``case`` is one of ``"i"`` (at most one corner missing), ``"ii"`` (two
    non-opposite corners missing), ``"iii"`` (three missing, span condition
    met) or ``"fails"``, in which case ``reason`` names the violated clause.
    """

    linearly_related: bool
    case: str
    profile: ShapeProfile
    reason: str | None = None

    def to_json(self) -> dict:
        return {
            "linearly_related": self.linearly_related,
            "case": self.case,
            "reason": self.reason,
            "missing_corners": [list(v) for v in self.profile.missing_corners],
        }


def classify_linearly_related(c: CellCollection) -> MainVerdict:
    _require_convex(c)
    prof = shape_profile(c)
    m, n = prof.m, prof.n
    if m >= 4 and n >= 4 and not all(prof.inner_corners_present):
        return MainVerdict(False, CASE_FAILS, prof, "an inner corner next to a box corner is missing")
    missing = prof.missing_corners
    if len(missing) <= 1:
        return MainVerdict(True, CASE_CORNERS, prof)
    if len(missing) == 2:
        a, b = missing
        if a[0] != b[0] and a[1] != b[1]:
            return MainVerdict(False, CASE_FAILS, prof, "two opposite corners are missing")
        return MainVerdict(True, CASE_ADJACENT, prof)
    if len(missing) == 4:
        return MainVerdict(False, CASE_FAILS, prof, "all four corners are missing")
    # three corners missing: move the present one to (1,1)
    for k in range(8):
        t = transform(c, k)
        p = shape_profile(t)
        if p.corner_present[0]:
            break
    ok = (p.i2 == p.m - 1 and p.j4 <= p.j2) or (p.j2 == p.n - 1 and p.i4 <= p.i2)
    if ok:
        return MainVerdict(True, CASE_THREE, prof)
    return MainVerdict(False, CASE_FAILS, prof, "three corners missing and the span condition fails")


def is_linear_resolution_shape(c: CellCollection) -> bool:
    """A single straight strip of cells (vertex box of width or height 2)."""
    _require_convex(c)
    return c.m == 2 or c.n == 2


def _as_stack(c: CellCollection) -> CellCollection:
    _require_convex(c)
    s = stack_orientation(c)
    if s is None:
        raise NotStackError("not a stack polyomino in any orientation")
    return s


def gorenstein_stack_predicate(c: CellCollection) -> bool:
    """Width equals height for the stack and for every truncation where the
    width drops.  Collections that are stacks only after a symmetry are
    evaluated in that orientation."""
    prof = stack_profile(_as_stack(c))
    return all(prof.truncations[k] == prof.heights[k] for k in prof.jumps)


_L_TROMINO = canonical_form(CellCollection.of([(1, 1), (2, 1), (2, 2)]))
_SQUARE = canonical_form(CellCollection.of([(1, 1), (2, 1), (1, 2), (2, 2)]))


def is_extremal_stack_shape(c: CellCollection) -> bool:
    return canonical_form(c) in (_L_TROMINO, _SQUARE)


# -- cross verification ------------------------------------------------------


@dataclass(frozen=True)
class Check:
    name: str
    oracle: bool
    predicate: bool
    detail: str = ""

    @property
    def agree(self) -> bool:
        return self.oracle == self.predicate

    def cell(self) -> str:
        if self.agree:
            return "agree"
        return f"MISMATCH(oracle={self.oracle},predicate={self.predicate})"


CHECK_NAMES = ("linearly_related", "koszul_pair", "linear_resolution", "gorenstein_stack", "extremal_stack")


@dataclass
class Report:
    name: str
    collection: CellCollection
    checks: list[Check] = field(default_factory=list)
    h_vector: tuple[int, ...] = ()
    main: MainVerdict | None = None
    witness: tuple[int, ...] | None = None

    @property
    def ok(self) -> bool:
        return all(ch.agree for ch in self.checks)

    def check(self, name: str) -> Check | None:
        for ch in self.checks:
            if ch.name == name:
                return ch
        return None

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "cells": [list(x) for x in self.collection.sorted_cells()],
            "h_vector": list(self.h_vector),
            "main": self.main.to_json() if self.main else None,
            "oracle_witness": list(self.witness) if self.witness else None,
            "checks": {
                ch.name: {"oracle": ch.oracle, "predicate": ch.predicate, "agree": ch.agree}
                for ch in self.checks
            },
            "ok": self.ok,
        }


def cross_verify(
    c: CellCollection,
    name: str = "",
    field: Field | str = QQ,
    koszul: bool = True,
) -> Report:
    """Run every oracle against its combinatorial predicate on ``c``.

    The Koszul check compares existence of a minimal Koszul pair with the
    negated oracle verdict; stack checks only run when some symmetric image
    of ``c`` is a stack polyomino.
    """
    _require_convex(c)
    rep = Report(name or to_grid(c).replace("\n", "/"), c)
    oracle = is_linearly_related_oracle(c, field)
    main = classify_linearly_related(c)
    rep.main = main
    rep.witness = oracle.witness
    rep.checks.append(Check("linearly_related", oracle.value, main.linearly_related))
    if koszul:
        has_pair = bool(minimal_koszul_pairs(c, field, first_only=True))
        rep.checks.append(Check("koszul_pair", has_pair, not oracle.value))
    verdict: ResolutionVerdict = resolution_verdict(c)
    rep.h_vector = verdict.h_vector
    rep.checks.append(
        Check("linear_resolution", verdict.has_linear_resolution, is_linear_resolution_shape(c))
    )
    if stack_orientation(c) is not None:
        rep.checks.append(Check("gorenstein_stack", verdict.is_gorenstein, gorenstein_stack_predicate(c)))
        rep.checks.append(
            Check("extremal_stack", verdict.is_extremal_gorenstein, is_extremal_stack_shape(c))
        )
    return rep


def report_matrix(reports: Sequence[Report]) -> str:
    """Fixed-width text table: one row per item, one column per check."""
    width = max([len(r.name) for r in reports] + [4])
    cols = CHECK_NAMES
    cw = [max(len(cn), 5) for cn in cols]
    lines = ["name".ljust(width) + "  " + "  ".join(cn.ljust(w) for cn, w in zip(cols, cw))]
    for r in reports:
        cells = []
        for cn, w in zip(cols, cw):
            ch = r.check(cn)
            cells.append(("-" if ch is None else ch.cell()).ljust(w))
        lines.append(r.name.ljust(width) + "  " + "  ".join(cells))
    return "\n".join(lines)
