"""Exhaustive enumeration of small objects up to isomorphism."""

from __future__ import annotations

from itertools import combinations
from typing import Iterator

from .errors import ResourceCapError
from .lattice import Poset, poset_canonical_form
from .polyomino import CellCollection, canonical_form, is_convex, is_polyomino, stack_orientation

CONVEX_CAP = 10
POSET_CAP = 6


def _neighbours(cells: frozenset) -> set:
    out = set()
    for x, y in cells:
        for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            out.add((x + dx, y + dy))
    return out - cells


def convex_polyominoes_by_size(bound: int, cap: int = CONVEX_CAP) -> list[list[CellCollection]]:
    """``out[k]`` lists the convex polyominoes with k cells up to symmetry.

    Grown one cell at a time: every convex polyomino with k+1 cells keeps
    an end cell of its top row whose removal leaves a convex polyomino.
    """
    if bound > cap:
        raise ResourceCapError(f"convex enumeration bound {bound} exceeds cap {cap}")
    levels: list[list[CellCollection]] = [[]]
    if bound < 1:
        return levels
    levels.append([CellCollection.of([(1, 1)])])
    for _ in range(2, bound + 1):
        seen: set[CellCollection] = set()
        for c in levels[-1]:
            for cell in _neighbours(c.cells):
                bigger = CellCollection.of(c.cells | {cell})
                if is_convex(bigger):
                    seen.add(canonical_form(bigger))
        levels.append(sorted(seen, key=CellCollection.sorted_cells))
    return levels


def convex_polyominoes(bound: int, cap: int = CONVEX_CAP) -> Iterator[CellCollection]:
    for level in convex_polyominoes_by_size(bound, cap):
        yield from level


def stack_polyominoes(bound: int, cap: int = CONVEX_CAP) -> Iterator[CellCollection]:
    """Convex stack polyominoes up to symmetry, each in stack orientation."""
    for c in convex_polyominoes(bound, cap):
        s = stack_orientation(c)
        if s is not None:
            yield s


def brute_force_convex_count(k: int) -> int:
    """Count convex classes of size k by testing every k-subset of a k x k box."""
    box = [(x, y) for x in range(1, k + 1) for y in range(1, k + 1)]
    forms = set()
    for sub in combinations(box, k):
        xs = [c[0] for c in sub]
        ys = [c[1] for c in sub]
        if min(xs) != 1 or min(ys) != 1:
            continue
        c = CellCollection.of(sub)
        if is_polyomino(c) and is_convex(c):
            forms.add(canonical_form(c))
    return len(forms)


def posets_by_size(bound: int, cap: int = POSET_CAP) -> list[list[Poset]]:
    """``out[k]`` lists posets on k elements up to isomorphism.

    Every poset arises from a smaller one by adding a new maximal element
    on top of some order ideal.
    """
    if bound > cap:
        raise ResourceCapError(f"poset enumeration bound {bound} exceeds cap {cap}")
    levels: list[list[Poset]] = [[Poset(0)]]
    for k in range(1, bound + 1):
        seen: dict[tuple, Poset] = {}
        for p in levels[-1]:
            for ideal in _order_ideals(p):
                q = Poset(k, list(p.covers) + [(a, k - 1) for a in ideal])
                form = poset_canonical_form(q)
                if form not in seen:
                    n, rels = form
                    seen[form] = Poset(n, rels)
        levels.append([seen[f] for f in sorted(seen)])
    return levels


def _order_ideals(p: Poset) -> list[frozenset[int]]:
    out = [frozenset()]
    for x in p.natural_order():
        out += [I | {x} for I in out if p.down(x) <= I]
    return out


def posets(bound: int, cap: int = POSET_CAP, include_empty: bool = False) -> Iterator[Poset]:
    for k, level in enumerate(posets_by_size(bound, cap)):
        if k or include_empty:
            yield from level


def enumerate_kind(kind: str, bound: int) -> Iterator[CellCollection | Poset]:
    if kind == "convex":
        return convex_polyominoes(bound)
    if kind == "stack":
        return stack_polyominoes(bound)
    if kind == "poset":
        return posets(bound)
    raise ValueError(f"unknown kind {kind!r}; expected convex, stack or poset")
