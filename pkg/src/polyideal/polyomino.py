"""Cell collections and polyominoes on the integer grid.

A cell is identified by its lower-left corner ``(x, y)``; ``x`` is the
column and ``y`` the row, both 1-based after normalization.  ASCII grids
list the top row first.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import NotPolyominoError, NotStackError, ParseError, PolyidealError

Cell = tuple[int, int]
Vertex = tuple[int, int]

# The eight elements of the dihedral group acting on (x, y).
_D4 = (
    (1, 0, 0, 1),
    (-1, 0, 0, 1),
    (1, 0, 0, -1),
    (-1, 0, 0, -1),
    (0, 1, 1, 0),
    (0, -1, 1, 0),
    (0, 1, -1, 0),
    (0, -1, -1, 0),
)


@dataclass(frozen=True)
class CellCollection:
    """A nonempty, translation-normalized finite set of unit cells."""

    cells: frozenset[Cell]

    def __post_init__(self) -> None:
        if not self.cells:
            raise ParseError("a cell collection must be nonempty")
        if min(x for x, _ in self.cells) != 1 or min(y for _, y in self.cells) != 1:
            raise ParseError("cells are not normalized; use CellCollection.of()")

    @classmethod
    def of(cls, cells: Iterable[Sequence[int]]) -> CellCollection:
        """Build a collection from arbitrary integer cells, translating to (1, 1)."""
        pts = {(int(c[0]), int(c[1])) for c in cells}
        if not pts:
            raise ParseError("a cell collection must be nonempty")
        dx = 1 - min(x for x, _ in pts)
        dy = 1 - min(y for _, y in pts)
        return cls(frozenset((x + dx, y + dy) for x, y in pts))

    def __len__(self) -> int:
        return len(self.cells)

    def __iter__(self):
        return iter(sorted(self.cells))

    @property
    def m(self) -> int:
        """Number of vertex columns of the bounding box."""
        return max(x for x, _ in self.cells) + 1

    @property
    def n(self) -> int:
        """Number of vertex rows of the bounding box."""
        return max(y for _, y in self.cells) + 1

    @property
    def bbox(self) -> tuple[Vertex, Vertex]:
        return (1, 1), (self.m, self.n)

    @cached_property
    def vertices(self) -> frozenset[Vertex]:
        return frozenset(
            (x + dx, y + dy) for x, y in self.cells for dx in (0, 1) for dy in (0, 1)
        )

    def sorted_cells(self) -> tuple[Cell, ...]:
        return tuple(sorted(self.cells))

    def __repr__(self) -> str:
        return f"CellCollection({list(self.sorted_cells())})"


# -- parsing / serialization -------------------------------------------------


def parse_grid(text: str) -> CellCollection:
    """Parse an ASCII grid of ``#`` (cell) and ``.`` (empty); top row first."""
    lines = [ln.rstrip() for ln in text.splitlines()]
    while lines and not lines[0]:
        lines.pop(0)
    while lines and not lines[-1]:
        lines.pop()
    if not lines:
        raise ParseError("empty grid")
    width = len(lines[0])
    cells = []
    height = len(lines)
    for r, line in enumerate(lines):
        if len(line) != width:
            raise ParseError(f"grid row {r + 1} has width {len(line)}, expected {width}")
        for x, ch in enumerate(line, start=1):
            if ch == "#":
                cells.append((x, height - r))
            elif ch != ".":
                raise ParseError(f"unexpected character {ch!r} in grid row {r + 1}")
    if not cells:
        raise ParseError("grid contains no cells")
    return CellCollection.of(cells)


def parse_json(obj: dict | str) -> CellCollection:
    """Parse ``{"cells": [[x, y], ...]}`` (a dict or its JSON text)."""
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict) or "cells" not in obj:
        raise ParseError('expected an object with a "cells" list')
    cells = obj["cells"]
    if not isinstance(cells, list) or not cells:
        raise ParseError('"cells" must be a nonempty list')
    out = []
    for c in cells:
        if (
            not isinstance(c, (list, tuple))
            or len(c) != 2
            or not all(isinstance(v, int) and not isinstance(v, bool) and v > 0 for v in c)
        ):
            raise ParseError(f"bad cell entry {c!r}; expected [x, y] with positive integers")
        out.append((c[0], c[1]))
    return CellCollection.of(out)


def parse_collection(text: str) -> CellCollection:
    """Parse either format, deciding by the first non-blank character."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return parse_json(stripped)
    return parse_grid(text)


def to_grid(c: CellCollection) -> str:
    rows = []
    for y in range(c.n - 1, 0, -1):
        rows.append("".join("#" if (x, y) in c.cells else "." for x in range(1, c.m)))
    return "\n".join(rows)


def to_json(c: CellCollection) -> dict:
    return {"cells": [list(cell) for cell in c.sorted_cells()]}


# -- connectivity and convexity ----------------------------------------------


def is_polyomino(c: CellCollection) -> bool:
    """True iff the cells are connected through shared edges."""
    start = next(iter(c.cells))
    seen = {start}
    queue = deque([start])
    while queue:
        x, y = queue.popleft()
        for nb in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            if nb in c.cells and nb not in seen:
                seen.add(nb)
                queue.append(nb)
    return len(seen) == len(c.cells)


def _runs_contiguous(groups: dict[int, list[int]]) -> bool:
    return all(max(v) - min(v) + 1 == len(v) for v in groups.values())


def is_row_convex(c: CellCollection) -> bool:
    rows: dict[int, list[int]] = {}
    for x, y in c.cells:
        rows.setdefault(y, []).append(x)
    return _runs_contiguous(rows)


def is_column_convex(c: CellCollection) -> bool:
    cols: dict[int, list[int]] = {}
    for x, y in c.cells:
        cols.setdefault(x, []).append(y)
    return _runs_contiguous(cols)


def is_convex(c: CellCollection) -> bool:
    """Row and column convexity of a polyomino."""
    if not is_polyomino(c):
        raise NotPolyominoError("convexity is defined for polyominoes only")
    return is_row_convex(c) and is_column_convex(c)


def vertex_set(c: CellCollection) -> frozenset[Vertex]:
    return c.vertices


# -- symmetry ----------------------------------------------------------------


def transform(c: CellCollection, k: int) -> CellCollection:
    """Apply the k-th dihedral symmetry (0 is the identity) and renormalize."""
    a, b, cc, d = _D4[k]
    # act on doubled cell centres so that reflections map cells to cells
    out = []
    for x, y in c.cells:
        X, Y = 2 * x + 1, 2 * y + 1
        u, v = a * X + b * Y, cc * X + d * Y
        out.append(((u - 1) // 2, (v - 1) // 2))
    return CellCollection.of(out)


def transform_vertex(c: CellCollection, k: int, v: Vertex) -> Vertex:
    """Image of vertex ``v`` of ``c`` under ``transform(c, k)``."""
    a, b, cc, d = _D4[k]
    raw = [(a * x + b * y, cc * x + d * y) for x, y in c.vertices]
    ox = 1 - min(p for p, _ in raw)
    oy = 1 - min(q for _, q in raw)
    x, y = v
    return a * x + b * y + ox, cc * x + d * y + oy


def all_transforms(c: CellCollection) -> list[CellCollection]:
    return [transform(c, k) for k in range(8)]


def canonical_form(c: CellCollection) -> CellCollection:
    """Lexicographically least image under the eight symmetries."""
    return min(all_transforms(c), key=CellCollection.sorted_cells)


def is_isomorphic(a: CellCollection, b: CellCollection) -> bool:
    return len(a) == len(b) and canonical_form(a) == canonical_form(b)


# -- induced collections -----------------------------------------------------


def induced_collection(
    c: CellCollection, cols: Sequence[int], rows: Sequence[int]
) -> CellCollection:
    """Collection of cells induced by the chosen vertex columns and rows.

    The new vertex ``(k, l)`` is present iff ``(cols[k-1], rows[l-1])`` is a
    vertex of ``c``; a cell is kept iff its four corners are present.  The
    result may be disconnected.
    """
    for name, idx, top in (("cols", cols, c.m), ("rows", rows, c.n)):
        if len(idx) < 2:
            raise ValueError(f"{name} must select at least two indices")
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise ValueError(f"{name} must be strictly increasing")
        if idx[0] < 1 or idx[-1] > top:
            raise ValueError(f"{name} out of range 1..{top}")
    verts = c.vertices
    pattern = {
        (k, l)
        for k, i in enumerate(cols, start=1)
        for l, j in enumerate(rows, start=1)
        if (i, j) in verts
    }
    cells = [
        (k, l)
        for k in range(1, len(cols))
        for l in range(1, len(rows))
        if {(k, l), (k + 1, l), (k, l + 1), (k + 1, l + 1)} <= pattern
    ]
    if not cells:
        raise PolyidealError("the induced collection has no cells")
    return CellCollection.of(cells)


# -- shape and stack profiles ------------------------------------------------


@dataclass(frozen=True)
class ShapeProfile:
    """Boundary data of a convex polyomino in its bounding box [(1,1),(m,n)].

    Corner order is (1,1), (m,1), (1,n), (m,n); inner corners are
    (2,2), (m-1,2), (2,n-1), (m-1,n-1).  ``i1..i2`` is the x-span of the
    bottom vertex row, ``i3..i4`` of the top row, ``j1..j2`` the y-span of
    the left vertex column and ``j3..j4`` of the right column.
    """

    m: int
    n: int
    corner_present: tuple[bool, bool, bool, bool]
    inner_corners_present: tuple[bool, bool, bool, bool]
    i1: int
    i2: int
    i3: int
    i4: int
    j1: int
    j2: int
    j3: int
    j4: int

    @property
    def missing_corners(self) -> tuple[Vertex, ...]:
        corners = ((1, 1), (self.m, 1), (1, self.n), (self.m, self.n))
        return tuple(v for v, ok in zip(corners, self.corner_present) if not ok)


def shape_profile(c: CellCollection) -> ShapeProfile:
    if not is_convex(c):
        raise NotPolyominoError("shape profiles are defined for convex polyominoes")
    V = c.vertices
    m, n = c.m, c.n
    bottom = [x for x, y in V if y == 1]
    top = [x for x, y in V if y == n]
    left = [y for x, y in V if x == 1]
    right = [y for x, y in V if x == m]
    return ShapeProfile(
        m=m,
        n=n,
        corner_present=tuple(v in V for v in ((1, 1), (m, 1), (1, n), (m, n))),
        inner_corners_present=tuple(
            v in V for v in ((2, 2), (m - 1, 2), (2, n - 1), (m - 1, n - 1))
        ),
        i1=min(bottom),
        i2=max(bottom),
        i3=min(top),
        i4=max(top),
        j1=min(left),
        j2=max(left),
        j3=min(right),
        j4=max(right),
    )


@dataclass(frozen=True)
class StackProfile:
    """Width/height data of a stack polyomino and of its truncations.

    ``truncations[k]`` and ``heights[k]`` are the width and height of the
    stack with its ``k`` bottom rows removed.  ``jumps`` starts with 0 (the
    stack itself) followed by every ``k`` where the width strictly drops.
    """

    width: int
    height: int
    truncations: tuple[int, ...]
    heights: tuple[int, ...]
    jumps: tuple[int, ...]


def is_stack(c: CellCollection) -> bool:
    if not is_polyomino(c) or not is_column_convex(c):
        return False
    return all((x, 1) in c.cells for x in range(1, c.m))


def stack_profile(c: CellCollection) -> StackProfile:
    if not is_stack(c):
        raise NotStackError("not a stack polyomino (column convex with a full bottom row)")
    col_height: dict[int, int] = {}
    for x, y in c.cells:
        col_height[x] = max(col_height.get(x, 0), y)
    height = max(col_height.values())
    widths = tuple(sum(1 for x, y in c.cells if y == k + 1) for k in range(height))
    heights = tuple(max(max(h - k, 0) for h in col_height.values()) for k in range(height))
    jumps = (0,) + tuple(k for k in range(1, height) if widths[k] < widths[k - 1])
    return StackProfile(
        width=widths[0], height=height, truncations=widths, heights=heights, jumps=jumps
    )


def stack_orientation(c: CellCollection) -> CellCollection | None:
    """Least symmetric image of ``c`` that is a stack polyomino, if any."""
    stacks = [t for t in all_transforms(c) if is_stack(t)]
    if not stacks:
        return None
    return min(stacks, key=CellCollection.sorted_cells)
