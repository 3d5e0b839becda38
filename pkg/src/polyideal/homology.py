"""Finite simplicial complexes and exact reduced homology."""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

from .linalg import LARGE_PRIME, QQ, Echelon, Field

Face = tuple[int, ...]


class SimplicialComplex:
    """A simplicial complex given by an explicit, subset-closed face list.

    Faces are sorted tuples of vertex labels; the empty face is always
    present.  ``max_dim`` records that only the skeleton up to that
    dimension was enumerated (``None`` means complete), in which case
    homology is only available below ``max_dim``.
    """

    def __init__(self, faces: Iterable[Sequence[int]], max_dim: int | None = None):
        by_size: dict[int, set[Face]] = {0: {()}}
        for f in faces:
            t = tuple(sorted(f))
            by_size.setdefault(len(t), set()).add(t)
        self._faces = {k: sorted(v) for k, v in by_size.items()}
        self.max_dim = max_dim

    @classmethod
    def from_facets(cls, facets: Iterable[Sequence[int]]) -> SimplicialComplex:
        faces: set[Face] = set()
        for f in facets:
            t = tuple(sorted(f))
            for k in range(len(t) + 1):
                faces.update(combinations(t, k))
        return cls(faces)

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(v for (v,) in self._faces.get(1, []))

    @property
    def dimension(self) -> int:
        return max(self._faces) - 1

    def faces(self, dim: int) -> list[Face]:
        """Faces of the given dimension (the empty face has dimension -1)."""
        return self._faces.get(dim + 1, [])

    def all_faces(self) -> list[Face]:
        return [f for k in sorted(self._faces) for f in self._faces[k]]

    def f_vector(self) -> tuple[int, ...]:
        """Face counts starting with the empty face: (f_-1, f_0, f_1, ...)."""
        top = max(self._faces)
        return tuple(len(self._faces.get(k, [])) for k in range(top + 1))

    def reduced_euler_characteristic(self) -> int:
        return sum((-1) ** (k - 1) * len(v) for k, v in self._faces.items())

    def facets(self) -> list[Face]:
        faces = self.all_faces()
        sets = [frozenset(f) for f in faces]
        return [f for f, s in zip(faces, sets) if not any(s < t for t in sets)]

    def is_closed(self) -> bool:
        present = set(self.all_faces())
        return all(f[:j] + f[j + 1 :] in present for f in present for j in range(len(f)))

    def relabel(self, mapping: dict[int, int]) -> SimplicialComplex:
        return SimplicialComplex(
            [tuple(mapping[v] for v in f) for f in self.all_faces()], self.max_dim
        )

    def boundary_columns(self, dim: int) -> list[dict[int, int]]:
        """Columns of the boundary map from dim-faces to (dim-1)-faces."""
        lower = {f: i for i, f in enumerate(self.faces(dim - 1))}
        cols = []
        for f in self.faces(dim):
            col = {}
            for j in range(len(f)):
                col[lower[f[:j] + f[j + 1 :]]] = -1 if j % 2 else 1
            cols.append(col)
        return cols

    def __repr__(self) -> str:
        return f"SimplicialComplex(f_vector={self.f_vector()})"


def _boundary_rank(cx: SimplicialComplex, dim: int, field: Field) -> int:
    if dim < 0 or not cx.faces(dim):
        return 0
    ech = Echelon(field)
    for col in cx.boundary_columns(dim):
        ech.add(col)
    return ech.rank


def _homology_dims(cx: SimplicialComplex, dims: Iterable[int], field: Field) -> dict[int, int]:
    ranks: dict[int, int] = {}

    def r(d: int) -> int:
        if d not in ranks:
            ranks[d] = _boundary_rank(cx, d, field)
        return ranks[d]

    return {i: len(cx.faces(i)) - r(i) - r(i + 1) for i in dims}


def reduced_homology_ranks(
    cx: SimplicialComplex, dims: Iterable[int] | None = None, field: Field = QQ
) -> dict[int, int]:
    """Ranks of reduced homology H~_i for the requested dimensions.

    Over the rationals, ranks are first computed modulo a large prime: the
    mod-p rank of H~_i bounds the rational one from above, so a zero there
    is already exact and the integer elimination is skipped.
    """
    top = cx.dimension if cx.max_dim is None else cx.max_dim - 1
    if dims is None:
        dims = range(-1, top + 1)
    dims = list(dims)
    for i in dims:
        if cx.max_dim is not None and i >= cx.max_dim:
            raise ValueError(f"H~_{i} needs faces above the enumerated dimension {cx.max_dim}")
    field = Field.parse(field)
    if not field.is_rational:
        return _homology_dims(cx, dims, field)
    approx = _homology_dims(cx, dims, Field(LARGE_PRIME))
    need = [i for i in dims if approx[i]]
    out = {i: 0 for i in dims}
    if need:
        out.update(_homology_dims(cx, need, QQ))
    return out


def reduced_homology_rank(cx: SimplicialComplex, i: int, field: Field = QQ) -> int:
    return reduced_homology_ranks(cx, [i], field)[i]
