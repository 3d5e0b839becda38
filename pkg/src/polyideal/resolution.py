"""Multigraded Betti numbers through squarefree divisor complexes, and an
independent check through explicit first syzygies."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable, Sequence

from .errors import NotInSemigroupError, NotPolyominoError, PolyidealError, ResourceCapError
from .homology import SimplicialComplex, reduced_homology_ranks
from .linalg import QQ, Echelon, Field, nullspace
from .polyomino import CellCollection, is_convex, is_polyomino
from .toric import (
    BIPARTITE_FLOW,
    AffineSemigroup,
    InnerMinor,
    h_vector,
    inner_minors,
    semigroup_of,
)

MultiDegree = tuple[int, ...]

DEFAULT_BETTI_DEGREE = 6
DEFAULT_SCAN_DEGREE = 4
DEFAULT_SLICE_DEGREE = 5


# -- divisor complexes -------------------------------------------------------


def divisor_complex(
    sg: AffineSemigroup, h: Sequence[int], max_dim: int | None = None
) -> SimplicialComplex:
    """The complex of generator sets F with h - sum(F) in the semigroup.

    With ``max_dim`` only faces of dimension <= max_dim are enumerated.
    """
    h = tuple(h)
    if not sg.contains(h):
        raise NotInSemigroupError(f"{h} is not in the semigroup")
    gens = sg.generators
    verts = [k for k, g in enumerate(gens) if sg.contains(_sub(h, g))]
    limit = None if max_dim is None else max_dim + 1
    faces: list[tuple[int, ...]] = [()]

    def grow(face: tuple[int, ...], rest: MultiDegree, start: int) -> None:
        if limit is not None and len(face) >= limit:
            return
        for pos in range(start, len(verts)):
            k = verts[pos]
            r = _sub(rest, gens[k])
            if min(r) >= 0 and sg.contains(r):
                f = face + (k,)
                faces.append(f)
                grow(f, r, pos + 1)

    grow((), h, 0)
    return SimplicialComplex(faces, max_dim)


def _sub(a: Sequence[int], b: Sequence[int]) -> MultiDegree:
    return tuple(x - y for x, y in zip(a, b))


def _local_key(sg: AffineSemigroup, h: MultiDegree) -> tuple | None:
    """A key that determines the divisor complex of h up to isomorphism.

    For bipartite semigroups the complex only sees the vertex pattern on the
    support rows and columns of h together with the multiplicities there.
    Rows and columns are sorted by a few refinement passes; the result need
    not be canonical, only isomorphism-faithful.
    """
    if sg.kind != BIPARTITE_FLOW:
        return None
    m = sg.rows
    R = [i for i in range(m) if h[i]]
    C = [j for j in range(sg.cols) if h[m + j]]
    a = [h[i] for i in R]
    b = [h[m + j] for j in C]
    pat = [[1 if j in sg.adj[i] else 0 for j in C] for i in R]
    best = None
    for rows, cols, mat in ((a, b, pat), (b, a, [list(c) for c in zip(*pat)])):
        key = _refine(rows, cols, mat)
        if best is None or key < best:
            best = key
    return best


def _refine(rw: list[int], cw: list[int], mat: list[list[int]]) -> tuple:
    ri = list(range(len(rw)))
    ci = list(range(len(cw)))
    for _ in range(3):
        ci.sort(key=lambda j: (cw[j], [mat[i][j] for i in ri]))
        ri.sort(key=lambda i: (rw[i], [mat[i][j] for j in ci]))
    return (
        tuple(rw[i] for i in ri),
        tuple(cw[j] for j in ci),
        tuple(tuple(mat[i][j] for j in ci) for i in ri),
    )


_HOMOLOGY_CACHE: dict[tuple, dict[int, int]] = {}
_CACHE_LIMIT = 500_000


def divisor_homology(
    sg: AffineSemigroup, h: Sequence[int], dims: Sequence[int], field: Field = QQ
) -> dict[int, int]:
    """Reduced homology ranks of the divisor complex of h in the given
    dimensions, memoized on the local structure of h."""
    h = tuple(h)
    dims = tuple(sorted(dims))
    field = Field.parse(field)
    # two levels: the raw local data (cheap), then a symmetry-reduced key
    raw = _raw_key(sg, h)
    if raw is not None:
        hit = _RAW_CACHE.get((raw, dims, field.p))
        if hit is not None:
            return dict(hit)
    key = _local_key(sg, h)
    out = None
    if key is not None:
        out = _HOMOLOGY_CACHE.get((key, dims, field.p))
    if out is None:
        cx = divisor_complex(sg, h, max_dim=max(dims) + 1)
        out = reduced_homology_ranks(cx, dims, field)
    if key is not None:
        for cache, k in ((_HOMOLOGY_CACHE, key), (_RAW_CACHE, raw)):
            if len(cache) > _CACHE_LIMIT:
                cache.clear()
            cache[(k, dims, field.p)] = dict(out)
    return dict(out)


_RAW_CACHE: dict[tuple, dict[int, int]] = {}


def _raw_key(sg: AffineSemigroup, h: MultiDegree) -> tuple | None:
    """Multiplicities on the support plus the vertex pattern there, with
    rows and columns kept in their original order."""
    if sg.kind != BIPARTITE_FLOW:
        return None
    masks = sg.__dict__.get("_row_masks")
    if masks is None:
        masks = [sum(1 << j for j in adj) for adj in sg.adj]
        sg._row_masks = masks
    m = sg.rows
    cols = h[m:]
    supp = 0
    low = -1
    for j, x in enumerate(cols):
        if x:
            supp |= 1 << j
            if low < 0:
                low = j
    if low < 0:
        return ((), (), 0)
    return (
        tuple((x, (masks[i] & supp) >> low) for i, x in enumerate(h[:m]) if x),
        tuple(x for x in cols if x),
        supp >> low,
    )


# -- Betti tables ------------------------------------------------------------


@dataclass
class BettiTable:
    """Betti numbers of the coordinate ring K[H] in the multidegrees computed.

    ``multigraded[(i, h)]`` is beta_{i,h}(K[H]) for nonzero entries.  The ideal
    view shifts the homological index: beta_{i,h}(I) = beta_{i+1,h}(K[H]).
    """

    field: Field
    degree_cap: int
    multigraded: dict[tuple[int, MultiDegree], int] = dc_field(default_factory=dict)
    complete: bool = True
    cap_note: str | None = None
    computed_upto: int = -1
    # total degree of a multidegree; supplied by the semigroup
    grading: Callable[[MultiDegree], int] | None = dc_field(default=None, repr=False, compare=False)

    @property
    def totals(self) -> dict[tuple[int, int], int]:
        out: dict[tuple[int, int], int] = {}
        for (i, h), v in self.multigraded.items():
            j = self.grading(h)  # type: ignore[misc]
            out[(i, j)] = out.get((i, j), 0) + v
        return out

    def ring(self, i: int, j: int) -> int:
        return self.totals.get((i, j), 0)

    def ideal(self, i: int, j: int) -> int:
        return self.totals.get((i + 1, j), 0)

    def ideal_multigraded(self) -> dict[tuple[int, MultiDegree], int]:
        return {(i - 1, h): v for (i, h), v in self.multigraded.items() if i >= 1}

    def to_text(self) -> str:
        top = self.computed_upto
        tot = self.totals
        idx = sorted({i - 1 for (i, _) in tot if i >= 1})
        width = max(4, len(str(max(tot.values(), default=0))) + 1)
        head = "      " + "".join(f"{j:>{width}}" for j in range(top + 1))
        lines = [f"Betti numbers of I over {self.field}, computed up to degree {top}"]
        if not self.complete:
            lines.append(f"PARTIAL: {self.cap_note}")
        lines.append(head)
        for i in idx:
            row = "".join(
                f"{(tot.get((i + 1, j), 0) or '.')!s:>{width}}" for j in range(top + 1)
            )
            lines.append(f"{i:>4}: {row}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "field": str(self.field),
            "degree_cap": self.degree_cap,
            "computed_upto": self.computed_upto,
            "complete": self.complete,
            "cap_note": self.cap_note,
            "ideal_totals": [
                {"i": i - 1, "j": j, "beta": v}
                for (i, j), v in sorted(self.totals.items())
                if i >= 1
            ],
            "ring_multigraded": [
                {"i": i, "h": list(h), "beta": v}
                for (i, h), v in sorted(self.multigraded.items())
            ],
        }


def betti_table_of_semigroup(
    sg: AffineSemigroup,
    max_degree: int = DEFAULT_BETTI_DEGREE,
    field: Field | str = QQ,
    ring_indices: Sequence[int] | None = None,
) -> BettiTable:
    """Betti numbers beta_{i,h}(K[H]) for all h with |h| <= max_degree.

    ``ring_indices`` restricts the homological indices computed; the
    complexes are then only enumerated as far as those indices need.
    """
    if max_degree < 0:
        raise ValueError("max_degree must be nonnegative")
    field = Field.parse(field)
    table = BettiTable(field=field, degree_cap=max_degree, grading=sg.degree)
    for d in range(max_degree + 1):
        try:
            layer = sg.layer(d)
        except ResourceCapError as exc:
            table.complete = False
            table.cap_note = str(exc)
            return table
        if ring_indices is None:
            idx = list(range(0, d + 1))
        else:
            idx = [i for i in ring_indices if 0 <= i <= d]
        if not idx:
            table.computed_upto = d
            continue
        dims = [i - 1 for i in idx]
        for h in layer:
            ranks = divisor_homology(sg, h, dims, field)
            for i in idx:
                r = ranks[i - 1]
                if r:
                    table.multigraded[(i, h)] = r
        table.computed_upto = d
    return table


def betti_table(
    c: CellCollection,
    max_degree: int = DEFAULT_BETTI_DEGREE,
    field: Field | str = QQ,
    ideal_indices: Sequence[int] | None = None,
) -> BettiTable:
    """Betti table of the inner-minor ideal of ``c`` up to total degree
    ``max_degree``; ``ideal_indices`` limits the homological indices of I."""
    if max_degree < 2:
        raise ValueError("max_degree must be at least 2")
    ring = None if ideal_indices is None else [i + 1 for i in ideal_indices]
    return betti_table_of_semigroup(semigroup_of(c), max_degree, field, ring)


# -- explicit first syzygies -------------------------------------------------


@dataclass(frozen=True)
class SyzygySlice:
    """Degree-h piece of the first syzygies of the inner-minor generators."""

    h: MultiDegree
    relation_dim: int
    minimal_dim: int
    field: Field = QQ


class SyzygyEngine:
    """Linear algebra of the presentation  (+) S e_k -> I  in one multidegree.

    Monomials of S are sorted tuples of vertex indices.  The module element
    (k, mono) stands for mono * e_k.
    """

    def __init__(self, c: CellCollection, field: Field | str = QQ, max_degree: int = DEFAULT_SLICE_DEGREE):
        self.c = c
        self.field = Field.parse(field)
        self.max_degree = max_degree
        self.sg = semigroup_of(c)
        self.vertex_index = {v: k for k, v in enumerate(self.sg.labels)}
        self.minors = inner_minors(c)
        self.minor_index = {f: k for k, f in enumerate(self.minors)}
        self._minor_terms = []
        self._minor_deg = []
        for f in self.minors:
            p = tuple(sorted(self.vertex_index[v] for v in f.plus))
            q = tuple(sorted(self.vertex_index[v] for v in f.minus))
            self._minor_terms.append((p, q))
            self._minor_deg.append(self._mono_deg(p))
        self._fibers: dict[MultiDegree, list[tuple[int, ...]]] = {}
        self._supports = [tuple((t, x) for t, x in enumerate(g) if x) for g in self.sg.generators]
        self._syz: dict[MultiDegree, tuple[list[tuple[int, tuple[int, ...]]], list[dict[int, int]]]] = {}
        self._msyz: dict[MultiDegree, Echelon] = {}

    def _mono_deg(self, mono: tuple[int, ...]) -> MultiDegree:
        out = [0] * self.sg.ambient_dim
        for k in mono:
            for t, x in enumerate(self.sg.generators[k]):
                out[t] += x
        return tuple(out)

    def fiber(self, h: MultiDegree) -> list[tuple[int, ...]]:
        """All monomials of S of multidegree h, sorted."""
        hit = self._fibers.get(h)
        if hit is not None:
            return hit
        supports = self._supports
        out: list[tuple[int, ...]] = []

        def rec(rest: list[int], start: int, acc: tuple[int, ...]) -> None:
            if not any(rest):
                out.append(acc)
                return
            for k in range(start, len(supports)):
                sup = supports[k]
                if any(rest[t] < x for t, x in sup):
                    continue
                for t, x in sup:
                    rest[t] -= x
                if self.sg.contains(tuple(rest)):
                    rec(rest, k, acc + (k,))
                for t, x in sup:
                    rest[t] += x

        if min(h) >= 0 and self.sg.contains(h):
            rec(list(h), 0, ())
        self._fibers[h] = out
        return out

    def _check(self, h: MultiDegree) -> None:
        if len(h) != self.sg.ambient_dim:
            raise ValueError("multidegree has the wrong length")
        if self.sg.degree(h) > self.max_degree:
            raise ResourceCapError(
                f"syzygy slice of degree {self.sg.degree(h)} exceeds the guard {self.max_degree}"
            )

    def module_basis(self, h: MultiDegree) -> list[tuple[int, tuple[int, ...]]]:
        basis = []
        for k, dk in enumerate(self._minor_deg):
            rest = _sub(h, dk)
            if min(rest) >= 0:
                basis.extend((k, mono) for mono in self.fiber(rest))
        return basis

    def syzygies(self, h: MultiDegree) -> tuple[list[tuple[int, tuple[int, ...]]], list[dict[int, int]]]:
        """Basis of the module in degree h and a basis of the kernel."""
        hit = self._syz.get(h)
        if hit is not None:
            return hit
        basis = self.module_basis(h)
        target = {mono: t for t, mono in enumerate(self.fiber(h))}
        cols = []
        for k, mono in basis:
            p, q = self._minor_terms[k]
            col = {target[tuple(sorted(mono + p))]: 1}
            qi = target[tuple(sorted(mono + q))]
            col[qi] = col.get(qi, 0) - 1
            cols.append({r: x for r, x in col.items() if x})
        kernel = nullspace(cols, self.field)
        self._syz[h] = (basis, kernel)
        return basis, kernel

    def decomposables(self, h: MultiDegree) -> Echelon:
        """Echelon basis of (m * Syz)_h, in the coordinates of module_basis(h)."""
        hit = self._msyz.get(h)
        if hit is not None:
            return hit
        basis = self.module_basis(h)
        pos = {b: t for t, b in enumerate(basis)}
        ech = Echelon(self.field)
        for v, g in enumerate(self.sg.generators):
            low = _sub(h, g)
            if min(low) < 0 or not self.sg.contains(low):
                continue
            lbasis, lker = self.syzygies(low)
            for vec in lker:
                ech.add(
                    {pos[(lbasis[t][0], tuple(sorted(lbasis[t][1] + (v,))))]: x for t, x in vec.items()}
                )
        self._msyz[h] = ech
        return ech

    def slice(self, h: Sequence[int]) -> SyzygySlice:
        h = tuple(h)
        self._check(h)
        _, ker = self.syzygies(h)
        dec = self.decomposables(h)
        return SyzygySlice(h, len(ker), len(ker) - dec.rank, self.field)

    def koszul_minimal(self, a: InnerMinor, b: InnerMinor) -> tuple[bool, MultiDegree]:
        if a == b:
            raise ValueError("a Koszul pair needs two different minors")
        ka, kb = self.minor_index[a], self.minor_index[b]
        h = tuple(x + y for x, y in zip(self._minor_deg[ka], self._minor_deg[kb]))
        self._check(h)
        basis = self.module_basis(h)
        pos = {bb: t for t, bb in enumerate(basis)}
        pa, ma = self._minor_terms[ka]
        pb, mb = self._minor_terms[kb]
        vec: dict[int, int] = {}
        # f_a e_b - f_b e_a
        for key, x in (((kb, pa), 1), ((kb, ma), -1), ((ka, pb), -1), ((ka, mb), 1)):
            t = pos[key]
            vec[t] = vec.get(t, 0) + x
        vec = {t: x for t, x in vec.items() if x}
        return not self.decomposables(h).contains(vec), h


def syzygy_slice(c: CellCollection, h: Sequence[int], field: Field | str = QQ,
                 max_degree: int = DEFAULT_SLICE_DEGREE) -> SyzygySlice:
    return SyzygyEngine(c, field, max_degree).slice(h)


def koszul_pair_minimal(c: CellCollection, a: InnerMinor, b: InnerMinor, field: Field | str = QQ) -> bool:
    return SyzygyEngine(c, field).koszul_minimal(a, b)[0]


def minimal_koszul_pairs(
    c: CellCollection, field: Field | str = QQ, first_only: bool = False
) -> list[tuple[InnerMinor, InnerMinor]]:
    """All pairs of inner minors whose Koszul syzygy is minimal."""
    eng = SyzygyEngine(c, field)
    out = []
    ms = eng.minors
    for x in range(len(ms)):
        for y in range(x + 1, len(ms)):
            if eng.koszul_minimal(ms[x], ms[y])[0]:
                out.append((ms[x], ms[y]))
                if first_only:
                    return out
    return out


# -- verdicts ---------------------------------------------------------------


@dataclass(frozen=True)
class OracleVerdict:
    value: bool
    witness: MultiDegree | None = None


def is_linearly_related_oracle(
    c: CellCollection, field: Field | str = QQ, degree: int = DEFAULT_SCAN_DEGREE
) -> OracleVerdict:
    """Linearly related iff beta_{1,h}(I) = 0 for every h of degree 4.

    First syzygies of quadrics live in degrees 3 and 4 only, so the single
    degree-4 layer decides the question.  A failing h is returned.
    """
    sg = semigroup_of(c)
    if len(sg) <= 2:
        return OracleVerdict(True)
    for h in sg.layer(degree):
        if divisor_homology(sg, h, (1,), field)[1]:
            return OracleVerdict(False, h)
    return OracleVerdict(True)


@dataclass(frozen=True)
class ResolutionVerdict:
    h_vector: tuple[int, ...]
    is_gorenstein: bool
    has_linear_resolution: bool
    is_extremal_gorenstein: bool

    def to_json(self) -> dict:
        return {
            "h_vector": list(self.h_vector),
            "is_gorenstein": self.is_gorenstein,
            "has_linear_resolution": self.has_linear_resolution,
            "is_extremal_gorenstein": self.is_extremal_gorenstein,
        }


def verdict_from_h(h: Sequence[int]) -> ResolutionVerdict:
    h = tuple(h)
    return ResolutionVerdict(
        h_vector=h,
        is_gorenstein=h == h[::-1],
        has_linear_resolution=len(h) <= 2,
        is_extremal_gorenstein=len(h) == 3 and h[2] == 1 and h[1] > 1,
    )


def resolution_verdict(c: CellCollection) -> ResolutionVerdict:
    """Resolution shape read off the h-vector of a convex collection, whose
    coordinate ring is Cohen-Macaulay."""
    if not is_polyomino(c) or not is_convex(c):
        raise NotPolyominoError("resolution_verdict needs a convex polyomino")
    return verdict_from_h(h_vector(semigroup_of(c)))


__all__ = [
    "BettiTable",
    "MultiDegree",
    "OracleVerdict",
    "PolyidealError",
    "ResolutionVerdict",
    "SyzygyEngine",
    "SyzygySlice",
    "betti_table",
    "betti_table_of_semigroup",
    "divisor_complex",
    "divisor_homology",
    "is_linearly_related_oracle",
    "koszul_pair_minimal",
    "minimal_koszul_pairs",
    "resolution_verdict",
    "syzygy_slice",
    "verdict_from_h",
]
