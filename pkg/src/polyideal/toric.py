"""Toric view of a cell collection.

The vertex ``(i, j)`` of a collection corresponds to the monomial
``s_i t_j``; the ideal of inner 2-minors is the kernel of
``x_ij -> s_i t_j``, so the coordinate ring is the semigroup ring of the
semigroup generated by the exponent vectors of these monomials.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .errors import NotInSemigroupError, ResourceCapError
from .linalg import QQ, matrix_rank
from .polyomino import CellCollection, Vertex, is_polyomino, is_row_convex

BIPARTITE_FLOW = "bipartite-flow"
HIBI_MONOTONE = "hibi-monotone"
GENERIC_SEARCH = "generic-search"

DEFAULT_MAX_LAYER = 5_000_000


class AffineSemigroup:
    """A finitely generated, standard graded subsemigroup of N^n.

    Every generator has degree 1 for the grading vector ``grading``.
    Membership is answered by the oracle selected by ``kind`` and memoized.
    """

    def __init__(
        self,
        generators: Iterable[Sequence[int]],
        kind: str = GENERIC_SEARCH,
        *,
        grading: Sequence[int] | None = None,
        rows: int | None = None,
        relations: Iterable[tuple[int, int]] = (),
        labels: Sequence[object] | None = None,
        max_layer: int = DEFAULT_MAX_LAYER,
    ):
        gens = [tuple(int(x) for x in g) for g in generators]
        if not gens:
            raise ValueError("a semigroup needs at least one generator")
        dim = len(gens[0])
        if any(len(g) != dim for g in gens):
            raise ValueError("generators have different lengths")
        if len(set(gens)) != len(gens):
            raise ValueError("generators must be distinct")
        if any(min(g) < 0 or not any(g) for g in gens):
            raise ValueError("generators must be nonzero and nonnegative")
        self.generators: tuple[tuple[int, ...], ...] = tuple(gens)
        self.ambient_dim = dim
        self.kind = kind
        self.labels = tuple(labels) if labels is not None else tuple(range(len(gens)))
        self.max_layer = max_layer
        if grading is None:
            s = sum(gens[0])
            if any(sum(g) != s for g in gens):
                raise ValueError("pass a grading vector: generators have unequal sums")
            grading = None
            self._sum_degree = s
        else:
            grading = tuple(grading)
            if any(sum(w * x for w, x in zip(grading, g)) != 1 for g in gens):
                raise ValueError("grading does not give every generator degree 1")
            self._sum_degree = None
        self.grading = grading
        self._memo: dict[tuple[int, ...], bool] = {}
        self._layers: list[np.ndarray] | None = None

        if kind == BIPARTITE_FLOW:
            if rows is None:
                raise ValueError("bipartite-flow semigroups need the row count")
            self.rows = rows
            self.cols = dim - rows
            self.adj: list[set[int]] = [set() for _ in range(rows)]
            for g in gens:
                r = [i for i in range(rows) if g[i]]
                c = [j for j in range(self.cols) if g[rows + j]]
                if len(r) != 1 or len(c) != 1 or g[r[0]] != 1 or g[rows + c[0]] != 1:
                    raise ValueError("bipartite-flow generators must be s_i + t_j")
                self.adj[r[0]].add(c[0])
        elif kind == HIBI_MONOTONE:
            self.relations = tuple(relations)
        elif kind != GENERIC_SEARCH:
            raise ValueError(f"unknown membership kind {kind!r}")

    def __len__(self) -> int:
        return len(self.generators)

    def __repr__(self) -> str:
        return f"AffineSemigroup({len(self)} generators in N^{self.ambient_dim}, {self.kind})"

    def degree(self, h: Sequence[int]) -> int:
        if self.grading is not None:
            return sum(w * x for w, x in zip(self.grading, h))
        return sum(h) // self._sum_degree

    # -- membership ----------------------------------------------------------

    def contains(self, h: Sequence[int]) -> bool:
        h = tuple(h)
        if len(h) != self.ambient_dim:
            raise ValueError(f"dimension mismatch: {len(h)} vs {self.ambient_dim}")
        hit = self._memo.get(h)
        if hit is not None:
            return hit
        if min(h) < 0:
            ok = False
        elif not any(h):
            ok = True
        elif self.kind == BIPARTITE_FLOW:
            ok = transport_feasible(h[: self.rows], h[self.rows :], self.adj)
        elif self.kind == HIBI_MONOTONE:
            ok = self._hibi_contains(h)
        else:
            ok = self._search_contains(h)
        self._memo[h] = ok
        return ok

    __contains__ = contains

    def _hibi_contains(self, h: tuple[int, ...]) -> bool:
        k = h[-1]
        f = h[:-1]
        if any(v > k for v in f):
            return False
        return all(f[a] >= f[b] for a, b in self.relations)

    def _search_contains(self, h: tuple[int, ...]) -> bool:
        if self.grading is None and sum(h) % self._sum_degree:
            return False
        for g in self.generators:
            rest = tuple(x - y for x, y in zip(h, g))
            if min(rest) >= 0 and self.contains(rest):
                return True
        return False

    # -- degree layers -------------------------------------------------------

    def layer(self, d: int) -> list[tuple[int, ...]]:
        """All distinct semigroup elements of degree ``d``, sorted."""
        arr = self._layer_array(d)
        return sorted(map(tuple, arr.tolist()))

    def _layer_array(self, d: int) -> np.ndarray:
        if d < 0:
            raise ValueError("degree must be nonnegative")
        G = np.array(self.generators, dtype=np.int64)
        if self._layers is None:
            self._layers = [np.zeros((1, self.ambient_dim), dtype=np.int64), G.copy()]
        while len(self._layers) <= d:
            self._layers.append(_next_layer(self._layers[-1], G, len(self._layers), self.max_layer))
        return self._layers[d]


def _next_layer(prev: np.ndarray, G: np.ndarray, d: int, cap: int) -> np.ndarray:
    """Distinct sums prev + g, computed by integer encoding when it fits."""
    dim = G.shape[1]
    radix = int(G.max()) * d + 1
    if prev.shape[0] * G.shape[0] > 40 * cap:
        raise ResourceCapError(f"degree-{d} closure exceeds the layer cap {cap}")
    chunk = max(1, 2_000_000 // max(1, prev.shape[0]))
    if radix**dim < 2**62:
        w = np.array([radix**k for k in range(dim)], dtype=np.int64)
        pc = prev @ w
        gc = G @ w
        parts = [np.unique((pc[:, None] + gc[None, s : s + chunk]).ravel())
                 for s in range(0, len(gc), chunk)]
        codes = np.unique(np.concatenate(parts))
        if codes.size > cap:
            raise ResourceCapError(f"degree-{d} layer has {codes.size} elements (cap {cap})")
        return (codes[:, None] // w[None, :]) % radix
    parts = [np.unique((prev[:, None, :] + G[None, s : s + chunk, :]).reshape(-1, dim), axis=0)
             for s in range(0, len(G), chunk)]
    out = np.unique(np.concatenate(parts), axis=0)
    if out.shape[0] > cap:
        raise ResourceCapError(f"degree-{d} layer has {out.shape[0]} elements (cap {cap})")
    return out


def transport_feasible(a: Sequence[int], b: Sequence[int], adj: Sequence[set[int]]) -> bool:
    """Is there a nonnegative integer matrix with row sums ``a``, column sums
    ``b`` and support inside ``adj``?  Decided by augmenting-path max-flow."""
    total = sum(a)
    if total != sum(b):
        return False
    rows = [i for i, x in enumerate(a) if x]
    cols_needed = {j for j, x in enumerate(b) if x}
    for i in rows:
        if not adj[i] & cols_needed:
            return False
    flow: dict[tuple[int, int], int] = {}
    out = {i: 0 for i in rows}
    into = {j: 0 for j in cols_needed}
    users: dict[int, set[int]] = {j: set() for j in cols_needed}
    sent = 0
    while sent < total:
        # BFS from rows with spare supply to columns with spare demand
        parent: dict[object, object] = {}
        queue = deque()
        for i in rows:
            if out[i] < a[i]:
                parent[("r", i)] = None
                queue.append(("r", i))
        end = None
        while queue and end is None:
            node = queue.popleft()
            if node[0] == "r":
                i = node[1]
                for j in adj[i]:
                    if j in cols_needed and ("c", j) not in parent:
                        parent[("c", j)] = node
                        if into[j] < b[j]:
                            end = ("c", j)
                            break
                        queue.append(("c", j))
            else:
                j = node[1]
                for i in users[j]:
                    if ("r", i) not in parent:
                        parent[("r", i)] = node
                        queue.append(("r", i))
        if end is None:
            return False
        # augment by one unit along the path
        node = end
        into[end[1]] += 1
        while True:
            prev = parent[node]
            if prev is None:
                out[node[1]] += 1
                break
            if node[0] == "c":
                key = (prev[1], node[1])
                flow[key] = flow.get(key, 0) + 1
                users[node[1]].add(prev[1])
            else:
                key = (node[1], prev[1])
                flow[key] -= 1
                if not flow[key]:
                    users[prev[1]].discard(node[1])
            node = prev
        sent += 1
    return True


# -- the semigroup of a collection -------------------------------------------


def semigroup_of(c: CellCollection) -> AffineSemigroup:
    """Semigroup generated by s_i t_j for the vertices (i, j) of ``c``.

    Coordinates 0..m-1 hold the s-block (x-coordinates), m..m+n-1 the
    t-block (y-coordinates).  Generators follow the sorted vertex order.
    """
    m, n = c.m, c.n
    verts = sorted(c.vertices)
    gens = []
    for i, j in verts:
        g = [0] * (m + n)
        g[i - 1] = 1
        g[m + j - 1] = 1
        gens.append(g)
    return AffineSemigroup(
        gens, BIPARTITE_FLOW, grading=[1] * m + [0] * n, rows=m, labels=verts
    )


def vertex_degree(c: CellCollection, v: Vertex) -> tuple[int, ...]:
    g = [0] * (c.m + c.n)
    g[v[0] - 1] += 1
    g[c.m + v[1] - 1] += 1
    return tuple(g)


@dataclass(frozen=True)
class InnerMinor:
    """The binomial x_il x_kj - x_kl x_ij of the interval [(i,j),(k,l)]."""

    interval: tuple[Vertex, Vertex]

    @property
    def plus(self) -> tuple[Vertex, Vertex]:
        (i, j), (k, l) = self.interval
        return (i, l), (k, j)

    @property
    def minus(self) -> tuple[Vertex, Vertex]:
        (i, j), (k, l) = self.interval
        return (k, l), (i, j)

    def multidegree(self, c: CellCollection) -> tuple[int, ...]:
        a, b = self.plus
        return tuple(x + y for x, y in zip(vertex_degree(c, a), vertex_degree(c, b)))

    def to_json(self) -> dict:
        return {
            "interval": [list(v) for v in self.interval],
            "plus": [list(v) for v in self.plus],
            "minus": [list(v) for v in self.minus],
        }

    def __str__(self) -> str:
        def x(v: Vertex) -> str:
            return f"x{v[0]}{v[1]}" if max(v) < 10 else f"x[{v[0]},{v[1]}]"

        (a, b), (c, d) = self.plus, self.minus
        return f"{x(a)}*{x(b)} - {x(c)}*{x(d)}"


def inner_minors(c: CellCollection) -> list[InnerMinor]:
    """2-minors whose four interval corners are vertices of ``c``."""
    V = c.vertices
    out = []
    for i, j in sorted(V):
        for k in range(i + 1, c.m + 1):
            if (k, j) not in V:
                continue
            for l in range(j + 1, c.n + 1):
                if (i, l) in V and (k, l) in V:
                    out.append(InnerMinor(((i, j), (k, l))))
    return out


# -- bipartite graph and chordality ------------------------------------------


@dataclass(frozen=True)
class BipartiteGraph:
    """Left vertices s_1..s_m, right vertices t_1..t_n, edges {s_i, t_j}."""

    m: int
    n: int
    edges: frozenset[tuple[int, int]]


def edge_graph(c: CellCollection) -> BipartiteGraph:
    return BipartiteGraph(c.m, c.n, frozenset(c.vertices))


def find_chord_pivot(f: Sequence[int]) -> tuple[int, int]:
    """For f(1..r+1) with f(r+1) = f(1), r >= 3 and f injective on 1..r,
    return 1-based (s, t) with f(s) < f(t) < f(s+1) or f(s+1) < f(t) < f(s).

    Follows the constructive case split on the first monotone run.
    """
    r = len(f) - 1
    if r < 3:
        raise ValueError("need r >= 3")
    if f[r] != f[0]:
        raise ValueError("need f(r+1) = f(1)")
    if len(set(f[:r])) != r:
        raise ValueError("f must be injective on 1..r")
    sign = 1 if f[0] < f[1] else -1
    g = [sign * v for v in f]  # reduce to an increasing start
    q = 2
    while q < r + 1 and g[q - 1] < g[q]:
        q += 1
    # now g(1) < ... < g(q) > g(q+1), with q <= r
    if q == r:
        return r, 2
    if g[q] > g[0]:
        t = q + 1
        for s in range(1, q):
            if g[s - 1] < g[t - 1] < g[s]:
                return s, t
        raise AssertionError("unreachable: g(q+1) lies inside (g(1), g(q))")
    return q, 1


def _cycle_to_vertices(cycle: Sequence[int], m: int) -> list[Vertex]:
    """Graph cycle (row nodes < m, column nodes >= m) as the vertex sequence
    a_1..a_2r with a_{2k-1} = (i_k, j_k) and a_{2k} = (i_{k+1}, j_k)."""
    nodes = list(cycle)
    if nodes[0] >= m:
        nodes = nodes[1:] + nodes[:1]
    r = len(nodes) // 2
    out = []
    for k in range(r):
        i, j = nodes[2 * k], nodes[2 * k + 1] - m
        i_next = nodes[(2 * k + 2) % len(nodes)]
        out.append((i + 1, j + 1))
        out.append((i_next + 1, j + 1))
    return out


@dataclass(frozen=True)
class ChordalityCertificate:
    """Outcome of the every-long-cycle-has-a-chord test.

    ``witness`` is a chordless cycle of length >= 6 as a vertex sequence
    when ``ok`` is false.  ``chords`` holds sampled (cycle, chord) pairs
    found through :func:`find_chord_pivot` when ``ok`` is true.
    """

    ok: bool
    witness: tuple[Vertex, ...] | None = None
    chords: tuple[tuple[tuple[Vertex, ...], Vertex], ...] = field(default=())


def _adjacency(g: BipartiteGraph) -> list[set[int]]:
    adj: list[set[int]] = [set() for _ in range(g.m + g.n)]
    for i, j in g.edges:
        adj[i - 1].add(g.m + j - 1)
        adj[g.m + j - 1].add(i - 1)
    return adj


def _chordless_cycle(adj: list[set[int]], max_len: int) -> list[int] | None:
    """Search for an induced cycle of length >= 6 via induced-path DFS."""
    nn = len(adj)
    for start in range(nn):
        path = [start]
        onpath = {start}
        # blocked[v] counts internal path vertices adjacent to v
        blocked = [0] * nn

        def dfs() -> list[int] | None:
            last = path[-1]
            for v in sorted(adj[last]):
                if v <= start or v in onpath or blocked[v]:
                    continue
                if len(path) >= 2 and v in adj[start]:
                    if len(path) + 1 >= 6:
                        return path + [v]
                    continue
                if len(path) + 1 >= max_len:
                    continue
                # 'last' becomes an internal vertex once v is appended
                if len(path) >= 2:
                    for u in adj[last]:
                        blocked[u] += 1
                path.append(v)
                onpath.add(v)
                found = dfs()
                path.pop()
                onpath.discard(v)
                if len(path) >= 2:
                    for u in adj[last]:
                        blocked[u] -= 1
                if found:
                    return found
            return None

        # the first step is special: start's neighbours are never blocked
        found = dfs()
        if found:
            return found
    return None


def _sample_long_cycles(adj: list[set[int]], max_len: int, limit: int) -> list[list[int]]:
    found: list[list[int]] = []
    nn = len(adj)

    def dfs(path: list[int], onpath: set[int]) -> None:
        if len(found) >= limit:
            return
        last = path[-1]
        for v in sorted(adj[last]):
            if v == path[0] and len(path) >= 6 and path[1] < path[-1]:
                found.append(list(path))
                if len(found) >= limit:
                    return
            elif v > path[0] and v not in onpath and len(path) < max_len:
                path.append(v)
                onpath.add(v)
                dfs(path, onpath)
                path.pop()
                onpath.discard(v)

    for s in range(nn):
        dfs([s], {s})
    return found


def quadratic_gb_certificate(g: BipartiteGraph, samples: int = 5) -> ChordalityCertificate:
    """Check that every cycle of length >= 6 has a chord.

    On success a few long cycles are sampled and a chord is produced for
    each from the pivot of its x-coordinate sequence when that pivot lands
    on an edge (always the case for convex collections).
    """
    adj = _adjacency(g)
    max_len = 2 * min(g.m, g.n)
    cyc = _chordless_cycle(adj, max_len)
    if cyc is not None:
        return ChordalityCertificate(False, witness=tuple(_cycle_to_vertices(cyc, g.m)))
    chords = []
    for cyc in _sample_long_cycles(adj, max_len, samples):
        verts = _cycle_to_vertices(cyc, g.m)
        r = len(verts) // 2
        xs = [verts[2 * k][0] for k in range(r)] + [verts[0][0]]
        ys = [verts[2 * k][1] for k in range(r)]
        s, t = find_chord_pivot(xs)
        chord = (xs[t - 1], ys[s - 1])
        if chord in g.edges:
            chords.append((tuple(verts), chord))
    return ChordalityCertificate(True, chords=tuple(chords))


# -- Hilbert function and h-vector -------------------------------------------


def contains(sg: AffineSemigroup, h: Sequence[int]) -> bool:
    return sg.contains(h)


def hilbert_function(sg: AffineSemigroup, d: int) -> int:
    """Number of distinct semigroup elements of degree ``d``."""
    return int(sg._layer_array(d).shape[0])


def krull_dimension(sg: AffineSemigroup) -> int:
    return matrix_rank(sg.generators, QQ)


def h_vector(sg: AffineSemigroup, dim: int | None = None) -> tuple[int, ...]:
    """Numerator coefficients of the Hilbert series over (1 - t)^dim.

    Degrees are computed until three consecutive coefficients vanish; the
    search gives up (ResourceCapError) past twice the generator count.
    """
    D = krull_dimension(sg) if dim is None else dim
    cap = 2 * len(sg)
    hf: list[int] = []
    h: list[int] = []
    i = 0
    while True:
        if i > cap:
            raise ResourceCapError(f"h-vector did not stabilize by degree {cap}")
        hf.append(hilbert_function(sg, i))
        h.append(sum((-1) ** k * comb(D, k) * hf[i - k] for k in range(min(i, D) + 1)))
        if len(h) >= 3 and h[-3:] == [0, 0, 0]:
            break
        i += 1
    while h and h[-1] == 0:
        h.pop()
    return tuple(h)


def series_coefficients(h: Sequence[int], dim: int, upto: int) -> list[int]:
    """Coefficients of sum(h_i t^i) / (1 - t)^dim up to degree ``upto``."""
    return [
        sum(hi * comb(d - i + dim - 1, dim - 1) for i, hi in enumerate(h) if i <= d)
        for d in range(upto + 1)
    ]


def require_member(sg: AffineSemigroup, h: Sequence[int]) -> tuple[int, ...]:
    h = tuple(h)
    if not sg.contains(h):
        raise NotInSemigroupError(f"{h} is not in the semigroup")
    return h


def is_convex_pattern(c: CellCollection) -> bool:
    """Whether the vertex set is convex along every horizontal line, which is
    what the chord construction needs."""
    return is_polyomino(c) and is_row_convex(c)
