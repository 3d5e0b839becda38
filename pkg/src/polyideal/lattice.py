"""Finite posets, their distributive lattices of order ideals, descent
h-vectors, and the join-meet (Hibi) side of the classification."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import permutations, product
from typing import Iterable, Sequence

from .errors import NotALatticeError, NotSimpleError, ParseError, ResourceCapError
from .toric import HIBI_MONOTONE, AffineSemigroup

DEFAULT_POSET_CAP = 10


class Poset:
    """A partial order on 0..n-1 given by relations a < b.

    The input relations may be redundant; ``covers`` is the transitive
    reduction and ``less`` the transitive closure.  JSON uses 1-based labels.
    """

    def __init__(self, n: int, relations: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise ValueError("negative poset size")
        self.n = n
        below: list[set[int]] = [set() for _ in range(n)]
        for a, b in relations:
            if not (0 <= a < n and 0 <= b < n) or a == b:
                raise ValueError(f"bad relation {a} < {b}")
            below[b].add(a)
        # transitive closure in topological order; detects cycles
        order = _toposort(n, below)
        for x in order:
            for y in list(below[x]):
                below[x] |= below[y]
        if any(x in below[x] for x in range(n)):
            raise ValueError("relations contain a cycle")
        self._below = tuple(frozenset(s) for s in below)

    @classmethod
    def from_json(cls, obj: dict | str) -> Poset:
        if isinstance(obj, str):
            try:
                obj = json.loads(obj)
            except json.JSONDecodeError as exc:
                raise ParseError(f"invalid JSON: {exc}") from exc
        try:
            n = int(obj["n"])
            rels = [(int(a) - 1, int(b) - 1) for a, b in obj.get("covers", [])]
            return cls(n, rels)
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad poset JSON: {exc}") from exc

    def to_json(self) -> dict:
        return {"n": self.n, "covers": [[a + 1, b + 1] for a, b in self.covers]}

    @classmethod
    def chain(cls, n: int) -> Poset:
        return cls(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def antichain(cls, n: int) -> Poset:
        return cls(n)

    def disjoint_union(self, other: Poset) -> Poset:
        k = self.n
        return Poset(k + other.n, list(self.covers) + [(a + k, b + k) for a, b in other.covers])

    def leq(self, a: int, b: int) -> bool:
        return a == b or a in self._below[b]

    def lt(self, a: int, b: int) -> bool:
        return a in self._below[b]

    def comparable(self, a: int, b: int) -> bool:
        return self.leq(a, b) or self.leq(b, a)

    def down(self, x: int) -> frozenset[int]:
        return self._below[x]

    @cached_property
    def less(self) -> frozenset[tuple[int, int]]:
        return frozenset((a, b) for b in range(self.n) for a in self._below[b])

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        out = []
        for b in range(self.n):
            for a in self._below[b]:
                if not any(a in self._below[c] for c in self._below[b]):
                    out.append((a, b))
        return tuple(sorted(out))

    def minimal(self) -> list[int]:
        return [x for x in range(self.n) if not self._below[x]]

    def maximal(self) -> list[int]:
        return [x for x in range(self.n) if not any(x in self._below[y] for y in range(self.n))]

    def natural_order(self) -> list[int]:
        """Topological order, ties broken by the smaller element."""
        return _toposort(self.n, [set(s) for s in self._below])

    def __repr__(self) -> str:
        return f"Poset(n={self.n}, covers={[(a + 1, b + 1) for a, b in self.covers]})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Poset) and self.n == other.n and self._below == other._below

    def __hash__(self) -> int:
        return hash((self.n, self._below))


def _toposort(n: int, below: Sequence[set[int]]) -> list[int]:
    import heapq

    indeg = [len(below[x]) for x in range(n)]
    above: list[list[int]] = [[] for _ in range(n)]
    for x in range(n):
        for y in below[x]:
            above[y].append(x)
    heap = [x for x in range(n) if indeg[x] == 0]
    heapq.heapify(heap)
    out = []
    while heap:
        x = heapq.heappop(heap)
        out.append(x)
        for y in above[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                heapq.heappush(heap, y)
    if len(out) != n:
        raise ValueError("relations contain a cycle")
    return out


# -- isomorphism -------------------------------------------------------------


def _signature(p: Poset, x: int) -> tuple:
    up = sum(1 for y in range(p.n) if p.lt(x, y))
    ncov_down = sum(1 for a, b in p.covers if b == x)
    ncov_up = sum(1 for a, b in p.covers if a == x)
    return (len(p.down(x)), up, ncov_down, ncov_up)


def poset_canonical_form(p: Poset) -> tuple[int, tuple[tuple[int, int], ...]]:
    """Least relation list over relabelings that keep a vertex invariant
    sorted; equal for isomorphic posets."""
    sigs = {x: _signature(p, x) for x in range(p.n)}
    groups: dict[tuple, list[int]] = {}
    for x in range(p.n):
        groups.setdefault(sigs[x], []).append(x)
    keys = sorted(groups)
    best = None
    for choice in product(*(permutations(groups[k]) for k in keys)):
        order = [x for block in choice for x in block]
        pos = {x: i for i, x in enumerate(order)}
        rel = tuple(sorted((pos[a], pos[b]) for a, b in p.less))
        if best is None or rel < best:
            best = rel
    return p.n, best or ()


def is_isomorphic_poset(a: Poset, b: Poset) -> bool:
    return poset_canonical_form(a) == poset_canonical_form(b)


# -- distributive lattices ---------------------------------------------------


class DistLattice:
    """The lattice J(P) of order ideals of a poset, ordered by inclusion."""

    def __init__(self, poset: Poset, cap: int = DEFAULT_POSET_CAP):
        if poset.n > cap:
            raise ResourceCapError(f"poset has {poset.n} elements (cap {cap})")
        self.poset = poset
        ideals: list[frozenset[int]] = []
        order = poset.natural_order()

        # decide elements in topological order, so everything below x has
        # already been decided when x is
        def rec(k: int, cur: frozenset[int]) -> None:
            if k == poset.n:
                ideals.append(cur)
                return
            rec(k + 1, cur)
            if poset.down(order[k]) <= cur:
                rec(k + 1, cur | {order[k]})

        rec(0, frozenset())
        ideals.sort(key=lambda I: (len(I), sorted(I)))
        self.elements: tuple[frozenset[int], ...] = tuple(ideals)
        self.index = {I: k for k, I in enumerate(ideals)}

    def __len__(self) -> int:
        return len(self.elements)

    def leq(self, a: int, b: int) -> bool:
        return self.elements[a] <= self.elements[b]

    def join(self, a: int, b: int) -> int:
        return self.index[self.elements[a] | self.elements[b]]

    def meet(self, a: int, b: int) -> int:
        return self.index[self.elements[a] & self.elements[b]]

    def as_poset(self) -> Poset:
        rels = [
            (a, b)
            for a in range(len(self))
            for b in range(len(self))
            if a != b and self.elements[a] < self.elements[b]
        ]
        return Poset(len(self), rels)

    def to_json(self) -> dict:
        p = self.as_poset()
        return {
            "n": p.n,
            "covers": [[a + 1, b + 1] for a, b in p.covers],
            "ideals": [sorted(x + 1 for x in I) for I in self.elements],
        }


def order_ideal_lattice(p: Poset, cap: int = DEFAULT_POSET_CAP) -> DistLattice:
    return DistLattice(p, cap)


def _lattice_poset(l: DistLattice | Poset) -> Poset:
    if isinstance(l, DistLattice):
        return l.as_poset()
    if not is_lattice(l):
        raise NotALatticeError("the poset is not a lattice")
    return l


def is_lattice(p: Poset) -> bool:
    """Every pair has a least upper bound and a greatest lower bound."""
    if p.n == 0:
        return False
    for a in range(p.n):
        for b in range(a + 1, p.n):
            ups = [c for c in range(p.n) if p.leq(a, c) and p.leq(b, c)]
            if not any(all(p.leq(u, v) for v in ups) for u in ups):
                return False
            downs = [c for c in range(p.n) if p.leq(c, a) and p.leq(c, b)]
            if not any(all(p.leq(v, u) for v in downs) for u in downs):
                return False
    return True


def join_irreducibles(l: DistLattice | Poset) -> Poset:
    """Subposet of elements with exactly one lower cover."""
    lp = _lattice_poset(l)
    lower = [0] * lp.n
    for a, b in lp.covers:
        lower[b] += 1
    ji = [x for x in range(lp.n) if lower[x] == 1]
    pos = {x: i for i, x in enumerate(ji)}
    return Poset(len(ji), [(pos[a], pos[b]) for a in ji for b in ji if lp.lt(a, b)])


def is_simple(l: DistLattice | Poset) -> bool:
    """No join-irreducible is comparable to every other join-irreducible."""
    p = join_irreducibles(l)
    return not any(all(p.comparable(x, y) for y in range(p.n)) for x in range(p.n))


def is_simple_lattice_form(l: DistLattice | Poset) -> bool:
    """No b < a such that every element lies below b or above a."""
    lp = _lattice_poset(l)
    for b in range(lp.n):
        for a in range(lp.n):
            if lp.lt(b, a) and all(lp.leq(g, b) or lp.leq(a, g) for g in range(lp.n)):
                return False
    return True


def is_pure(p: Poset) -> bool:
    """All maximal chains have the same number of elements."""
    if p.n == 0:
        return True
    up: list[list[int]] = [[] for _ in range(p.n)]
    for a, b in p.covers:
        up[a].append(b)

    @lru_cache(maxsize=None)
    def lengths(x: int) -> frozenset[int]:
        if not up[x]:
            return frozenset({1})
        return frozenset(k + 1 for y in up[x] for k in lengths(y))

    allk = set()
    for x in p.minimal():
        allk |= lengths(x)
    return len(allk) == 1


def linear_extensions(p: Poset, cap: int = DEFAULT_POSET_CAP) -> list[tuple[int, ...]]:
    if p.n > cap:
        raise ResourceCapError(f"poset has {p.n} elements (cap {cap})")
    out: list[tuple[int, ...]] = []

    def rec(placed: frozenset[int], seq: tuple[int, ...]) -> None:
        if len(seq) == p.n:
            out.append(seq)
            return
        for x in range(p.n):
            if x not in placed and p.down(x) <= placed:
                rec(placed | {x}, seq + (x,))

    rec(frozenset(), ())
    return out


def h_vector_of_poset(p: Poset, cap: int = DEFAULT_POSET_CAP, labeling: Sequence[int] | None = None) -> tuple[int, ...]:
    """Tally linear extensions by number of descents under a natural labeling.

    ``labeling`` lists the elements in label order (default: the natural
    topological order).  The count uses a memoized sweep over placed sets.
    """
    if p.n > cap:
        raise ResourceCapError(f"poset has {p.n} elements (cap {cap})")
    order = list(labeling) if labeling is not None else p.natural_order()
    label = {x: i for i, x in enumerate(order)}
    if any(label[a] > label[b] for a, b in p.less):
        raise ValueError("labeling is not natural")

    @lru_cache(maxsize=None)
    def tally(placed: frozenset[int], last: int) -> tuple[int, ...]:
        if len(placed) == p.n:
            return (1,)
        acc: list[int] = []
        for x in range(p.n):
            if x not in placed and p.down(x) <= placed:
                shift = 1 if last >= 0 and label[last] > label[x] else 0
                sub = tally(placed | {x}, x)
                need = len(sub) + shift
                if len(acc) < need:
                    acc.extend([0] * (need - len(acc)))
                for i, v in enumerate(sub):
                    acc[i + shift] += v
        return tuple(acc)

    h = list(tally(frozenset(), -1))
    while len(h) > 1 and h[-1] == 0:
        h.pop()
    return tuple(h)


@dataclass(frozen=True)
class JoinMeetBinomial:
    """x_a x_b - x_(a meet b) x_(a join b) for incomparable lattice elements."""

    a: int
    b: int
    meet: int
    join: int

    def __str__(self) -> str:
        return f"x{self.a}*x{self.b} - x{self.meet}*x{self.join}"


def join_meet_generators(l: DistLattice) -> list[JoinMeetBinomial]:
    out = []
    for a in range(len(l)):
        for b in range(a + 1, len(l)):
            if not l.leq(a, b) and not l.leq(b, a):
                out.append(JoinMeetBinomial(a, b, l.meet(a, b), l.join(a, b)))
    return out


def hibi_semigroup(l: DistLattice) -> AffineSemigroup:
    """Generators (indicator of J, 1) for the order ideals J of the poset."""
    d = l.poset.n
    gens = [[1 if x in J else 0 for x in range(d)] + [1] for J in l.elements]
    return AffineSemigroup(
        gens,
        HIBI_MONOTONE,
        grading=[0] * d + [1],
        relations=l.poset.less,
        labels=[tuple(sorted(J)) for J in l.elements],
    )


# -- the two classifications -------------------------------------------------


def plane_poset(k: int) -> Poset:
    """A chain of k elements together with one element incomparable to it."""
    return Poset.chain(k).disjoint_union(Poset.antichain(1))


def _two_chains(cross: Sequence[tuple[int, int]]) -> Poset:
    # chains 0<1 and 2<3 plus extra relations
    return Poset(4, [(0, 1), (2, 3), *cross])


FLATTICE_POSETS = (
    Poset.antichain(3),
    _two_chains([(0, 3), (2, 1)]),
    _two_chains([(2, 1)]),
    _two_chains([]),
)

_FLATTICE_FORMS = frozenset(poset_canonical_form(p) for p in FLATTICE_POSETS)


def _is_chain_plus_point(p: Poset) -> bool:
    if p.n < 2:
        return False
    return any(
        all(not p.comparable(x, y) for y in range(p.n) if y != x)
        and all(p.comparable(a, b) for a in range(p.n) for b in range(p.n) if x not in (a, b))
        for x in range(p.n)
    )


@dataclass(frozen=True)
class LatticeClass:
    linear_resolution: bool
    extremal_gorenstein: bool

    def to_json(self) -> dict:
        return {"linear_resolution": self.linear_resolution, "extremal_gorenstein": self.extremal_gorenstein}


def classify_lattice(l: DistLattice) -> LatticeClass:
    if not is_simple(l):
        raise NotSimpleError("the classification applies to simple lattices")
    p = join_irreducibles(l)
    return LatticeClass(
        linear_resolution=_is_chain_plus_point(p),
        extremal_gorenstein=poset_canonical_form(p) in _FLATTICE_FORMS,
    )
