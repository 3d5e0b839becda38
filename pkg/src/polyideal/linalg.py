"""Exact sparse linear algebra over the rationals and prime fields.

Vectors are sparse ``dict[int, int]`` maps from coordinate to nonzero
entry.  Rational arithmetic is fraction-free: rows are kept as primitive
integer vectors, so ranks and span membership are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

DEFAULT_PRIME = 32003
# used internally to certify vanishing rational homology cheaply
LARGE_PRIME = 2_147_483_647

SparseVec = dict[int, int]


@dataclass(frozen=True)
class Field:
    """The rationals (``p is None``) or the prime field GF(p)."""

    p: int | None = None

    @classmethod
    def parse(cls, spec: str | int | None | Field) -> Field:
        if isinstance(spec, Field):
            return spec
        if spec is None or spec in ("q", "Q", "QQ", "rationals"):
            return cls(None)
        if isinstance(spec, int):
            return cls(_check_prime(spec))
        s = str(spec).lower()
        if s.startswith("gf:"):
            s = s[3:]
        elif s.startswith("gf"):
            s = s[2:]
        try:
            return cls(_check_prime(int(s)))
        except ValueError as exc:
            raise ValueError(f"unknown field {spec!r}; use 'q' or 'gf:P'") from exc

    @property
    def is_rational(self) -> bool:
        return self.p is None

    def __str__(self) -> str:
        return "QQ" if self.p is None else f"GF({self.p})"


QQ = Field(None)
GF32003 = Field(DEFAULT_PRIME)


def _check_prime(p: int) -> int:
    if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise ValueError(f"{p} is not prime")
    return p


def _primitive(v: SparseVec) -> SparseVec:
    g = 0
    for x in v.values():
        g = gcd(g, x)
        if g == 1:
            break
    lead = v[min(v)]
    if lead < 0:
        g = -g
    if g != 1:
        v = {k: x // g for k, x in v.items()}
    return v


class Echelon:
    """Incrementally maintained row-echelon basis of a subspace.

    ``add`` reduces a vector against the current pivots and keeps it when it
    is independent.  Pivots are indexed by leading coordinate.
    """

    def __init__(self, field: Field = QQ):
        self.field = field
        self.pivots: dict[int, SparseVec] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: SparseVec) -> SparseVec:
        p = self.field.p
        if p is None:
            row = {k: v for k, v in vec.items() if v}
            while row:
                c = min(row)
                prow = self.pivots.get(c)
                if prow is None:
                    return row
                a, b = prow[c], row[c]
                g = gcd(a, b)
                a, b = a // g, b // g
                new = {k: a * v for k, v in row.items()}
                for k, v in prow.items():
                    x = new.get(k, 0) - b * v
                    if x:
                        new[k] = x
                    else:
                        new.pop(k, None)
                row = _primitive(new) if new else new
            return row
        row = {k: v % p for k, v in vec.items() if v % p}
        while row:
            c = min(row)
            prow = self.pivots.get(c)
            if prow is None:
                return row
            b = row[c]
            for k, v in prow.items():
                x = (row.get(k, 0) - b * v) % p
                if x:
                    row[k] = x
                else:
                    row.pop(k, None)
        return row

    def add(self, vec: SparseVec) -> bool:
        row = self.reduce(vec)
        if not row:
            return False
        c = min(row)
        p = self.field.p
        if p is None:
            row = _primitive(row)
        else:
            inv = pow(row[c], p - 2, p)
            row = {k: v * inv % p for k, v in row.items()}
        self.pivots[c] = row
        return True

    def contains(self, vec: SparseVec) -> bool:
        return not self.reduce(vec)


def rank(vectors: Iterable[SparseVec], field: Field = QQ) -> int:
    ech = Echelon(field)
    for v in vectors:
        ech.add(v)
    return ech.rank


def dense_to_sparse(rows: Sequence[Sequence[int]]) -> list[SparseVec]:
    return [{j: x for j, x in enumerate(r) if x} for r in rows]


def matrix_rank(rows: Sequence[Sequence[int]], field: Field = QQ) -> int:
    """Rank of a dense integer matrix given as a list of rows."""
    return rank(dense_to_sparse(rows), field)


def nullspace(columns: Sequence[SparseVec], field: Field = QQ) -> list[SparseVec]:
    """Basis of ``{c : sum_j c_j * columns[j] = 0}``.

    Returned vectors are sparse over column indices with integer entries
    (primitive integer vectors over QQ, reduced residues over GF(p)).
    """
    p = field.p
    ncols = len(columns)
    if p is None:
        one, zero = Fraction(1), Fraction(0)
        norm = Fraction
    else:
        one, zero = 1, 0

        def norm(x):
            return x % p

    # rows of the matrix, as dicts over column index
    rows: dict[int, dict[int, object]] = {}
    for j, col in enumerate(columns):
        for i, x in col.items():
            if x:
                rows.setdefault(i, {})[j] = norm(x)
    rows_list = [r for r in rows.values() if r]
    pivot_of_col: dict[int, dict[int, object]] = {}
    for row in rows_list:
        row = {k: v for k, v in row.items() if v}
        for c, prow in pivot_of_col.items():
            b = row.get(c)
            if b:
                for k, v in prow.items():
                    x = row.get(k, zero) - b * v
                    if p is not None:
                        x %= p
                    if x:
                        row[k] = x
                    else:
                        row.pop(k, None)
        if not row:
            continue
        c = min(row)
        inv = one / row[c] if p is None else pow(row[c], p - 2, p)
        row = {k: (v * inv if p is None else v * inv % p) for k, v in row.items()}
        # keep fully reduced form
        for pc, prow in pivot_of_col.items():
            b = prow.get(c)
            if b:
                for k, v in row.items():
                    x = prow.get(k, zero) - b * v
                    if p is not None:
                        x %= p
                    if x:
                        prow[k] = x
                    else:
                        prow.pop(k, None)
        pivot_of_col[c] = row
    free = [j for j in range(ncols) if j not in pivot_of_col]
    basis = []
    for f in free:
        vec: dict[int, object] = {f: one}
        for c, prow in pivot_of_col.items():
            b = prow.get(f)
            if b:
                vec[c] = -b if p is None else (-b) % p
        basis.append(_integralize(vec) if p is None else {k: v for k, v in vec.items() if v})
    return basis


def _integralize(vec: dict[int, Fraction]) -> SparseVec:
    den = 1
    for x in vec.values():
        den = den * x.denominator // gcd(den, x.denominator)
    out = {k: int(x * den) for k, x in vec.items() if x}
    return _primitive(out)
