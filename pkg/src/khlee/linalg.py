"""Exact sparse linear algebra over the rationals.

Vectors are ``dict[int, Fraction]`` with no stored zeros.  Elimination picks
pivots Markowitz-style (sparsest column, then sparsest row in it) to keep
fill-in down on the very sparse differentials of cube complexes.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Rational = Fraction
Vector = dict  # dict[int, Fraction]


class DimensionError(ValueError):
    pass


class SparseMatrix:
    """An ``nrows x ncols`` matrix stored column-wise, zeros omitted."""

    __slots__ = ("nrows", "ncols", "cols")

    def __init__(self, nrows: int, ncols: int, entries: Iterable[tuple[int, int, object]] = ()):
        self.nrows = nrows
        self.ncols = ncols
        self.cols: list[dict[int, Fraction]] = [dict() for _ in range(ncols)]
        for r, c, v in entries:
            if not (0 <= r < nrows and 0 <= c < ncols):
                raise DimensionError(f"entry ({r}, {c}) outside {nrows}x{ncols}")
            v = Fraction(v)
            col = self.cols[c]
            if r in col:
                raise ValueError(f"duplicate entry ({r}, {c})")
            if v:
                col[r] = v

    @classmethod
    def from_columns(cls, nrows: int, cols: Sequence[Mapping[int, object]]) -> "SparseMatrix":
        m = cls(nrows, len(cols))
        for c, col in enumerate(cols):
            for r, v in col.items():
                if not 0 <= r < nrows:
                    raise DimensionError(f"row {r} outside {nrows}")
                if v:
                    m.cols[c][r] = Fraction(v)
        return m

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[object]]) -> "SparseMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        return cls(nrows, ncols, ((r, c, v) for r, row in enumerate(rows) for c, v in enumerate(row) if v))

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "SparseMatrix":
        return cls(nrows, ncols)

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for c, col in enumerate(self.cols):
            for r, v in col.items():
                out[r][c] = v
        return out

    def entries(self):
        for c, col in enumerate(self.cols):
            for r, v in col.items():
                yield r, c, v

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    def rows(self) -> list[dict[int, Fraction]]:
        out: list[dict[int, Fraction]] = [dict() for _ in range(self.nrows)]
        for c, col in enumerate(self.cols):
            for r, v in col.items():
                out[r][c] = v
        return out

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix.from_columns(self.ncols, self.rows())

    def apply(self, v: Mapping[int, object]) -> Vector:
        out: dict[int, Fraction] = {}
        for c, x in v.items():
            if not x:
                continue
            for r, a in self.cols[c].items():
                out[r] = out.get(r, 0) + a * x
        return {r: x for r, x in out.items() if x}

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise DimensionError("shape mismatch in product")
        return SparseMatrix.from_columns(self.nrows, [self.apply(col) for col in other.cols])

    def is_zero(self) -> bool:
        return not any(self.cols)

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (self.nrows, self.ncols, self.cols) == (other.nrows, other.ncols, other.cols)

    def __repr__(self):
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz})"


def _echelon(rows: Iterable[Mapping[int, object]]) -> list[tuple[int, dict[int, Fraction]]]:
    """Forward elimination.  Returns ``(pivot column, pivot row)`` pairs; a
    pivot row never contains the pivot columns of earlier pairs."""
    active: dict[int, dict[int, Fraction]] = {}
    col_rows: dict[int, set[int]] = {}
    for i, row in enumerate(rows):
        r = {c: Fraction(v) for c, v in row.items() if v}
        if r:
            active[i] = r
            for c in r:
                col_rows.setdefault(c, set()).add(i)
    heap = [(len(s), c) for c, s in col_rows.items()]
    heapq.heapify(heap)
    pivots = []
    while heap:
        n, c = heapq.heappop(heap)
        s = col_rows.get(c)
        if not s:
            continue
        if len(s) != n:
            heapq.heappush(heap, (len(s), c))
            continue
        p = min(s, key=lambda i: (len(active[i]), i))
        prow = active.pop(p)
        for cc in prow:
            col_rows[cc].discard(p)
        pv = prow[c]
        for i in list(s):
            row = active[i]
            f = row[c] / pv
            for cc, v in prow.items():
                nv = row.get(cc, 0) - f * v
                if nv:
                    if cc not in row:
                        col_rows[cc].add(i)
                        heapq.heappush(heap, (len(col_rows[cc]), cc))
                    row[cc] = nv
                else:
                    del row[cc]
                    col_rows[cc].discard(i)
            if not row:
                del active[i]
        del col_rows[c]
        for cc in prow:
            if cc in col_rows:
                heapq.heappush(heap, (len(col_rows[cc]), cc))
        pivots.append((c, prow))
    return pivots


def _as_rows(M) -> list[dict]:
    return M.rows() if isinstance(M, SparseMatrix) else [dict(r) for r in M]


def rank(M: SparseMatrix) -> int:
    """Rank over Q."""
    if M.nrows <= M.ncols:
        return len(_echelon(M.rows()))
    return len(_echelon(c for c in M.cols))


def kernel_basis(M: SparseMatrix) -> list[Vector]:
    """Exact basis of the right null space, one vector per free column."""
    piv = _echelon(M.rows())
    pcols = {c for c, _ in piv}
    basis = []
    for f in range(M.ncols):
        if f in pcols:
            continue
        x: dict[int, Fraction] = {f: Fraction(1)}
        for c, row in reversed(piv):
            s = sum((v * x[cc] for cc, v in row.items() if cc != c and cc in x), Fraction(0))
            if s:
                x[c] = -s / row[c]
        basis.append(x)
    return basis


def image_basis(M: SparseMatrix) -> list[Vector]:
    """Exact basis of the column space."""
    return [dict(row) for _, row in _echelon(c for c in M.cols)]


def _vectors(gens, ambient_dim: int) -> list[dict]:
    out = []
    for g in gens:
        if isinstance(g, Mapping):
            if any(not 0 <= k < ambient_dim for k in g):
                raise DimensionError(f"vector index outside ambient dimension {ambient_dim}")
            out.append({k: v for k, v in g.items() if v})
        else:
            g = list(g)
            if len(g) != ambient_dim:
                raise DimensionError(f"vector of length {len(g)} in ambient dimension {ambient_dim}")
            out.append({i: v for i, v in enumerate(g) if v})
    return out


def span_rank(gens: Iterable[Mapping[int, object]]) -> int:
    return len(_echelon(gens))


def subquotient_dim(U_gens, W_gens, ambient_dim: int) -> int:
    """dim((U + W) / W)."""
    U = _vectors(U_gens, ambient_dim)
    W = _vectors(W_gens, ambient_dim)
    return span_rank(U + W) - span_rank(W)


class Reducer:
    """Incremental reduction against a fixed spanning set.

    Used for repeated membership tests ``v in span(gens)`` with a shared
    echelon form.
    """

    def __init__(self, gens: Iterable[Mapping[int, object]]):
        # reduction runs through pivots in creation order: a pivot row never
        # contains the pivot columns of earlier rows
        self._piv = _echelon(gens)

    @property
    def rank(self) -> int:
        return len(self._piv)

    def reduce(self, v: Mapping[int, object]) -> dict[int, Fraction]:
        r = {k: Fraction(x) for k, x in v.items() if x}
        for c, row in self._piv:
            a = r.get(c)
            if a:
                f = a / row[c]
                for cc, val in row.items():
                    nv = r.get(cc, 0) - f * val
                    if nv:
                        r[cc] = nv
                    else:
                        r.pop(cc, None)
        return r

    def contains(self, v: Mapping[int, object]) -> bool:
        return not self.reduce(v)

    def add(self, v: Mapping[int, object]) -> bool:
        """Extend the span by ``v``; True if the rank went up."""
        r = self.reduce(v)
        if not r:
            return False
        self._piv.append((min(r), r))
        return True


def rank_profile(vectors: Iterable[Mapping[int, object]]) -> list[int]:
    """Ranks of the spans of the first 1, 2, ... vectors."""
    red = Reducer(())
    out, r = [], 0
    for v in vectors:
        r += red.add(v)
        out.append(r)
    return out
