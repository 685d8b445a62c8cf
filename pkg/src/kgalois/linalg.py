"""
Exact sparse linear algebra over a field whose elements support ``+ - * /``
and truthiness (``bool(x)`` is ``x != 0``).

Rows are plain lists or ``{column: value}`` dicts.  Elimination is sparse
Gauss-Jordan with unit pivots; pivot rows are kept in reduced form so that the
kernel can be read off directly.
"""

from __future__ import annotations

from typing import Any, Iterable, Sequence

Row = dict[int, Any]


def _sparse(row) -> Row:
    if isinstance(row, dict):
        return {c: v for c, v in row.items() if v}
    return {c: v for c, v in enumerate(row) if v}


def _axpy(row: Row, a, other: Row) -> None:
    """row -= a * other, in place."""
    for c, v in other.items():
        w = row.get(c)
        if w is None:
            row[c] = -(a * v)
        else:
            w = w - a * v
            if w:
                row[c] = w
            else:
                del row[c]


class Echelon:
    """Incremental row echelon form; feed rows with :meth:`add`."""

    def __init__(self, reduced: bool = True):
        self.reduced = reduced
        self.pivots: dict[int, Row] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: Row) -> Row:
        row = dict(row)
        if self.reduced:
            for c in [c for c in row if c in self.pivots]:
                a = row.get(c)
                if a:
                    _axpy(row, a, self.pivots[c])
            return row
        while True:
            cs = [c for c in row if c in self.pivots]
            if not cs:
                return row
            c = min(cs)
            _axpy(row, row[c], self.pivots[c])

    def add(self, row) -> bool:
        """Insert a row; returns True if it increased the rank."""
        row = self.reduce(_sparse(row))
        if not row:
            return False
        c = min(row)
        inv = row[c].inverse()
        row = {j: v * inv for j, v in row.items()}
        if self.reduced:
            for prow in self.pivots.values():
                a = prow.get(c)
                if a:
                    _axpy(prow, a, row)
        self.pivots[c] = row
        return True


def rank_kernel(field, M: Sequence, ncols: int | None = None) -> tuple[int, list[list]]:
    """Exact rank and a basis of the right kernel ``{v : M v = 0}``.

    Kernel vectors are dense lists; one per free column, in increasing order
    of the free column, with a 1 in that column.
    """
    if ncols is None:
        ncols = max((len(r) if not isinstance(r, dict) else (max(r, default=-1) + 1) for r in M), default=0)
    ech = Echelon(reduced=True)
    for r in sorted((_sparse(r) for r in M), key=len):
        if r:
            ech.add(r)
    zero, one = field.zero, field.one
    kernel = []
    for f in range(ncols):
        if f in ech.pivots:
            continue
        v = [zero] * ncols
        v[f] = one
        for c, prow in ech.pivots.items():
            a = prow.get(f)
            if a:
                v[c] = -a
        kernel.append(v)
    return ech.rank, kernel


def rank(M: Iterable) -> int:
    ech = Echelon(reduced=False)
    for r in sorted((_sparse(r) for r in M), key=len):
        if r:
            ech.add(r)
    return ech.rank


def row_space_basis(vectors: Iterable) -> list[Row]:
    ech = Echelon(reduced=True)
    for v in vectors:
        ech.add(v)
    return [ech.pivots[c] for c in sorted(ech.pivots)]


def solve(field, M: Sequence, b: Sequence, ncols: int) -> list | None:
    """One solution x of M x = b (dense list), or None when inconsistent."""
    aug = []
    for r, bi in zip(M, b):
        row = _sparse(r)
        if bi:
            row[ncols] = bi
        aug.append(row)
    ech = Echelon(reduced=True)
    for r in aug:
        if r:
            ech.add(r)
    if ncols in ech.pivots:
        return None
    x = [field.zero] * ncols
    for c, prow in ech.pivots.items():
        a = prow.get(ncols)
        if a:
            x[c] = a
    return x


def inverse(field, M: Sequence[Sequence]) -> list[list]:
    """Inverse of a square matrix; raises ValueError when singular."""
    n = len(M)
    aug = []
    for i, r in enumerate(M):
        row = _sparse(r)
        row[n + i] = field.one
        aug.append(row)
    ech = Echelon(reduced=True)
    for r in aug:
        ech.add(r)
    if any(c not in ech.pivots for c in range(n)):
        raise ValueError("matrix is singular")
    zero = field.zero
    return [[ech.pivots[i].get(n + j, zero) for j in range(n)] for i in range(n)]


def matvec(M: Sequence[Sequence], v: Sequence, zero):
    out = []
    for r in M:
        s = zero
        for a, b in zip(r, v):
            if a and b:
                s = s + a * b
        out.append(s)
    return out
