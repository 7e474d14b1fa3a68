"""Exact linear algebra over a :class:`~cophenet.field.Field`.

Sparse vectors are plain ``dict`` objects mapping a coordinate index to a
nonzero coefficient.  Two independent elimination routines live here:

* :class:`Echelon`, an incremental sparse row echelon form keyed on the
  largest nonzero coordinate.  Persistence-style code uses it.
* :func:`rref`, a dense Gauss-Jordan reduction on lists of rows.  It backs
  the from-scratch cycle/boundary snapshots that the tests use as an oracle
  against the sparse path.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .field import QQ, Field


def axpy(y: dict, a, x: dict, field: Field = QQ) -> dict:
    """In place ``y += a * x``, dropping coefficients that cancel."""
    if a == 0:
        return y
    for i, xi in x.items():
        v = field.coerce(y.get(i, 0) + a * xi)
        if v == 0:
            y.pop(i, None)
        else:
            y[i] = v
    return y


def scale(x: dict, a, field: Field = QQ) -> dict:
    if a == 0:
        return {}
    return {i: field.coerce(a * v) for i, v in x.items()}


def clean(x: dict, field: Field = QQ) -> dict:
    """Coerce coefficients into ``field`` and drop zeros."""
    out = {}
    for i, v in x.items():
        v = field.coerce(v)
        if v != 0:
            out[int(i)] = v
    return out


class Echelon:
    """Incremental sparse echelon basis.

    Each stored row has a distinct pivot, its largest coordinate, with
    coefficient one.  :meth:`reduce` clears every pivot coordinate, which is
    the projection onto the pivot-free coordinates along the span, so two
    vectors have equal reductions iff they differ by an element of the span.
    """

    def __init__(self, field: Field = QQ, vectors: Iterable[dict] = ()):
        self.field = field
        self.rows: dict[int, dict] = {}
        for v in vectors:
            self.add(v)

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v: dict) -> dict:
        v = dict(v)
        rows = self.rows
        while True:
            hits = [i for i in v if i in rows]
            if not hits:
                return v
            p = max(hits)
            axpy(v, -v[p], rows[p], self.field)

    def add(self, v: dict) -> bool:
        """Insert ``v``; return ``True`` iff it was independent of the span."""
        r = self.reduce(v)
        if not r:
            return False
        p = max(r)
        self.rows[p] = scale(r, self.field.inv(r[p]), self.field)
        return True

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)


def sparse_rank(vectors: Iterable[dict], field: Field = QQ) -> int:
    return Echelon(field, vectors).rank


def rref(rows: Sequence[Sequence], field: Field = QQ):
    """Reduced row echelon form of a dense matrix.

    Returns ``(R, pivots)`` where ``R`` holds the nonzero rows only and
    ``pivots[i]`` is the pivot column of ``R[i]``.
    """
    M = [[field.coerce(x) for x in row] for row in rows]
    if not M:
        return [], []
    ncols = len(M[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if pr is None:
            continue
        M[r], M[pr] = M[pr], M[r]
        inv = field.inv(M[r][c])
        M[r] = [field.coerce(x * inv) for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [field.coerce(a - f * b) for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows: Sequence[Sequence], field: Field = QQ) -> int:
    return len(rref(rows, field)[1])


def nullspace(rows: Sequence[Sequence], ncols: int, field: Field = QQ) -> list[list]:
    """Basis of ``{x : A x = 0}`` for the matrix with the given rows.

    One basis vector per free column, in increasing column order.
    """
    R, pivots = rref(rows, field)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [field.coerce(0)] * ncols
        x[f] = field.coerce(1)
        for row, p in zip(R, pivots):
            x[p] = field.coerce(-row[f])
        basis.append(x)
    return basis
