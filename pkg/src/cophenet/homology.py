"""Simplicial homology and persistence over an exact field.

Chains are sparse vectors indexed by the canonical simplex order of a
:class:`~cophenet.filtration.FilteredComplex`.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg
from .field import QQ, Field
from .filtration import FilteredComplex


class HomologyError(ValueError):
    pass


class NotACycleError(HomologyError):
    pass


@dataclass(frozen=True)
class ChainVector:
    """A ``degree``-chain: canonical simplex index -> nonzero coefficient."""

    degree: int
    coeffs: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if any(v == 0 for v in self.coeffs.values()):
            object.__setattr__(self, "coeffs", {i: v for i, v in self.coeffs.items() if v != 0})

    @classmethod
    def from_simplices(cls, K: FilteredComplex, terms: dict, field: Field = QQ) -> "ChainVector":
        """Build a chain from ``{vertices: coefficient}``."""
        coeffs: dict[int, object] = {}
        degree = None
        for s, c in terms.items():
            i = K.index(s)
            d = len(K.simplices[i]) - 1
            if degree is not None and d != degree:
                raise HomologyError("mixed degrees in chain")
            degree = d
            linalg.axpy(coeffs, field.coerce(c), {i: 1}, field)
        return cls(0 if degree is None else degree, coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def support(self) -> list[int]:
        return sorted(self.coeffs)

    def add(self, other: "ChainVector", a=1, field: Field = QQ) -> "ChainVector":
        """``self + a * other``."""
        if other.degree != self.degree and self.coeffs and other.coeffs:
            raise HomologyError("cannot add chains of different degree")
        return ChainVector(self.degree, linalg.axpy(dict(self.coeffs), field.coerce(a), other.coeffs, field))

    def scaled(self, a, field: Field = QQ) -> "ChainVector":
        return ChainVector(self.degree, linalg.scale(self.coeffs, field.coerce(a), field))

    def terms(self, K: FilteredComplex, field: Field = QQ) -> list[tuple[tuple[int, ...], Fraction]]:
        return [(tuple(K.simplices[i]), field.to_fraction(self.coeffs[i])) for i in self.support]


def boundary_column(K: FilteredComplex, i: int, field: Field = QQ) -> dict:
    """Signed boundary of simplex ``i`` as a sparse vector."""
    col = {}
    for j, f in enumerate(K.facet_indices(i)):
        col[f] = field.coerce(-1 if j % 2 else 1)
    return col


def _check_chain(chain: ChainVector, K: FilteredComplex):
    n = len(K)
    for i in chain.coeffs:
        if not 0 <= i < n:
            raise HomologyError(f"chain references simplex index {i} absent from the complex")
        if len(K.simplices[i]) != chain.degree + 1:
            raise HomologyError(
                f"simplex {list(K.simplices[i])} has dimension {len(K.simplices[i]) - 1}, chain degree is {chain.degree}")


def boundary_apply(chain: ChainVector, K: FilteredComplex, field: Field = QQ) -> ChainVector:
    """Alternating face sum ``d(chain)``; degree-0 chains map to zero."""
    _check_chain(chain, K)
    if chain.degree == 0:
        return ChainVector(-1, {})
    out: dict = {}
    for i, c in chain.coeffs.items():
        linalg.axpy(out, c, boundary_column(K, i, field), field)
    return ChainVector(chain.degree - 1, out)


# -- persistence --------------------------------------------------------------

@dataclass(frozen=True)
class PersistencePair:
    id: str
    dim: int
    birth: float
    death: float
    representative: ChainVector
    birth_index: int
    death_index: int | None = None

    @property
    def persistence(self) -> float:
        return self.death - self.birth

    def alive(self, eps: float) -> bool:
        return self.birth <= eps < self.death


class Barcode:
    """Multiset of persistence pairs, sorted by dimension then birth simplex."""

    def __init__(self, pairs: Iterable[PersistencePair] = (), field: Field = QQ):
        self.pairs: tuple[PersistencePair, ...] = tuple(sorted(pairs, key=lambda p: (p.dim, p.birth_index)))
        self.field = field

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self):
        return len(self.pairs)

    def __getitem__(self, key):
        if isinstance(key, str):
            for p in self.pairs:
                if p.id == key:
                    return p
            raise KeyError(key)
        return self.pairs[key]

    def __repr__(self):
        return f"Barcode({[(p.dim, p.birth, p.death) for p in self.pairs]})"

    def in_dim(self, k: int) -> list[PersistencePair]:
        return [p for p in self.pairs if p.dim == k]

    def intervals(self, k: int | None = None) -> list[tuple[float, float]]:
        return [(p.birth, p.death) for p in self.pairs if k is None or p.dim == k]

    def betti(self, eps: float, k: int) -> int:
        return sum(1 for p in self.pairs if p.dim == k and p.alive(eps))

    def to_csv(self) -> str:
        lines = ["dim,birth,death"]
        for p in self.pairs:
            lines.append(f"{p.dim},{_num(p.birth)},{_num(p.death)}")
        return "\n".join(lines) + "\n"

    def to_json(self, K: FilteredComplex | None = None, indent: int | None = 2) -> str:
        rows = []
        for p in self.pairs:
            row = {"id": p.id, "dim": p.dim, "birth": p.birth,
                   "death": "inf" if math.isinf(p.death) else p.death}
            if K is not None:
                row["representative"] = [[list(s), c.numerator, c.denominator]
                                         for s, c in p.representative.terms(K, self.field)]
            rows.append(row)
        return json.dumps({"field": self.field.name, "pairs": rows}, indent=indent)

    def to_svg(self) -> str:
        from .svg import barcode_svg
        return barcode_svg(self)


def _num(x: float) -> str:
    return "inf" if math.isinf(x) else repr(float(x))


def reduce_boundary(K: FilteredComplex, max_dim: int | None = None, field: Field = QQ):
    """Standard column reduction in filtration order.

    Returns ``(pivot_of, V)`` where ``pivot_of[low] = j`` pairs the positive
    simplex ``low`` with the negative simplex ``j`` and ``V[i]`` is the
    reduction chain of positive column ``i``: a cycle whose last simplex
    is ``i``.
    """
    top = K.dimension if max_dim is None else max_dim + 1
    R: dict[int, dict] = {}
    V: dict[int, dict] = {}
    pivot_of: dict[int, int] = {}
    one = field.coerce(1)
    for j, s in enumerate(K.simplices):
        if len(s) - 1 > top:
            continue
        col = boundary_column(K, j, field)
        v = {j: one}
        while col:
            low = max(col)
            l = pivot_of.get(low)
            if l is None:
                break
            a = col[low] * field.inv(R[l][low])
            linalg.axpy(col, -a, R[l], field)
            linalg.axpy(v, -a, V[l], field)
        V[j] = v
        if col:
            R[j] = col
            pivot_of[max(col)] = j
    return pivot_of, V


def compute_persistence(K: FilteredComplex, max_dim: int | None = None, field: Field = QQ,
                        keep_zero_length: bool = False) -> Barcode:
    """Persistence barcode of ``K`` in degrees ``0..max_dim``.

    Each pair carries the cycle created by its birth simplex as
    representative.  Pairs with ``birth == death`` are dropped unless
    ``keep_zero_length``.  If ``max_dim`` exceeds the complex dimension the
    computation stops at the complex dimension with a warning.
    """
    if max_dim is None:
        max_dim = max(K.dimension, 0)
    elif max_dim > K.dimension and len(K):
        warnings.warn(f"max_dim={max_dim} exceeds complex dimension {K.dimension}; "
                      f"computing up to {K.dimension}", stacklevel=2)
    pivot_of, V = reduce_boundary(K, max_dim, field)
    negative = set(pivot_of.values())
    counters: dict[int, int] = {}
    pairs = []
    for i, s in enumerate(K.simplices):
        d = len(s) - 1
        if d > max_dim or i in negative:
            continue
        j = pivot_of.get(i)
        death = math.inf if j is None else K.births[j]
        b = K.births[i]
        if death == b and not keep_zero_length:
            continue
        n = counters.get(d, 0)
        counters[d] = n + 1
        pairs.append(PersistencePair(f"H{d}_{n}", d, b, death, ChainVector(d, V[i]), i, j))
    return Barcode(pairs, field)


# -- snapshots and the cophenetic rank -----------------------------------------

@dataclass(frozen=True)
class CycleSpaceSnapshot:
    eps: float
    k: int
    cycles: list
    boundaries: list

    @property
    def betti(self) -> int:
        return len(self.cycles) - len(self.boundaries)


def _matrix(K, rows_idx, cols_idx, field):
    pos = {r: a for a, r in enumerate(rows_idx)}
    M = [[field.coerce(0)] * len(cols_idx) for _ in rows_idx]
    for c, j in enumerate(cols_idx):
        for f, v in boundary_column(K, j, field).items():
            M[pos[f]][c] = v
    return M


def boundary_basis(K: FilteredComplex, eps: float, k: int, field: Field = QQ) -> list[ChainVector]:
    """Basis of B_k at ``eps``: boundaries of the first maximal independent
    set of alive (k+1)-simplices in canonical order."""
    if k < 0:
        return []
    rows = K.indices(k, eps)
    cols = K.indices(k + 1, eps)
    if not rows or not cols:
        return []
    _, piv = linalg.rref(_matrix(K, rows, cols, field), field)
    return [ChainVector(k, boundary_column(K, cols[c], field)) for c in piv]


def cycle_snapshot(K: FilteredComplex, eps: float, k: int, field: Field = QQ) -> CycleSpaceSnapshot:
    """Bases of Z_k and B_k of the subcomplex born at or before ``eps``,
    recomputed from scratch by dense Gauss-Jordan elimination."""
    if eps < 0:
        raise ValueError("eps must be >= 0")
    crit = K.resolve(eps)
    if crit is None or k < 0:
        return CycleSpaceSnapshot(eps, k, [], [])
    cols = K.indices(k, crit)
    if k == 0:
        Z = [ChainVector(0, {i: field.coerce(1)}) for i in cols]
    else:
        rows = K.indices(k - 1, crit)
        basis = linalg.nullspace(_matrix(K, rows, cols, field) if rows else [], len(cols), field)
        Z = [ChainVector(k, {cols[a]: x for a, x in enumerate(z) if x != 0}) for z in basis]
    return CycleSpaceSnapshot(crit, k, Z, boundary_basis(K, crit, k, field))


def check_cycle(z: ChainVector, K: FilteredComplex, eps: float, k: int, field: Field = QQ):
    if z.coeffs and z.degree != k:
        raise NotACycleError(f"chain has degree {z.degree}, expected {k}")
    _check_chain(ChainVector(k, z.coeffs), K)
    late = [i for i in z.coeffs if K.births[i] > eps]
    if late:
        raise NotACycleError(
            f"chain uses simplex {list(K.simplices[late[0]])} born at {K.births[late[0]]} after eps={eps}")
    if boundary_apply(ChainVector(k, z.coeffs), K, field):
        raise NotACycleError(f"not a cycle at eps={eps}")


def cophenetic_rank(A: Sequence[ChainVector], K: FilteredComplex, eps: float, k: int,
                    field: Field = QQ) -> int:
    """Rank of the classes of the cycles ``A`` in H_k at ``eps``:
    ``dim(span(A) + B) - dim B``.
    """
    for z in A:
        check_cycle(z, K, eps, k, field)
    if not A:
        return 0
    B = boundary_basis(K, eps, k, field)
    cols = K.indices(k, eps)
    pos = {j: a for a, j in enumerate(cols)}
    rows = []
    for z in list(B) + list(A):
        row = [field.coerce(0)] * len(cols)
        for i, v in z.coeffs.items():
            row[pos[i]] = v
        rows.append(row)
    return linalg.rank(rows, field) - len(B)
