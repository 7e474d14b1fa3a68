"""Matroids given by rank oracles, filtered matroids and irreducible sets.

An irreducible set here is what matroid theory calls a circuit: a dependent
set all of whose proper subsets are independent.
"""

from __future__ import annotations

import bisect
import json
import math
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Hashable, Iterable, Mapping, Sequence

import numpy as np

from . import linalg
from .field import QQ, Field
from .filtration import FilteredComplex
from .homology import Barcode, ChainVector, HomologyError, boundary_apply, boundary_column, cophenetic_rank, cycle_snapshot


class MatroidError(ValueError):
    pass


class IndependentSetError(MatroidError):
    pass


class RankOracle:
    """A rank function on the subsets of a finite ground set.

    ``rank`` is called with a ``frozenset`` of ground elements.  Results are
    memoised, so the callable must be pure.
    """

    def __init__(self, ground: Iterable[Hashable], rank: Callable[[frozenset], int]):
        self.ground = tuple(ground)
        if len(set(self.ground)) != len(self.ground):
            raise MatroidError("ground set has repeated elements")
        self._pos = {e: i for i, e in enumerate(self.ground)}
        self._rank = rank
        self._cache: dict[frozenset, int] = {}

    def __call__(self, subset: Iterable[Hashable]) -> int:
        A = frozenset(subset)
        r = self._cache.get(A)
        if r is None:
            unknown = [a for a in A if a not in self._pos]
            if unknown:
                raise MatroidError(f"elements {unknown} are not in the ground set")
            r = int(self._rank(A))
            self._cache[A] = r
        return r

    def __len__(self):
        return len(self.ground)

    def __repr__(self):
        return f"RankOracle(ground={list(self.ground)})"

    def sort(self, subset: Iterable[Hashable]) -> tuple:
        """Elements of ``subset`` in ground-set order."""
        return tuple(sorted(subset, key=self._pos.__getitem__))


def cardinality_oracle(ground: Iterable[Hashable]) -> RankOracle:
    return RankOracle(ground, len)


@dataclass(frozen=True)
class SubmodularityReport:
    """Outcome of :func:`check_submodular`.

    ``kind`` is ``None`` on success, else one of ``"empty"`` (r(∅) != 0),
    ``"cardinality"`` (r(A) > |A|), ``"monotone"`` (r(A) > r(B) for A ⊆ B)
    or ``"submodular"``.
    """

    ok: bool
    kind: str | None = None
    A: tuple = ()
    B: tuple = ()
    exhaustive: bool = True

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "rank function passes (" + ("exhaustive" if self.exhaustive else "sampled") + ")"
        return f"{self.kind} violation: A={list(self.A)} B={list(self.B)}"


def _popcount(m: np.ndarray) -> np.ndarray:
    m = m.copy()
    c = np.zeros_like(m)
    while m.any():
        c += m & 1
        m >>= 1
    return c


def check_submodular(oracle: RankOracle, exhaustive_limit: int = 12, samples: int = 20000,
                     seed: int = 0) -> SubmodularityReport:
    """Validate the rank axioms of ``oracle``.

    For ground sets up to ``exhaustive_limit`` elements the full rank table is
    built and every pair is tested; the reported pair is the first violation
    with subsets ordered by size and then by ground-set positions.  Larger
    ground sets are checked on ``samples`` random pairs.
    """
    E = oracle.ground
    n = len(E)

    def members(m):
        return tuple(E[i] for i in range(n) if m >> i & 1)

    if oracle(()) != 0:
        return SubmodularityReport(False, "empty", (), (), n <= exhaustive_limit)
    if n > exhaustive_limit:
        return _check_sampled(oracle, samples, seed)

    N = 1 << n
    masks = np.arange(N, dtype=np.int64)
    r = np.array([oracle(members(m)) for m in range(N)], dtype=np.int64)
    size = _popcount(masks)
    key = sorted(range(N), key=lambda m: (int(size[m]), [i for i in range(n) if m >> i & 1]))
    order = np.array(key, dtype=np.int64)

    for m in order:
        if r[m] > size[m]:
            return SubmodularityReport(False, "cardinality", members(int(m)), ())
    for m in order:
        for i in range(n):
            if not m >> i & 1 and r[m] > r[m | (1 << i)]:
                return SubmodularityReport(False, "monotone", members(int(m)), members(int(m | (1 << i))))
    rB = r[order]
    for A in order:
        bad = r[A | order] + r[A & order] > r[A] + rB
        if bad.any():
            B = int(order[int(np.argmax(bad))])
            return SubmodularityReport(False, "submodular", members(int(A)), members(B))
    return SubmodularityReport(True)


def _check_sampled(oracle: RankOracle, samples: int, seed: int) -> SubmodularityReport:
    E = oracle.ground
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        a, b = rng.random((2, len(E))) < 0.5
        A = {e for e, t in zip(E, a) if t}
        B = {e for e, t in zip(E, b) if t}
        rA, rB = oracle(A), oracle(B)
        if rA > len(A):
            return SubmodularityReport(False, "cardinality", oracle.sort(A), (), False)
        if A <= B and rA > rB:
            return SubmodularityReport(False, "monotone", oracle.sort(A), oracle.sort(B), False)
        if A & B and oracle(A & B) > rA:
            return SubmodularityReport(False, "monotone", oracle.sort(A & B), oracle.sort(A), False)
        if oracle(A | B) + oracle(A & B) > rA + rB:
            return SubmodularityReport(False, "submodular", oracle.sort(A), oracle.sort(B), False)
    return SubmodularityReport(True, exhaustive=False)


def induced_rank(pi: Mapping | Callable, oracle: RankOracle, domain: Iterable[Hashable] | None = None) -> RankOracle:
    """Pull a rank function back along ``pi: F -> E``: ``A -> r_E(pi(A))``."""
    f = pi.__getitem__ if isinstance(pi, Mapping) else pi
    if domain is None:
        if not isinstance(pi, Mapping):
            raise MatroidError("domain is required when pi is a callable")
        domain = list(pi)
    return RankOracle(domain, lambda A: oracle({f(a) for a in A}))


# -- linear matroids ----------------------------------------------------------

def _sparse(v: Sequence, field: Field) -> dict:
    return linalg.clean(dict(enumerate(v)), field)


def linear_rank(vectors: Iterable[Sequence], field: Field = QQ) -> int:
    """Dimension of the span of ``vectors``, by exact elimination."""
    vectors = list(vectors)
    if len({len(v) for v in vectors}) > 1:
        raise MatroidError("vectors have unequal dimensions")
    return linalg.sparse_rank((_sparse(v, field) for v in vectors), field)


def linear_oracle(vectors: Mapping[Hashable, Sequence], field: Field = QQ) -> RankOracle:
    """Matroid of a labelled family of vectors; equal vectors stay distinct."""
    vecs = dict(vectors)
    return RankOracle(vecs, lambda A: linear_rank([vecs[a] for a in A], field))


def coordinate_zeroing(v: Sequence, eps: float) -> tuple:
    """Zero the first ``floor(eps)`` coordinates of ``v`` (all of them once
    ``eps >= len(v)``)."""
    if eps < 0:
        raise ValueError("eps must be >= 0")
    i = min(int(math.floor(eps)), len(v))
    return (0,) * i + tuple(v[i:])


# -- irreducible sets ---------------------------------------------------------

@dataclass(frozen=True)
class IrreducibleSet:
    elements: tuple
    rank: int

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self.elements

    def __repr__(self):
        return "{" + ",".join(map(str, self.elements)) + "}"


def is_irreducible(A: Iterable[Hashable], oracle: RankOracle) -> bool:
    """``r(A) = |A| - 1`` and every proper subset independent.

    Only the subsets of size ``|A| - 1`` are tested; by monotonicity their
    independence implies that of all smaller subsets.
    """
    A = oracle.sort(set(A))
    if not A:
        raise MatroidError("irreducibility is defined for non-empty sets")
    n = len(A)
    if oracle(A) != n - 1:
        return False
    return all(oracle(B) == n - 1 for B in combinations(A, n - 1))


def circuits(X: Iterable[Hashable], oracle: RankOracle) -> list[tuple]:
    """All irreducible subsets of ``X``, by size and then ground order.

    Breadth-first over subset sizes ``1 .. r(X) + 1``; a dependent subset
    containing no smaller irreducible set is irreducible.  Exponential in
    ``|X|``.
    """
    X = oracle.sort(set(X))
    found: list[tuple] = []
    found_sets: list[frozenset] = []
    for size in range(1, min(len(X), oracle(X) + 1) + 1):
        for C in combinations(X, size):
            S = frozenset(C)
            if any(F <= S for F in found_sets):
                continue
            if oracle(C) < size:
                found.append(C)
                found_sets.append(S)
    return found


def irreducible_cover(X: Iterable[Hashable], oracle: RankOracle) -> list[IrreducibleSet]:
    """Write a dependent set ``X`` as a union of irreducible subsets.

    The first uncovered element ``x`` (ground order) is covered by the
    largest irreducible set containing it inside the pool of not yet
    processed elements (ties: first in ground order), then ``x`` leaves the
    pool.  When the pool has no such set the whole of ``X`` is searched.

    Raises
    ------
    IndependentSetError
        If ``r(X) = |X|``.
    MatroidError
        If some element of ``X`` lies in no irreducible subset of ``X``, which
        cannot happen for linear matroids but can for arbitrary oracles.
    """
    X = oracle.sort(set(X))
    if oracle(X) >= len(X):
        raise IndependentSetError("independent set has no irreducible cover")
    allc = circuits(X, oracle)
    pool = set(X)
    covered: set = set()
    out: list[tuple] = []
    for x in X:
        if x in covered:
            continue
        cands = [C for C in allc if x in C and pool.issuperset(C)] or [C for C in allc if x in C]
        if not cands:
            raise MatroidError(f"element {x!r} lies in no irreducible subset of {list(X)}")
        Y = max(cands, key=len)
        out.append(Y)
        covered.update(Y)
        pool.discard(x)
    result = [Y for Y in out if not any(set(Y) < set(Z) for Z in out)]
    return [IrreducibleSet(Y, len(Y) - 1) for Y in result]


# -- filtered matroids --------------------------------------------------------

class FilteredMatroid:
    """Matroids ``(E_eps, r_eps)`` over a finite list of critical values.

    Queries at an arbitrary ``eps`` resolve to the largest critical value
    ``<= eps``; before the first one the ground set is empty.  Rank oracles
    are built lazily, one per critical value.  Structure maps default to the
    identity on element ids, which is what inclusions of filtered complexes
    induce.
    """

    def __init__(self, critical_values: Iterable[float],
                 ground: Callable[[float], Sequence[Hashable]],
                 rank: Callable[[float, frozenset], int],
                 psi: Callable[[float, float, Hashable], Hashable] | None = None,
                 name: str = ""):
        self.critical_values = tuple(sorted(set(float(c) for c in critical_values)))
        self._ground = ground
        self._rank = rank
        self._psi = psi
        self._oracles: dict[float, RankOracle] = {}
        self.name = name

    def __repr__(self):
        return f"FilteredMatroid({self.name or '?'}, critical_values={list(self.critical_values)})"

    def resolve(self, eps: float) -> float | None:
        i = bisect.bisect_right(self.critical_values, eps)
        return self.critical_values[i - 1] if i else None

    def oracle(self, eps: float) -> RankOracle:
        c = self.resolve(eps)
        if c is None:
            return RankOracle((), lambda A: 0)
        o = self._oracles.get(c)
        if o is None:
            o = self._oracles.setdefault(c, RankOracle(self._ground(c), lambda A, c=c: self._rank(c, A)))
        return o

    def ground(self, eps: float) -> tuple:
        return self.oracle(eps).ground

    def rank(self, eps: float, A: Iterable[Hashable]) -> int:
        return self.oracle(eps)(A)

    def psi(self, eps: float, eta: float, A: Iterable[Hashable]) -> tuple:
        """Image of ``A ⊆ E_eps`` in ``E_eta``."""
        if eps > eta:
            raise MatroidError(f"structure maps go forward only (eps={eps} > eta={eta})")
        src = self.oracle(eps)
        A = src.sort(set(A))
        if self._psi is None:
            img = A
        else:
            img = tuple(self._psi(eps, eta, a) for a in A)
        dst = self.oracle(eta)
        return dst.sort(set(img))

    def later(self, eps: float) -> list[float]:
        """Critical values strictly after ``eps``."""
        return [c for c in self.critical_values if c > eps]

    def check_functorial(self) -> bool:
        cv = self.critical_values
        for a, b, c in combinations(cv, 3):
            for x in self.ground(a):
                if self.psi(b, c, self.psi(a, b, [x])) != self.psi(a, c, [x]):
                    return False
        return True

    def check_connections(self, eps: float, eta: float, A: Iterable[Hashable]) -> bool:
        """``r_eta(psi(A)) <= r_eps(A)``."""
        return self.rank(eta, self.psi(eps, eta, A)) <= self.rank(eps, A)


def linear_filtered_matroid(vectors: Mapping[Hashable, Sequence],
                            transform: Callable[[Sequence, float], Sequence],
                            critical_values: Iterable[float], field: Field = QQ,
                            name: str = "linear") -> FilteredMatroid:
    """Filtered matroid of labelled vectors pushed forward by ``transform``:
    ``r_eps(A) = dim span{transform(v, eps) : v in A}``."""
    vecs = dict(vectors)
    labels = tuple(vecs)

    def rank(eps, A):
        return linear_rank([transform(vecs[a], eps) for a in A], field)

    return FilteredMatroid(critical_values, lambda eps: labels, rank, name=name)


def coordinate_zeroing_matroid(vectors: Mapping[Hashable, Sequence], field: Field = QQ) -> FilteredMatroid:
    """The filtered matroid ``r_eps(A) = dim s_eps(A)`` with critical values
    ``0, 1, ..., n``."""
    n = max((len(v) for v in vectors.values()), default=0)
    return linear_filtered_matroid(vectors, coordinate_zeroing, range(n + 1), field,
                                   name="coordinate-zeroing")


def _generator_table(K: FilteredComplex, k: int, generators, field: Field) -> dict[str, tuple[ChainVector, float]]:
    if isinstance(generators, Barcode):
        return {p.id: (p.representative, p.birth) for p in generators.in_dim(k)}
    if isinstance(generators, Mapping):
        items = list(generators.items())
    else:
        items = [(f"g{i}", z) for i, z in enumerate(generators)]
    table = {}
    for gid, z in items:
        if isinstance(z, tuple):
            z, b = z
        else:
            b = max((K.births[i] for i in z.coeffs), default=0.0)
        if z.coeffs and z.degree != k:
            raise HomologyError(f"generator {gid} has degree {z.degree}, expected {k}")
        if boundary_apply(ChainVector(k, z.coeffs), K, field):
            raise HomologyError(f"generator {gid} is not a cycle")
        table[str(gid)] = (ChainVector(k, z.coeffs), float(b))
    return table


class _CopheneticRanks:
    """Normal forms of generators modulo B_k, one boundary echelon per
    critical value."""

    def __init__(self, K, k, table, field):
        self.K, self.k, self.table, self.field = K, k, table, field
        self._normal: dict[tuple[float, str], dict] = {}
        self._B: dict[float, linalg.Echelon] = {}

    def echelon(self, eps):
        E = self._B.get(eps)
        if E is None:
            E = linalg.Echelon(self.field, (boundary_column(self.K, j, self.field)
                                            for j in self.K.indices(self.k + 1, eps)))
            self._B[eps] = E
        return E

    def normal(self, eps, g):
        key = (eps, g)
        v = self._normal.get(key)
        if v is None:
            v = self.echelon(eps).reduce(self.table[g][0].coeffs)
            self._normal[key] = v
        return v

    def __call__(self, eps, A):
        return linalg.sparse_rank((self.normal(eps, g) for g in A), self.field)


def cophenetic_matroid(K: FilteredComplex, k: int, generators, field: Field = QQ) -> FilteredMatroid:
    """The k-th cophenetic filtered matroid of ``K`` on a list of generators.

    Parameters
    ----------
    generators : Barcode, mapping id -> ChainVector, or sequence of ChainVector
        A barcode contributes its degree-``k`` representatives under their
        pair ids.  A mapping value may also be a ``(chain, birth)`` tuple.
        Otherwise a generator is born with the last simplex of its support.

    The ground set at ``eps`` holds the generators born by ``eps``; the rank
    of a subset is the dimension of its span in H_k at ``eps``.  Generators
    are matroid elements by id, so equal cycles stay distinct.
    """
    table = _generator_table(K, k, generators, field)
    ranks = _CopheneticRanks(K, k, table, field)
    ids = list(table)

    def ground(eps):
        return tuple(g for g in ids if table[g][1] <= eps)

    fm = FilteredMatroid(K.critical_values, ground, ranks, name=f"cophenetic H{k}")
    fm.complex, fm.k, fm.field = K, k, field
    fm.generators = {g: table[g][0] for g in ids}
    fm.births = {g: table[g][1] for g in ids}
    return fm


def cophenetic_rank_from_scratch(fm: FilteredMatroid, eps: float, A: Iterable[Hashable]) -> int:
    """Recompute a cophenetic matroid rank with :func:`cophenetic_rank`,
    sharing no state with the matroid's own oracle."""
    c = fm.resolve(eps)
    if c is None:
        return 0
    return cophenetic_rank([fm.generators[g] for g in A], fm.complex, c, fm.k, fm.field)


# -- Carlsson-Zomorodian rank -------------------------------------------------

def cz_rank(module, eps: float, eta: float, k: int | None = None, field: Field = QQ) -> int:
    """Rank of the structure map ``M_eps -> M_eta``.

    ``module`` is a :class:`Barcode` (bars ``[b, d)`` with ``b <= eps`` and
    ``eta < d`` are counted, restricted to degree ``k`` if given) or a
    :class:`FilteredComplex`, in which case the image of H_k at ``eps`` in H_k
    at ``eta`` is computed by elimination.
    """
    if eps > eta:
        raise ValueError(f"cz_rank needs eps <= eta, got {eps} > {eta}")
    if isinstance(module, Barcode):
        return sum(1 for p in module if (k is None or p.dim == k) and p.birth <= eps and eta < p.death)
    if isinstance(module, FilteredComplex):
        if k is None:
            raise ValueError("homology degree k is required for a complex")
        Z = cycle_snapshot(module, eps, k, field).cycles
        if not Z:
            return 0
        return cophenetic_rank(Z, module, module.resolve(eta), k, field)
    raise TypeError(f"unsupported module type {type(module).__name__}")


def interval_structure_map(barcode: Barcode, eps: float, eta: float, k: int | None = None) -> list[list[int]]:
    """Matrix of ``M_eps -> M_eta`` for the interval module of ``barcode``,
    in the bases of bars alive at each end."""
    bars = [p for p in barcode if k is None or p.dim == k]
    src = [p for p in bars if p.alive(eps)]
    dst = [p for p in bars if p.alive(eta)]
    return [[1 if q is p else 0 for p in src] for q in dst]


# -- dumps --------------------------------------------------------------------

def dump_matroid(oracle: RankOracle, table_limit: int = 12) -> str:
    """JSON with the ground ids and, for small ground sets, the rank table."""
    doc: dict = {"ground": [str(e) for e in oracle.ground]}
    if len(oracle) <= table_limit:
        table = []
        for size in range(len(oracle) + 1):
            for A in combinations(oracle.ground, size):
                table.append({"set": [str(a) for a in A], "rank": oracle(A)})
        doc["ranks"] = table
    return json.dumps(doc, indent=2)


def format_cover(cover: Iterable[Iterable[Hashable]]) -> str:
    """Irreducible cover as sorted lists of sorted ids."""
    return json.dumps(sorted(sorted(str(x) for x in C) for C in cover))
