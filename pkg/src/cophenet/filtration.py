"""Filtered simplicial complexes and their constructions.

A :class:`FilteredComplex` is a finite simplicial complex in which every
simplex carries a birth value, closed under faces with non-decreasing births.
Its simplices are kept in the canonical order ``(birth, dimension, vertices)``
and every downstream index refers to that order.
"""

from __future__ import annotations

import bisect
import math
import os
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .miniball import min_enclosing_ball


class FiltrationError(ValueError):
    pass


class MalformedLineError(FiltrationError):
    pass


class MissingFaceError(FiltrationError):
    pass


class FaceBornLaterError(FiltrationError):
    pass


class Simplex(tuple):
    """A simplex as a strictly increasing tuple of non-negative vertex ids."""

    def __new__(cls, vertices: Iterable[int] = ()):
        vs = tuple(int(v) for v in vertices)
        if not vs:
            raise ValueError("a simplex needs at least one vertex")
        if any(v < 0 for v in vs):
            raise ValueError(f"negative vertex id in {vs}")
        if any(a >= b for a, b in zip(vs, vs[1:])):
            raise ValueError(f"vertices must be strictly increasing, got {vs}")
        return super().__new__(cls, vs)

    @property
    def dim(self) -> int:
        return len(self) - 1

    def faces(self) -> list["Simplex"]:
        """Codimension-one faces; ``faces()[i]`` deletes vertex ``i``."""
        if len(self) == 1:
            return []
        return [Simplex(self[:i] + self[i + 1:]) for i in range(len(self))]

    def __repr__(self):
        return "[" + " ".join(map(str, self)) + "]"


def _simplex_str(s) -> str:
    return "[" + " ".join(map(str, s)) + "]"


class FilteredComplex:
    """Immutable filtered simplicial complex.

    Parameters
    ----------
    items : iterable of (vertices, birth)
        Every face of every simplex must be present with birth no larger than
        the simplex's own birth.

    Raises
    ------
    MissingFaceError, FaceBornLaterError
        If the closure invariant fails; the message names the simplex.
    """

    def __init__(self, items: Iterable[tuple[Sequence[int], float]] = ()):
        births: dict[Simplex, float] = {}
        for verts, b in items:
            s = Simplex(verts)
            b = float(b)
            if not math.isfinite(b) or b < 0:
                raise FiltrationError(f"birth of {_simplex_str(s)} must be finite and >= 0, got {b}")
            if s in births:
                raise FiltrationError(f"duplicate simplex {_simplex_str(s)}")
            births[s] = b
        for s, b in births.items():
            for f in s.faces():
                if f not in births:
                    raise MissingFaceError(f"simplex {_simplex_str(s)} is missing its face {_simplex_str(f)}")
                if births[f] > b:
                    raise FaceBornLaterError(
                        f"face {_simplex_str(f)} (birth {births[f]}) is born after simplex {_simplex_str(s)} (birth {b})")
        order = sorted(births, key=lambda s: (births[s], len(s), tuple(s)))
        self._simplices = tuple(order)
        self._births = tuple(births[s] for s in order)
        self._index = {s: i for i, s in enumerate(order)}
        self.critical_values: tuple[float, ...] = tuple(sorted(set(self._births)))

    @property
    def simplices(self) -> tuple[Simplex, ...]:
        return self._simplices

    @property
    def births(self) -> tuple[float, ...]:
        return self._births

    def __len__(self):
        return len(self._simplices)

    def __iter__(self):
        return iter(zip(self._simplices, self._births))

    def __contains__(self, s):
        return Simplex(s) in self._index

    def __eq__(self, other):
        return (isinstance(other, FilteredComplex) and self._simplices == other._simplices
                and self._births == other._births)

    def __repr__(self):
        return f"FilteredComplex({len(self)} simplices, dim={self.dimension})"

    @property
    def dimension(self) -> int:
        return max((s.dim for s in self._simplices), default=-1)

    @property
    def vertices(self) -> list[int]:
        return [s[0] for s in self._simplices if len(s) == 1]

    def index(self, s) -> int:
        try:
            return self._index[Simplex(s)]
        except KeyError:
            raise KeyError(f"simplex {_simplex_str(s)} is not in the complex") from None

    def birth(self, s) -> float:
        return self._births[self.index(s)]

    def indices(self, dim: int, eps: float = math.inf) -> list[int]:
        """Canonical indices of the ``dim``-simplices born at or before ``eps``."""
        stop = bisect.bisect_right(self._births, eps)
        return [i for i in range(stop) if len(self._simplices[i]) == dim + 1]

    def count(self, eps: float = math.inf) -> int:
        return bisect.bisect_right(self._births, eps)

    def counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for s in self._simplices:
            out[s.dim] = out.get(s.dim, 0) + 1
        return dict(sorted(out.items()))

    def resolve(self, eps: float) -> float | None:
        """Largest critical value ``<= eps``, or ``None`` before the first."""
        i = bisect.bisect_right(self.critical_values, eps)
        return self.critical_values[i - 1] if i else None

    def facet_indices(self, i: int) -> list[int]:
        """Canonical indices of the codimension-one faces of simplex ``i``,
        in deletion order (face ``j`` omits vertex ``j``)."""
        return [self._index[f] for f in self._simplices[i].faces()]


def _as_cloud(points) -> np.ndarray:
    P = np.asarray(points, dtype=float)
    if P.size == 0:
        raise FiltrationError("empty point cloud")
    if P.ndim == 1:
        P = P[:, None]
    if P.ndim != 2:
        raise FiltrationError("point cloud must be a 2-d array of coordinates")
    if not np.all(np.isfinite(P)):
        raise FiltrationError("point cloud has non-finite coordinates")
    return P


def _check_params(max_dim, max_scale):
    if max_dim < 0:
        raise ValueError("max_dim must be >= 0")
    if not max_scale > 0:
        raise ValueError("max_scale must be > 0")


def _cliques(n: int, adj: list[set], max_dim: int):
    """Yield every clique of size <= max_dim + 1 as an increasing tuple."""
    stack = [(v,) for v in range(n - 1, -1, -1)]
    while stack:
        c = stack.pop()
        yield c
        if len(c) <= max_dim:
            common = set.intersection(*(adj[v] for v in c))
            for w in sorted((w for w in common if w > c[-1]), reverse=True):
                stack.append(c + (w,))


def pairwise_distances(points) -> np.ndarray:
    P = _as_cloud(points)
    diff = P[:, None, :] - P[None, :, :]
    return np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))


def build_vietoris_rips(points, max_dim: int = 2, max_scale: float = math.inf) -> FilteredComplex:
    """Vietoris-Rips filtration of a Euclidean point cloud.

    A simplex is born at the largest pairwise distance among its vertices.
    Only simplices of dimension ``<= max_dim`` born at or before
    ``max_scale`` are kept.
    """
    _check_params(max_dim, max_scale)
    D = pairwise_distances(points)
    n = len(D)
    adj = [set(np.flatnonzero(D[i] <= max_scale).tolist()) - {i} for i in range(n)]
    items = []
    for c in _cliques(n, adj, max_dim):
        b = max((D[u, v] for u, v in combinations(c, 2)), default=0.0)
        items.append((c, float(b)))
    return FilteredComplex(items)


def build_cech(points, max_dim: int = 2, max_scale: float = math.inf) -> FilteredComplex:
    """Čech filtration: a simplex is born at the radius of the minimal ball
    enclosing its vertices.

    Births are clamped up to the largest face birth so that rounding in the
    ball computation can never break the closure invariant.
    """
    _check_params(max_dim, max_scale)
    P = _as_cloud(points)
    D = pairwise_distances(P)
    n = len(P)
    # Common intersection of radius-r balls forces pairwise distance <= 2r.
    adj = [set(np.flatnonzero(D[i] <= 2 * max_scale).tolist()) - {i} for i in range(n)]
    births: dict[tuple, float] = {}
    for c in sorted(_cliques(n, adj, max_dim), key=lambda c: (len(c), c)):
        if len(c) == 1:
            r = 0.0
        elif len(c) == 2:
            r = float(D[c[0], c[1]]) / 2
        else:
            if any(c[:i] + c[i + 1:] not in births for i in range(len(c))):
                continue
            r = min_enclosing_ball(P[list(c)])[1]
            r = max([r] + [births[c[:i] + c[i + 1:]] for i in range(len(c))])
        if r <= max_scale:
            births[c] = r
    return FilteredComplex(births.items())


def clique_complex(edges: Iterable[tuple[int, int]], vertices: Iterable[int] | None = None,
                   max_dim: int | None = 2) -> FilteredComplex:
    """Clique (flag) complex of a simple graph, every simplex born at 0.

    ``max_dim=None`` enumerates cliques of every size, which is exponential
    in the worst case.
    """
    E = set()
    V = set(vertices or ())
    for u, v in edges:
        u, v = int(u), int(v)
        if u == v:
            raise FiltrationError(f"self-loop at vertex {u}")
        E.add((min(u, v), max(u, v)))
        V.update((u, v))
    order = sorted(V)
    pos = {v: i for i, v in enumerate(order)}
    adj = [set() for _ in order]
    for u, v in E:
        adj[pos[u]].add(pos[v])
        adj[pos[v]].add(pos[u])
    top = len(order) if max_dim is None else max_dim
    items = [(tuple(order[i] for i in c), 0.0) for c in _cliques(len(order), adj, top)]
    return FilteredComplex(items)


def nerve(cover: Sequence[Iterable], max_dim: int | None = 2) -> FilteredComplex:
    """Nerve of a finite cover, every simplex born at 0.

    Vertex ``i`` stands for ``cover[i]``; a set of cover members spans a
    simplex iff their common intersection is non-empty.
    """
    sets = [frozenset(U) for U in cover]
    if not sets:
        raise FiltrationError("empty cover")
    top = len(sets) - 1 if max_dim is None else max_dim
    items = []
    frontier = [((i,), sets[i]) for i in range(len(sets)) if sets[i]]
    while frontier:
        nxt = []
        for c, inter in frontier:
            items.append((c, 0.0))
            if len(c) <= top:
                for j in range(c[-1] + 1, len(sets)):
                    common = inter & sets[j]
                    if common:
                        nxt.append((c + (j,), common))
        frontier = nxt
    return FilteredComplex(items)


# -- text formats -------------------------------------------------------------

def dumps_filtration(K: FilteredComplex) -> str:
    lines = [" ".join(map(str, s)) + ";" + repr(b) for s, b in K]
    return "".join(line + "\n" for line in lines)


def loads_filtration(text: str) -> FilteredComplex:
    """Parse the ``v0 v1 ... vk;birth`` format.

    Faces must appear on earlier lines than their cofaces.
    """
    seen: dict[Simplex, float] = {}
    items = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.count(";") != 1:
            raise MalformedLineError(f"line {lineno}: expected 'v0 ... vk;birth', got {raw!r}")
        vpart, bpart = line.split(";")
        try:
            s = Simplex(int(t) for t in vpart.split())
        except ValueError as e:
            raise MalformedLineError(f"line {lineno}: bad simplex {vpart.strip()!r}: {e}") from None
        try:
            b = float(bpart)
        except ValueError:
            raise MalformedLineError(f"line {lineno}: bad birth {bpart.strip()!r} for simplex {_simplex_str(s)}") from None
        if not math.isfinite(b) or b < 0:
            raise MalformedLineError(f"line {lineno}: birth of {_simplex_str(s)} must be finite and >= 0")
        if s in seen:
            raise MalformedLineError(f"line {lineno}: duplicate simplex {_simplex_str(s)}")
        for f in s.faces():
            if f not in seen:
                raise MissingFaceError(
                    f"line {lineno}: simplex {_simplex_str(s)} appears before its face {_simplex_str(f)}")
            if seen[f] > b:
                raise FaceBornLaterError(
                    f"line {lineno}: face {_simplex_str(f)} (birth {seen[f]}) is born after simplex "
                    f"{_simplex_str(s)} (birth {b})")
        seen[s] = b
        items.append((s, b))
    return FilteredComplex(items)


def load_filtration(path: str | os.PathLike) -> FilteredComplex:
    with open(path, encoding="utf-8") as fh:
        return loads_filtration(fh.read())


def save_filtration(K: FilteredComplex, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_filtration(K))


def load_points(path: str | os.PathLike) -> np.ndarray:
    """Read a headerless CSV with one point per row."""
    P = np.loadtxt(path, delimiter=",", ndmin=2)
    return _as_cloud(P)
