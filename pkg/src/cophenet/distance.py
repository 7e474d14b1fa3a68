"""Cophenetic distance between homology classes.

Two classes at ``eps`` merge at the first critical value where they have
become dependent.  Two readings of "dependent" are offered:

``"projective"`` (default)
    the images are nonzero scalar multiples of each other, or both zero.
    This is an equivalence relation that only coarsens along the
    filtration, which makes the distance an ultrametric.
``"rank"``
    the pair's cophenetic rank is below 2.  A class dying alone already
    counts as merging with everything, and the result can break the
    ultrametric inequality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Hashable, Sequence

import numpy as np

from .matroid import FilteredMatroid, MatroidError

MERGE_RULES = ("projective", "rank")


class UnknownGeneratorError(MatroidError, KeyError):
    pass


class ZeroClassError(MatroidError):
    pass


class UltrametricViolation(RuntimeError):
    def __init__(self, triple, values):
        self.triple = triple
        self.values = values
        a, b, c = triple
        super().__init__(f"ultrametric inequality fails on ({a}, {b}, {c}): "
                         f"d(a,b)={values[0]} > max(d(a,c)={values[1]}, d(c,b)={values[2]})")


def _merged(fm: FilteredMatroid, eta: float, a, b, merge: str) -> bool:
    if merge == "rank":
        return fm.rank(eta, {a, b}) < 2
    ra, rb = fm.rank(eta, [a]), fm.rank(eta, [b])
    if ra != rb:
        return False
    return ra == 0 or fm.rank(eta, {a, b}) == 1


def _check_inputs(fm, eps, ids, merge):
    if merge not in MERGE_RULES:
        raise ValueError(f"merge must be one of {MERGE_RULES}, got {merge!r}")
    ground = set(fm.ground(eps))
    for g in ids:
        if g not in ground:
            raise UnknownGeneratorError(f"unknown generator {g!r} at eps={eps}")
        if fm.rank(eps, [g]) == 0:
            raise ZeroClassError(f"generator {g!r} is a boundary at eps={eps}; distances are defined on nonzero classes")


def _distance(fm, eps, a, b, merge):
    start = fm.resolve(eps)
    for eta in [start] + fm.later(start):
        if _merged(fm, eta, a, b, merge):
            return max(eta - eps, 0.0)
    return math.inf


def cophenetic_distance(alpha: Hashable, beta: Hashable, fm: FilteredMatroid, eps: float,
                        merge: str = "projective") -> float:
    """Offset from ``eps`` to the first critical value at which ``alpha`` and
    ``beta`` have merged; ``inf`` if they never do."""
    _check_inputs(fm, eps, (alpha, beta), merge)
    return _distance(fm, eps, alpha, beta, merge)


@dataclass(frozen=True)
class DistanceMatrix:
    ids: tuple
    values: np.ndarray
    eps: float = 0.0

    def __getitem__(self, pair):
        a, b = pair
        return float(self.values[self.ids.index(a), self.ids.index(b)])

    def to_csv(self) -> str:
        def f(x):
            return "inf" if math.isinf(x) else f"{x:g}"
        lines = [",".join(["id"] + [str(i) for i in self.ids])]
        for i, row in zip(self.ids, self.values):
            lines.append(",".join([str(i)] + [f(float(x)) for x in row]))
        return "\n".join(lines) + "\n"


def ultrametric_violation(D: DistanceMatrix):
    """First triple ``(a, b, c)`` with ``d(a,b) > max(d(a,c), d(c,b))``."""
    V = D.values
    n = len(D.ids)
    for i, j in combinations(range(n), 2):
        for k in range(n):
            if V[i, j] > max(V[i, k], V[k, j]):
                return (D.ids[i], D.ids[j], D.ids[k]), (V[i, j], V[i, k], V[k, j])
    return None


def distance_matrix(fm: FilteredMatroid, eps: float, generators: Sequence[Hashable] | None = None,
                    merge: str = "projective", validate: bool = True) -> DistanceMatrix:
    """Pairwise cophenetic distances of generators alive at ``eps``.

    ``generators`` defaults to every element of the ground set at ``eps``
    with a nonzero class.  With ``validate`` the ultrametric inequality is
    checked on all triples and :class:`UltrametricViolation` is raised on
    failure.
    """
    if generators is None:
        generators = [g for g in fm.ground(eps) if fm.rank(eps, [g]) > 0]
    ids = tuple(generators)
    _check_inputs(fm, eps, ids, merge)
    n = len(ids)
    V = np.zeros((n, n))
    for i, j in combinations(range(n), 2):
        V[i, j] = V[j, i] = _distance(fm, eps, ids[i], ids[j], merge)
    D = DistanceMatrix(ids, V, eps)
    if validate:
        bad = ultrametric_violation(D)
        if bad:
            raise UltrametricViolation(*bad)
    return D


def single_linkage(D: DistanceMatrix) -> list[tuple[frozenset, frozenset, float]]:
    """Single-linkage merges ``(cluster, cluster, height)`` in height order;
    pairs at infinite distance never merge."""
    clusters = {i: frozenset([g]) for i, g in enumerate(D.ids)}
    V = D.values
    merges = []
    while len(clusters) > 1:
        best = None
        keys = sorted(clusters)
        for a, b in combinations(keys, 2):
            h = min(V[D.ids.index(x), D.ids.index(y)] for x in clusters[a] for y in clusters[b])
            if best is None or h < best[0]:
                best = (h, a, b)
        h, a, b = best
        if math.isinf(h):
            break
        merges.append((clusters[a], clusters[b], float(h)))
        clusters[a] = clusters[a] | clusters.pop(b)
    return merges
