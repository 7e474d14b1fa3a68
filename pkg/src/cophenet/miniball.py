"""Minimal enclosing balls for small Euclidean point sets.

Welzl's recursion is run on the points in their given order (no shuffling), so
the result is reproducible.  Čech births need balls of at most ``maxDim + 1``
points, so the expected-linear-time randomisation buys nothing here.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

_TOL = 1e-9


def circumball(S: np.ndarray) -> tuple[np.ndarray, float]:
    """Smallest ball with every point of ``S`` on its boundary.

    The center is taken inside the affine hull of ``S``.  Affinely dependent
    input is solved in the least-squares sense.
    """
    S = np.asarray(S, dtype=float)
    p0 = S[0]
    if len(S) == 1:
        return p0.copy(), 0.0
    if len(S) == 2:
        d = float(np.linalg.norm(S[1] - p0))
        return (p0 + S[1]) / 2, d / 2
    U = S[1:] - p0
    G = 2 * U @ U.T
    b = np.einsum("ij,ij->i", U, U)
    lam = np.linalg.lstsq(G, b, rcond=None)[0]
    c = p0 + lam @ U
    r = max(float(np.linalg.norm(s - c)) for s in S)
    return c, r


def _contains(center, radius, p) -> bool:
    return float(np.linalg.norm(p - center)) <= radius * (1 + _TOL) + _TOL


def _welzl(P: np.ndarray, n: int, R: list) -> tuple[np.ndarray, float]:
    dim = P.shape[1]
    if n == 0 or len(R) == dim + 1:
        if not R:
            return np.zeros(dim), -1.0
        return circumball(np.array(R))
    p = P[n - 1]
    c, r = _welzl(P, n - 1, R)
    if r >= 0 and _contains(c, r, p):
        return c, r
    return _welzl(P, n - 1, R + [p])


def min_enclosing_ball(points) -> tuple[np.ndarray, float]:
    """Center and radius of the minimal enclosing ball of ``points``.

    Parameters
    ----------
    points : (m, n) array_like
        A non-empty set of points in R^n.

    Returns
    -------
    center : (n,) ndarray
    radius : float
    """
    P = np.asarray(points, dtype=float)
    if P.ndim != 2 or len(P) == 0:
        raise ValueError("need a non-empty (m, n) array of points")
    if len(P) == 1:
        return P[0].copy(), 0.0
    if len(P) == 2:
        return circumball(P)
    return _welzl(P, len(P), [])


def min_enclosing_radius_bruteforce(points) -> float:
    """Reference radius: the smallest circumball over all support subsets
    of size at most ``n + 1`` that encloses every point."""
    P = np.asarray(points, dtype=float)
    best = np.inf
    for k in range(1, min(len(P), P.shape[1] + 1) + 1):
        for idx in combinations(range(len(P)), k):
            c, r = circumball(P[list(idx)])
            if r < best and all(_contains(c, r, p) for p in P):
                best = r
    return float(best)
