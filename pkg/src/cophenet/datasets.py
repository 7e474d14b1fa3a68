"""Built-in example data and random test complexes."""

from __future__ import annotations

from importlib import resources

import numpy as np

from .field import QQ, Field
from .filtration import FilteredComplex, loads_filtration
from .homology import compute_persistence
from .matroid import FilteredMatroid, cophenetic_matroid, coordinate_zeroing_matroid

TRIANGLE_VERTEX_NAMES = "ABCDEFGHIJKL"
# Cycle names follow the vertex sets of the representatives.
TRIANGLE_CYCLES = {"ABC": "ABC", "DEF": "DEF", "GIH": "GHI", "JKL": "JKL"}

S_EPSILON_VECTORS = {
    "x1": (1, 1, 1, 1),
    "x2": (1, 1, 2, 2),
    "x3": (1, 2, 3, 3),
    "x4": (3, 5, 6, 6),
}
S_EPSILON_SETS = {
    "A": ("x1", "x2", "x3", "x4"),
    "A1": ("x1", "x2", "x3"),
    "A2": ("x2", "x3", "x4"),
    "A11": ("x1", "x2"),
    "A12": ("x2", "x3"),
    "A22": ("x3", "x4"),
}


def triangle_filtration_text() -> str:
    return resources.files("cophenet").joinpath("data/triangle.filtration").read_text(encoding="utf-8")


def triangle_points() -> np.ndarray:
    text = resources.files("cophenet").joinpath("data/triangle_points.csv").read_text(encoding="utf-8")
    return np.array([[float(x) for x in line.split(",")] for line in text.split()])


def triangle_complex() -> FilteredComplex:
    """Big triangle ABC around three small triangles, filled in stages."""
    return loads_filtration(triangle_filtration_text())


def triangle_generators(K: FilteredComplex | None = None, field: Field = QQ) -> dict:
    """H_1 barcode representatives keyed ``ABC, DEF, GIH, JKL``."""
    K = K or triangle_complex()
    by_vertices = {}
    for p in compute_persistence(K, 1, field).in_dim(1):
        verts = {v for i in p.representative.coeffs for v in K.simplices[i]}
        by_vertices["".join(sorted(TRIANGLE_VERTEX_NAMES[v] for v in verts))] = p.representative
    return {name: by_vertices[letters] for name, letters in TRIANGLE_CYCLES.items()}


def triangle_matroid(field: Field = QQ) -> FilteredMatroid:
    K = triangle_complex()
    return cophenetic_matroid(K, 1, triangle_generators(K, field), field)


def s_epsilon_matroid(field: Field = QQ) -> FilteredMatroid:
    """Coordinate-zeroing filtered matroid on four vectors of Q^4."""
    return coordinate_zeroing_matroid(S_EPSILON_VECTORS, field)


def circle_complex(birth: float = 1.0) -> FilteredComplex:
    return FilteredComplex([((v,), birth) for v in range(3)] + [(e, birth) for e in ((0, 1), (1, 2), (0, 2))])


def two_circles(fill_first: float = 2.0, fill_second: float = 3.0) -> FilteredComplex:
    """Two disjoint hollow triangles born at 1, filled at different times."""
    items = [((v,), 0.0) for v in range(6)]
    for a, b, c in ((0, 1, 2), (3, 4, 5)):
        items += [((a, b), 1.0), ((a, c), 1.0), ((b, c), 1.0)]
    items += [((0, 1, 2), fill_first), ((3, 4, 5), fill_second)]
    return FilteredComplex(items)


def random_filtered_complex(rng: np.random.Generator, n_vertices: int | None = None,
                            max_simplices: int = 30, max_dim: int = 2, max_step: int = 2) -> FilteredComplex:
    """Random small filtered complex with integer births.

    Simplices are drawn dimension by dimension among those whose faces are
    already present; a simplex is born a random step of ``0..max_step``
    after its latest face.
    """
    nv = int(n_vertices or rng.integers(3, 7))
    births: dict[tuple, float] = {(v,): float(rng.integers(0, 2)) for v in range(nv)}
    layer = [(v,) for v in range(nv)]
    for d in range(1, max_dim + 1):
        cands = []
        for s in layer:
            for v in range(s[-1] + 1, nv):
                t = s + (v,)
                if all(t[:i] + t[i + 1:] in births for i in range(len(t))):
                    cands.append(t)
        cands = sorted(set(cands))
        rng.shuffle(cands)
        nxt = []
        for t in cands:
            if len(births) >= max_simplices:
                break
            if rng.random() < (0.7 if d == 1 else 0.5):
                faces = [t[:i] + t[i + 1:] for i in range(len(t))]
                births[t] = max(births[f] for f in faces) + float(rng.integers(0, max_step + 1))
                nxt.append(t)
        layer = sorted(nxt)
    return FilteredComplex(births.items())
