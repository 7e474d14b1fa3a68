import math
from itertools import combinations

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from cophenet import datasets
from cophenet.distance import (DistanceMatrix, UltrametricViolation, UnknownGeneratorError, ZeroClassError,
                               cophenetic_distance, distance_matrix, single_linkage, ultrametric_violation)
from cophenet.filtration import FilteredComplex, build_vietoris_rips
from cophenet.forest import auto_seed, build_forest
from cophenet.homology import compute_persistence
from cophenet.matroid import cophenetic_matroid

import oracles

IDS = ("ABC", "DEF", "GIH", "JKL")


def oracle_distance(fm, eps, a, b, merge):
    """Distance recomputed with numpy ranks on the raw chains."""
    K = fm.complex
    ch = {g: {s: c for s, c in fm.generators[g].terms(K)} for g in (a, b)}
    for eta in [c for c in K.critical_values if c >= fm.resolve(eps)]:
        ra, rb = (oracles.class_rank([ch[g]], K, eta, fm.k) for g in (a, b))
        rab = oracles.class_rank([ch[a], ch[b]], K, eta, fm.k)
        if merge == "rank":
            hit = rab < 2
        else:
            hit = ra == rb and (ra == 0 or rab == 1)
        if hit:
            return eta - eps
    return math.inf


def test_distance_to_itself_is_zero(triangle_fm):
    for g in IDS:
        assert cophenetic_distance(g, g, triangle_fm, 3) == 0


def test_literal_rule_on_triangle(triangle_fm):
    assert cophenetic_distance("DEF", "GIH", triangle_fm, 3, merge="rank") == 1
    D = distance_matrix(triangle_fm, 3, merge="rank", validate=False)
    for a, b in combinations(IDS, 2):
        assert D[a, b] == (1 if "DEF" in (a, b) else 2)


def test_projective_rule_on_triangle(triangle_fm):
    assert cophenetic_distance("DEF", "GIH", triangle_fm, 3) == 2
    D = distance_matrix(triangle_fm, 3)
    expect = {("ABC", "DEF"): 3, ("ABC", "GIH"): 3, ("ABC", "JKL"): 2,
              ("DEF", "GIH"): 2, ("DEF", "JKL"): 3, ("GIH", "JKL"): 3}
    for (a, b), v in expect.items():
        assert D[a, b] == v == D[b, a]
    assert ultrametric_violation(D) is None


def test_literal_rule_breaks_ultrametric(triangle_fm):
    with pytest.raises(UltrametricViolation) as exc:
        distance_matrix(triangle_fm, 3, merge="rank")
    assert set(exc.value.triple) == {"ABC", "GIH", "DEF"}


@pytest.mark.parametrize("merge", ["projective", "rank"])
def test_triangle_distances_match_numpy_oracle(triangle_fm, merge):
    for eps in (2, 3):
        for a, b in combinations(triangle_fm.ground(eps), 2):
            assert cophenetic_distance(a, b, triangle_fm, eps, merge) == oracle_distance(triangle_fm, eps, a, b, merge)


def test_distance_measured_from_non_critical_scale(triangle_fm):
    assert cophenetic_distance("ABC", "JKL", triangle_fm, 3.5) == 1.5


def test_classes_that_never_merge():
    items = [((v,), 0.0) for v in range(6)]
    for a, b, c in ((0, 1, 2), (3, 4, 5)):
        items += [((a, b), 1.0), ((a, c), 1.0), ((b, c), 1.0)]
    K = FilteredComplex(items)
    fm = cophenetic_matroid(K, 1, compute_persistence(K, 1))
    assert cophenetic_distance("H1_0", "H1_1", fm, 1) == math.inf
    assert cophenetic_distance("H1_0", "H1_1", fm, 1, merge="rank") == math.inf
    assert "inf" in distance_matrix(fm, 1).to_csv()


def test_equal_classes_have_distance_zero():
    K = datasets.two_circles()
    z = compute_persistence(K, 1).in_dim(1)[0].representative
    fm = cophenetic_matroid(K, 1, {"a": z, "b": z.scaled(-2)})
    assert cophenetic_distance("a", "b", fm, 1) == 0


def test_two_annuli_point_cloud():
    rng = np.random.default_rng(3)
    t = np.linspace(0, 2 * np.pi, 12, endpoint=False) + rng.uniform(-0.05, 0.05, 12)
    r = 1 + rng.uniform(-0.05, 0.05, 12)
    ring = np.c_[r * np.cos(t), r * np.sin(t)]
    P = np.vstack([ring, ring * 1.5 + [10, 0]])
    K = build_vietoris_rips(P, max_dim=2, max_scale=4)
    bc = compute_persistence(K, 1)
    long_bars = [p for p in bc.in_dim(1) if p.persistence > 0.5]
    assert len(long_bars) == 2
    fm = cophenetic_matroid(K, 1, {p.id: p.representative for p in long_bars})
    eps = max(p.birth for p in long_bars)
    a, b = (p.id for p in long_bars)
    d = cophenetic_distance(a, b, fm, eps)
    # The two holes are independent until the later one fills.
    assert d == pytest.approx(max(p.death for p in long_bars) - eps)
    assert d == pytest.approx(oracle_distance(fm, eps, a, b, "projective"))
    assert cophenetic_distance(a, b, fm, eps, "rank") == pytest.approx(min(p.death for p in long_bars) - eps)


def test_errors(triangle_fm):
    with pytest.raises(UnknownGeneratorError, match="unknown generator"):
        cophenetic_distance("ABC", "XYZ", triangle_fm, 3)
    with pytest.raises(UnknownGeneratorError):
        cophenetic_distance("ABC", "DEF", triangle_fm, 1)
    with pytest.raises(ZeroClassError, match="boundary"):
        cophenetic_distance("ABC", "DEF", triangle_fm, 4)
    with pytest.raises(ValueError, match="merge"):
        cophenetic_distance("ABC", "DEF", triangle_fm, 3, merge="average")


def test_csv_layout(triangle_fm):
    lines = distance_matrix(triangle_fm, 3).to_csv().splitlines()
    assert lines[0] == "id,ABC,DEF,GIH,JKL"
    assert lines[1] == "ABC,0,3,3,2"


def test_ultrametric_violation_detector():
    D = DistanceMatrix(("a", "b", "c"), np.array([[0, 3, 1], [3, 0, 1], [1, 1, 0]], float))
    assert ultrametric_violation(D)[0] == ("a", "b", "c")


def test_single_linkage_heights_are_ramification_values(triangle_fm):
    forest = build_forest(triangle_fm, auto_seed(triangle_fm))
    ram = {n.ramification for n in forest.nodes() if n.ramification is not None}
    eps = 3
    for merge in ("projective", "rank"):
        D = distance_matrix(triangle_fm, eps, merge=merge, validate=False)
        for _, _, h in single_linkage(D):
            assert eps + h in ram
    merges = single_linkage(distance_matrix(triangle_fm, eps))
    assert [h for *_, h in merges] == [2, 2, 3]


def test_single_linkage_stops_at_infinity():
    D = DistanceMatrix(("a", "b", "c"), np.array([[0, 1, np.inf], [1, 0, np.inf], [np.inf, np.inf, 0]]))
    assert single_linkage(D) == [(frozenset("a"), frozenset("b"), 1.0)]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 100_000))
def test_projective_distance_is_ultrametric_on_random_complexes(seed):
    rng = np.random.default_rng(seed)
    K = datasets.random_filtered_complex(rng)
    assume(K.dimension >= 1)
    fm = cophenetic_matroid(K, 1, compute_persistence(K, 1))
    for eps in fm.critical_values:
        D = distance_matrix(fm, eps, validate=False)
        assert ultrametric_violation(D) is None
        assert np.all(D.values == D.values.T) and np.all(np.diag(D.values) == 0)
        for a, b in combinations(D.ids, 2):
            assert D[a, b] == oracle_distance(fm, eps, a, b, "projective")
