from fractions import Fraction

import numpy as np
import pytest
import sympy

from cophenet.field import QQ, PrimeField, parse_field
from cophenet.linalg import Echelon, axpy, nullspace, rank, rref, sparse_rank


def random_matrix(rng, max_size=8):
    m, n = rng.integers(1, max_size + 1, size=2)
    # Low-rank structure is common in boundary matrices, so mix it in.
    if rng.random() < 0.5:
        r = int(rng.integers(1, min(m, n) + 1))
        A = rng.integers(-3, 4, size=(m, r)) @ rng.integers(-3, 4, size=(r, n))
    else:
        A = rng.integers(-4, 5, size=(m, n))
    den = rng.integers(1, 4, size=(m, n))
    return [[Fraction(int(a), int(d)) for a, d in zip(row, drow)] for row, drow in zip(A, den)]


def as_sparse(rows):
    return [{j: x for j, x in enumerate(row) if x != 0} for row in rows]


def test_sparse_and_dense_rank_agree_on_1000_matrices():
    rng = np.random.default_rng(7)
    for t in range(1000):
        M = random_matrix(rng)
        r_dense = rank(M)
        assert sparse_rank(as_sparse(M)) == r_dense
        if t % 20 == 0:
            assert sympy.Matrix(M).rank() == r_dense


def test_rref_matches_sympy(rng):
    for _ in range(30):
        M = random_matrix(rng, 6)
        R, piv = rref(M)
        S, spiv = sympy.Matrix(M).rref()
        assert tuple(piv) == spiv
        assert [[sympy.Rational(x.numerator, x.denominator) for x in row] for row in R] == \
               S[:len(piv), :].tolist()


def test_nullspace_is_kernel_of_right_size(rng):
    for _ in range(50):
        M = random_matrix(rng, 6)
        n = len(M[0])
        N = nullspace(M, n)
        assert len(N) == n - rank(M)
        for z in N:
            assert all(sum(a * b for a, b in zip(row, z)) == 0 for row in M)
        if N:
            assert rank(N) == len(N)


def test_echelon_reduction_is_projection_mod_span(rng):
    for _ in range(50):
        M = as_sparse(random_matrix(rng, 6))
        E = Echelon(QQ, M)
        for v in M:
            assert E.contains(v)
        w = {0: Fraction(1), 3: Fraction(2, 3)}
        shifted = axpy(dict(w), Fraction(5, 7), M[0])
        assert E.reduce(w) == E.reduce(shifted)


def test_echelon_add_reports_independence():
    E = Echelon()
    assert E.add({0: 1, 1: 1})
    assert not E.add({0: 2, 1: 2})
    assert E.add({1: 1})
    assert E.rank == 2


def test_rank_over_prime_field_differs_where_expected():
    M = [[1, 1], [1, -1]]
    assert rank(M) == 2
    assert rank(M, PrimeField(2)) == 1
    assert rank(M, PrimeField(3)) == 2


def test_prime_field_arithmetic():
    F = PrimeField(7)
    assert F.coerce(Fraction(1, 3)) == 5
    assert F.inv(3) == 5
    assert F.to_fraction(6) == -1
    with pytest.raises(ZeroDivisionError):
        F.inv(0)
    with pytest.raises(ValueError):
        PrimeField(9)


def test_rational_coerce_float():
    assert QQ.coerce(0.5) == Fraction(1, 2)
    assert QQ.coerce(3) == Fraction(3)


@pytest.mark.parametrize("spec,expect", [("rational", QQ), (None, QQ), ("gf(5)", PrimeField(5)),
                                         ("GF:11", PrimeField(11)), ("gf3", PrimeField(3))])
def test_parse_field(spec, expect):
    assert parse_field(spec) == expect


@pytest.mark.parametrize("bad", ["real", "gf(4)", "gf()"])
def test_parse_field_rejects(bad):
    with pytest.raises(ValueError):
        parse_field(bad)
