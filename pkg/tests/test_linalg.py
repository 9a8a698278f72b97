import random

import numpy as np
import pytest

from hlrc.galois import field_create
from hlrc import linalg
from hlrc.linalg import Mat


F37 = field_create(37)
F64 = field_create(2, 6)
F1681 = field_create(41, 2)


def test_rref_identity_and_zero():
    ident = Mat.identity(F37, 5)
    r, pivots = linalg.rref(ident)
    assert r == ident and pivots == [0, 1, 2, 3, 4]
    z = Mat.zero(F37, 3, 4)
    r, pivots = linalg.rref(z)
    assert r == z and pivots == []


def test_rref_transform_reconstructs_input():
    rng = random.Random(5)
    a = Mat.random(F37, 6, 12, rng)
    r, pivots, t = linalg.rref(a, transform=True)
    assert linalg.matmul(t, a) == r
    tinv = _invert(t)
    assert linalg.matmul(tinv, r) == a


def _invert(t: Mat) -> Mat:
    n = t.rows
    aug = Mat(t.field, np.concatenate([t.a, np.eye(n, dtype=np.int64)], axis=1))
    r, pivots = linalg.rref(aug)
    assert pivots == list(range(n))
    return Mat(t.field, r.a[:, n:])


def test_rref_idempotent():
    rng = random.Random(9)
    for field in (F37, F64):
        a = Mat.random(field, 5, 9, rng)
        r1, _ = linalg.rref(a)
        r2, _ = linalg.rref(r1)
        assert r1 == r2


def test_rank_examples():
    assert linalg.rank(Mat.identity(F64, 7)) == 7
    rep = Mat(F37, [[1, 2, 3], [1, 2, 3], [4, 5, 6]])
    assert linalg.rank(rep) < 3
    rng = random.Random(1)
    a = Mat.random(F1681, 4, 9, rng)
    r = linalg.rank(a)
    assert r == 4
    d = linalg.det(a.take_cols(range(4)))
    if d != 0:
        assert linalg.submatrix_rank(a, range(4), range(4)) == 4


def test_rank_transpose_agrees():
    rng = random.Random(2)
    for field in (F37, F64):
        for _ in range(10):
            a = Mat.random(field, 5, 8, rng)
            assert linalg.rank(a) == linalg.rank(a.transpose())


def test_solve_identity_and_zero():
    b = [3, 14, 15]
    assert list(linalg.solve(Mat.identity(F37, 3), b)) == b
    assert list(linalg.solve(Mat.identity(F37, 3), [0, 0, 0])) == [0, 0, 0]


def test_solve_random_consistent_and_inconsistent():
    rng = random.Random(3)
    a = Mat.random(F64, 5, 7, rng)
    x = [rng.randrange(64) for _ in range(7)]
    b = linalg.mat_vec(a, x)
    got = linalg.solve(a, b)
    assert got is not None
    assert list(linalg.mat_vec(a, got)) == list(b)
    # an inconsistent system: rank-1 matrix, incompatible rhs
    bad = Mat(F37, [[1, 1], [2, 2]])
    assert linalg.solve(bad, [1, 3]) is None


def test_nullspace():
    assert linalg.nullspace_basis(Mat.identity(F37, 4)) == []
    z = Mat.zero(F37, 3, 5)
    basis = linalg.nullspace_basis(z)
    assert len(basis) == 5
    rng = random.Random(4)
    for field in (F37, F1681):
        a = Mat.random(field, 4, 9, rng)
        basis = linalg.nullspace_basis(a)
        assert len(basis) == 9 - linalg.rank(a)
        for v in basis:
            assert not linalg.mat_vec(a, v).any()


def test_submatrix_rank_matches_materialized():
    rng = random.Random(6)
    a = Mat.random(F64, 6, 10, rng)
    assert linalg.submatrix_rank(a, range(6), range(10)) == linalg.rank(a)
    one_col = Mat(F37, [[0], [5], [0]])
    assert linalg.submatrix_rank(one_col, range(3), [0]) == 1
    for _ in range(100):
        rows = sorted(rng.sample(range(6), rng.randrange(1, 7)))
        cols = sorted(rng.sample(range(10), rng.randrange(1, 11)))
        sub = Mat(F64, a.a[np.ix_(rows, cols)])
        assert linalg.submatrix_rank(a, rows, cols) == linalg.rank(sub)


def test_matmul_matches_schoolbook():
    rng = random.Random(8)
    for field in (F37, F64, F1681):
        a = Mat.random(field, 3, 5, rng)
        b = Mat.random(field, 5, 4, rng)
        c = linalg.matmul(a, b)
        for i in range(3):
            for j in range(4):
                acc = 0
                for k in range(5):
                    acc = field.add(acc, field.mul(int(a.a[i, k]), int(b.a[k, j])))
                assert acc == c.a[i, j]


def test_det_multiplicative():
    rng = random.Random(10)
    for field in (F37, F64):
        a = Mat.random(field, 4, 4, rng)
        b = Mat.random(field, 4, 4, rng)
        assert linalg.det(linalg.matmul(a, b)) == field.mul(linalg.det(a), linalg.det(b))


def test_big_elimination_is_fast():
    rng = random.Random(12)
    a = Mat.random(F1681, 144, 500, rng)
    assert linalg.rank(a) == 144
