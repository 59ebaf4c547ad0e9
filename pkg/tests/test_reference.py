import random
from fractions import Fraction

import pytest

from sparsege.reference import DenseMatrix, matmul, permute_rows, rank_dense


def test_rank_examples():
    assert rank_dense([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 3
    assert rank_dense([[1, 2], [2, 4], [0, 1]]) == 2
    assert rank_dense([[0] * 7 for _ in range(4)]) == 0
    assert rank_dense(DenseMatrix([], 0)) == 0


def test_matmul_and_permute():
    a = DenseMatrix([[1, 2], [3, 4]])
    eye = DenseMatrix([[1, 0], [0, 1]])
    assert matmul(eye, a) == a
    assert permute_rows(a, [0, 1]) == a
    assert matmul(DenseMatrix([[0, 1], [1, 0]]), a) == DenseMatrix([[3, 4], [1, 2]])
    assert permute_rows(a, [1, 0]) == DenseMatrix([[3, 4], [1, 2]])
    with pytest.raises(ValueError):
        matmul(a, DenseMatrix([[1, 2, 3]]))
    with pytest.raises(ValueError):
        permute_rows(a, [0, 0])


def test_rank_invariances():
    rng = random.Random(4)
    for _ in range(30):
        n, m = rng.randint(1, 7), rng.randint(1, 7)
        data = [[rng.choice([0, 0, rng.randint(-5, 5)]) for _ in range(m)] for _ in range(n)]
        a = DenseMatrix(data)
        r = rank_dense(a)
        assert r == rank_dense(a.transpose())
        rows = data[:]
        rng.shuffle(rows)
        assert r == rank_dense(rows)
        perm = list(range(m))
        rng.shuffle(perm)
        assert r == rank_dense([[row[j] for j in perm] for row in data])


def test_cap():
    with pytest.raises(ValueError):
        rank_dense([[0] * 65])
