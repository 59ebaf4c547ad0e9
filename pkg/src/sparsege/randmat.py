"""Seeded random sparse matrices for tests and benchmarks."""

from __future__ import annotations

import random

from .sparsemat import SparseMatrix, SparseRow


def random_sparse(n: int, m: int, density: float = 0.3, lo: int = -9, hi: int = 9,
                  rng: random.Random | None = None) -> SparseMatrix:
    rng = rng or random.Random()
    rows = []
    for _ in range(n):
        cols, vals = [], []
        for j in range(m):
            if rng.random() < density:
                v = 0
                while v == 0:
                    v = rng.randint(lo, hi)
                cols.append(j)
                vals.append(v)
        rows.append(SparseRow(m, cols, vals))
    return SparseMatrix(n, m, rows)


def rank_deficient(n: int, m: int, density: float = 0.3, rng: random.Random | None = None) -> SparseMatrix:
    """Random matrix with at least one row a small integer combination of two others."""
    rng = rng or random.Random()
    a = random_sparse(n, m, density, rng=rng)
    if n < 3:
        return SparseMatrix(n, m, [a.rows[0]] * n) if n else a
    dense = a.to_dense()
    i, j, k = rng.sample(range(n), 3)
    s, t = rng.choice([-2, -1, 1, 2]), rng.choice([-1, 1])
    dense[k] = [s * x + t * y for x, y in zip(dense[i], dense[j])]
    return SparseMatrix.from_dense(dense, m)


def full_rank_square(n: int, density: float = 0.4, rng: random.Random | None = None,
                     max_tries: int = 1000) -> SparseMatrix:
    from .reference import rank_dense

    rng = rng or random.Random()
    for _ in range(max_tries):
        a = random_sparse(n, n, density, rng=rng)
        if rank_dense(a) == n:
            return a
    raise RuntimeError("could not draw a full-rank matrix")


def corpus(count: int = 200, seed: int = 2012, max_dim: int = 12, density: float = 0.3) -> list[SparseMatrix]:
    """Mixed corpus: square, rectangular and deliberately rank-deficient matrices.

    The first 25 are forced rank-deficient, the next 15 strictly rectangular.
    """
    rng = random.Random(seed)
    out = []
    for idx in range(count):
        if idx < 25:
            n = rng.randint(3, max_dim)
            out.append(rank_deficient(n, rng.randint(2, max_dim), density, rng))
        elif idx < 40:
            n = rng.randint(1, max_dim)
            m = rng.choice([x for x in range(1, max_dim + 1) if x != n])
            out.append(random_sparse(n, m, density, rng=rng))
        else:
            out.append(random_sparse(rng.randint(0, max_dim), rng.randint(0, max_dim), density, rng=rng))
    return out
