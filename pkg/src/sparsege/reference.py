"""Dense exact oracles used by the tests: rank by full-pivoting elimination,
matrix product and row permutation.  Deliberately naive; inputs are capped at
64x64.
"""

from __future__ import annotations

from fractions import Fraction

MAX_DIM = 64


class DenseMatrix:
    __slots__ = ("n", "m", "data")

    def __init__(self, data, m: int | None = None):
        self.data = [[Fraction(v) for v in row] for row in data]
        self.n = len(self.data)
        self.m = m if m is not None else (len(self.data[0]) if self.data else 0)
        if any(len(row) != self.m for row in self.data):
            raise ValueError("ragged rows")

    @classmethod
    def from_sparse(cls, a) -> "DenseMatrix":
        return cls(a.to_dense(), a.m)

    def transpose(self) -> "DenseMatrix":
        return DenseMatrix([[self.data[i][j] for i in range(self.n)] for j in range(self.m)], self.n)

    def __eq__(self, other):
        return isinstance(other, DenseMatrix) and (self.n, self.m, self.data) == (other.n, other.m, other.data)

    def __repr__(self):
        return f"DenseMatrix({[[str(v) for v in r] for r in self.data]})"


def _check_cap(a: DenseMatrix):
    if a.n > MAX_DIM or a.m > MAX_DIM:
        raise ValueError(f"oracle limited to {MAX_DIM}x{MAX_DIM}, got {a.n}x{a.m}")


def rank_dense(a) -> int:
    if not isinstance(a, DenseMatrix):
        a = DenseMatrix.from_sparse(a) if hasattr(a, "rows") else DenseMatrix(a)
    _check_cap(a)
    rows = [list(r) for r in a.data]
    n, m = a.n, a.m
    rank = 0
    cols = list(range(m))
    for k in range(min(n, m)):
        # full pivoting: largest |entry| in the trailing block
        best = None
        for i in range(k, n):
            for jj in range(k, m):
                v = abs(rows[i][cols[jj]])
                if v and (best is None or v > best[0]):
                    best = (v, i, jj)
        if best is None:
            break
        _, i, jj = best
        rows[k], rows[i] = rows[i], rows[k]
        cols[k], cols[jj] = cols[jj], cols[k]
        p = rows[k][cols[k]]
        for i in range(k + 1, n):
            f = rows[i][cols[k]] / p
            if f:
                for jj in range(k, m):
                    rows[i][cols[jj]] -= f * rows[k][cols[jj]]
        rank += 1
    return rank


def matmul(a: DenseMatrix, b: DenseMatrix) -> DenseMatrix:
    if a.m != b.n:
        raise ValueError(f"cannot multiply {a.n}x{a.m} by {b.n}x{b.m}")
    _check_cap(a)
    _check_cap(b)
    return DenseMatrix(
        [[sum((a.data[i][k] * b.data[k][j] for k in range(a.m)), Fraction(0)) for j in range(b.m)]
         for i in range(a.n)],
        b.m,
    )


def permute_rows(a: DenseMatrix, perm: list[int]) -> DenseMatrix:
    """Row ``i`` of ``a`` moves to position ``perm[i]``."""
    if sorted(perm) != list(range(a.n)):
        raise ValueError("not a permutation of the row indices")
    out = [None] * a.n
    for i, c in enumerate(perm):
        out[c] = a.data[i]
    return DenseMatrix(out, a.m)


def stack(a: DenseMatrix, b: DenseMatrix) -> DenseMatrix:
    if a.m != b.m:
        raise ValueError("column counts differ")
    return DenseMatrix(a.data + b.data, a.m)
