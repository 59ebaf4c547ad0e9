"""Assembly and checking of the LUP factorization ``Pi A = L U``."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .sparsemat import SparseMatrix, SparseRow, write_sms


class SingularMatrixError(ArithmeticError):
    pass


class IntegrityError(RuntimeError):
    pass


@dataclass
class LUPResult:
    """``perm[i]`` is the position in ``Pi A`` of original row ``i``."""

    U: SparseMatrix
    L: SparseMatrix
    perm: list[int]

    @property
    def n(self) -> int:
        return len(self.perm)

    def inverse_perm(self) -> list[int]:
        inv = [0] * len(self.perm)
        for i, c in enumerate(self.perm):
            inv[c] = i
        return inv

    def permutation_matrix(self) -> list[list[int]]:
        n = self.n
        out = [[0] * n for _ in range(n)]
        for i, c in enumerate(self.perm):
            out[c][i] = 1
        return out

    def write(self, stem: str | Path) -> tuple[Path, Path, Path]:
        """Write ``<stem>.L.sms``, ``<stem>.U.sms`` and ``<stem>.perm``."""
        stem = Path(stem)
        paths = (stem.with_name(stem.name + ".L.sms"),
                 stem.with_name(stem.name + ".U.sms"),
                 stem.with_name(stem.name + ".perm"))
        with open(paths[0], "w") as f:
            write_sms(self.L, f)
        with open(paths[1], "w") as f:
            write_sms(self.U, f)
        with open(paths[2], "w") as f:
            f.writelines(f"{c}\n" for c in self.perm)
        return paths


def read_perm(path: str | Path) -> list[int]:
    with open(path) as f:
        return [int(line) for line in f if line.strip()]


def assemble(triples: Sequence, n: int) -> LUPResult:
    """Build the factors from per-column ``(u_c, i_c, l_c)`` (``None`` = no pivot)."""
    if len(triples) != n:
        raise ValueError(f"expected {n} triples, got {len(triples)}")
    missing = [c for c, t in enumerate(triples) if t is None]
    if missing:
        raise SingularMatrixError(f"no pivot in column(s) {missing[:10]}")
    perm = [-1] * n
    for c, (_, i, _) in enumerate(triples):
        if not 0 <= i < n or perm[i] != -1:
            raise IntegrityError(f"row index {i} is not a valid, unused original index")
        perm[i] = c
    urows = []
    lrows = []
    for c, (u, i, l) in enumerate(triples):
        if u.start != c:
            raise IntegrityError(f"U row {c} starts at column {u.start}")
        urows.append(u)
        pairs = sorted((perm[j], v) for j, v in zip(l.cols, l.vals))
        row = SparseRow(n, [j for j, _ in pairs], [v for _, v in pairs])
        if not row.cols or row.cols[-1] != c or row.vals[-1] != 1:
            raise IntegrityError(f"L row {c} is not unit lower triangular: {row!r}")
        lrows.append(row)
    return LUPResult(SparseMatrix(n, n, urows), SparseMatrix(n, n, lrows), perm)


def _lu_row(res: LUPResult, c: int) -> dict[int, object]:
    acc: dict[int, object] = {}
    lrow = res.L.rows[c]
    for k, lv in zip(lrow.cols, lrow.vals):
        urow = res.U.rows[k]
        for j, uv in zip(urow.cols, urow.vals):
            acc[j] = acc.get(j, 0) + lv * uv
    return acc


def residual(a: SparseMatrix, res: LUPResult) -> float:
    """Largest ``|(Pi A - L U)[i][j]|``."""
    inv = res.inverse_perm()
    worst = 0.0
    for c in range(res.n):
        lu = _lu_row(res, c)
        pa = a.rows[inv[c]].to_dict()
        for j in set(lu) | set(pa):
            worst = max(worst, abs(float(pa.get(j, 0) - lu.get(j, 0))))
    return worst


def verify(a: SparseMatrix, res: LUPResult, exact: bool | None = None):
    """Exact: ``True`` iff ``Pi A == L U`` entrywise.  Float: the max residual.

    ``exact=None`` infers the mode from the factor entries.
    """
    if a.n != res.n or a.m != res.n:
        raise ValueError("dimension mismatch")
    if exact is None:
        exact = not any(isinstance(v, float)
                        for m in (res.L, res.U) for r in m.rows for v in r.vals)
    if not exact:
        return residual(a, res)
    inv = res.inverse_perm()
    for c in range(res.n):
        lu = {j: v for j, v in _lu_row(res, c).items() if v != 0}
        if lu != a.rows[inv[c]].to_dict():
            return False
    # L unit lower / U upper, as the factorization claims
    for c in range(res.n):
        lr, ur = res.L.rows[c], res.U.rows[c]
        if not lr.cols or lr.cols[-1] != c or lr.vals[-1] != 1:
            return False
        if not ur.cols or ur.cols[0] != c:
            return False
    return True
