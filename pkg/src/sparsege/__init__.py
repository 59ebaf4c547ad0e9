"""Sparse exact Gaussian elimination by per-column processing units."""

from .kernels import BACKEND
from .lup import LUPResult, SingularMatrixError, assemble, verify
from .pu import (Message, PivotStrategy, ProcessingUnit, ProtocolError, Tag, Triple, Variant,
                 select_pivot)
from .ring import FLOAT64, INTEGER, RATIONAL, Domain, Kind, is_zero
from .sched import DeadlockError, RunStats, StripeMap, run_parallel, run_sequential
from .sparsemat import (SparseMatrix, SparseRow, is_block_echelon, is_row_echelon, read_sms,
                        start_column, write_sms)


def rank(a: SparseMatrix, d: Domain = INTEGER, strategy: PivotStrategy | None = None,
         workers: int = 1, width: int = 1) -> int:
    if workers == 1:
        return run_sequential(a, Variant.RANK, strategy, d)
    return run_parallel(a, Variant.RANK, strategy, d, StripeMap(width, workers, a.m))[0]


def echelon(a: SparseMatrix, d: Domain = INTEGER, strategy: PivotStrategy | None = None) -> SparseMatrix:
    return run_sequential(a, Variant.ECHELON, strategy, d)


def factor_lup(a: SparseMatrix, d: Domain = RATIONAL, strategy: PivotStrategy | None = None) -> LUPResult:
    return run_sequential(a, Variant.LUP, strategy, d)


__all__ = [
    "BACKEND", "Domain", "Kind", "INTEGER", "RATIONAL", "FLOAT64", "is_zero",
    "SparseRow", "SparseMatrix", "start_column", "is_block_echelon", "is_row_echelon",
    "read_sms", "write_sms", "Message", "Tag", "Triple", "Variant", "PivotStrategy",
    "ProcessingUnit", "ProtocolError", "select_pivot", "StripeMap", "RunStats",
    "DeadlockError", "run_sequential", "run_parallel", "LUPResult", "SingularMatrixError",
    "assemble", "verify", "rank", "echelon", "factor_lup",
]
