"""Coefficient domains and the row elimination kernels."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import kernels
from .sparsemat import SparseRow

DEFAULT_EPSILON = 1e-10


class DivisionUnavailableError(TypeError):
    """The field kernel was asked to divide in the integer domain."""


class Kind(enum.Enum):
    INTEGER = "int"
    RATIONAL = "rat"
    FLOAT64 = "f64"


@dataclass(frozen=True)
class Domain:
    """Coefficient domain.

    ``epsilon`` is the absolute compare-to-zero threshold and only applies to
    ``FLOAT64``.  ``naive_ff`` selects the ungcd'd fraction-free combination
    ``u[c]*r - r[c]*u``; ``strip_content`` divides each integer result row by
    the gcd of its entries.
    """

    kind: Kind
    epsilon: float = DEFAULT_EPSILON
    naive_ff: bool = False
    strip_content: bool = False

    def __post_init__(self):
        if self.kind is Kind.FLOAT64 and not self.epsilon > 0:
            raise ValueError("Float64 domain needs epsilon > 0")

    @property
    def exact(self) -> bool:
        return self.kind is not Kind.FLOAT64

    @property
    def is_field(self) -> bool:
        return self.kind is not Kind.INTEGER

    def convert(self, v):
        if self.kind is Kind.INTEGER:
            if isinstance(v, Fraction):
                if v.denominator != 1:
                    raise ValueError(f"{v} is not an integer")
                return v.numerator
            if isinstance(v, float):
                if not v.is_integer():
                    raise ValueError(f"{v} is not an integer")
                return int(v)
            return int(v)
        if self.kind is Kind.RATIONAL:
            return Fraction(v)
        return float(v)

    def convert_row(self, r: SparseRow) -> SparseRow:
        vals = [self.convert(v) for v in r.vals]
        if self.kind is Kind.FLOAT64:
            keep = [k for k, v in enumerate(vals) if abs(v) > self.epsilon]
            return SparseRow(r.width, [r.cols[k] for k in keep], [vals[k] for k in keep])
        return SparseRow(r.width, list(r.cols), vals)

    def as_field(self) -> "Domain":
        """The domain used where division is required (integers -> rationals)."""
        if self.kind is Kind.INTEGER:
            return Domain(Kind.RATIONAL)
        return self

    @property
    def sms_kind(self) -> str:
        return self.kind.value


INTEGER = Domain(Kind.INTEGER)
RATIONAL = Domain(Kind.RATIONAL)
FLOAT64 = Domain(Kind.FLOAT64)


def domain_from_name(name: str, epsilon: float = DEFAULT_EPSILON) -> Domain:
    return Domain(Kind(name), epsilon=epsilon)


def is_zero(v, d: Domain) -> bool:
    if d.kind is Kind.FLOAT64:
        return abs(v) <= d.epsilon
    return v == 0


def _check_operands(r: SparseRow, u: SparseRow, c: int | None) -> int:
    if not u.cols:
        raise ValueError("pivot row is null")
    if c is None:
        c = u.cols[0]
    if u.cols[0] != c or not r.cols or r.cols[0] != c:
        raise ValueError(f"rows must both start at column {c}")
    return c


def eliminate_field(r: SparseRow, u: SparseRow, d: Domain, c: int | None = None) -> SparseRow:
    """``r - (r[c]/u[c]) * u`` with all columns ``<= c`` cleared."""
    if d.kind is Kind.INTEGER:
        raise DivisionUnavailableError("integer domain: use eliminate_fraction_free")
    _check_operands(r, u, c)
    alpha = r.vals[0] / u.vals[0]
    return _axpy(r, u, alpha, d)


def _axpy(r: SparseRow, u: SparseRow, alpha, d: Domain) -> SparseRow:
    # both operands start at the same column; position 0 is skipped
    if d.kind is Kind.FLOAT64:
        cols, vals = kernels.lincomb_f64(r.cols, r.vals, 1, u.cols, u.vals, 1, 1.0, -alpha, d.epsilon)
    else:
        cols, vals = kernels.lincomb(r.cols, r.vals, 1, u.cols, u.vals, 1, 1, -alpha)
    return SparseRow(r.width, cols, vals)


def eliminate_fraction_free(r: SparseRow, u: SparseRow, c: int | None = None, *,
                            naive: bool = False, strip_content: bool = False) -> SparseRow:
    """Integer-preserving elimination ``(u[c]/g)*r - (r[c]/g)*u``, ``g = gcd(u[c], r[c])``.

    With ``naive=True`` the gcd is not taken (``g = 1``).
    """
    _check_operands(r, u, c)
    uc = u.vals[0]
    rc = r.vals[0]
    if naive:
        a, b = uc, -rc
    else:
        g = gcd(uc, rc)
        a, b = uc // g, -(rc // g)
    cols, vals = kernels.lincomb(r.cols, r.vals, 1, u.cols, u.vals, 1, a, b)
    if strip_content and vals:
        content = 0
        for v in vals:
            content = gcd(content, v)
            if content == 1:
                break
        if content > 1:
            vals = [v // content for v in vals]
    return SparseRow(r.width, cols, vals)


def eliminate(r: SparseRow, u: SparseRow, d: Domain) -> SparseRow:
    """Domain dispatch: fraction-free for integers, field kernel otherwise."""
    if d.kind is Kind.INTEGER:
        return eliminate_fraction_free(r, u, naive=d.naive_ff, strip_content=d.strip_content)
    return eliminate_field(r, u, d)
