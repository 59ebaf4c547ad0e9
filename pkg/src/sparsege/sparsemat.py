"""Sparse rows and matrices, echelon-form predicates, and SMS file I/O.

SMS grammar, as read and written here::

    n m M          header: row count, column count, literal "M"
    i j v          one line per nonzero entry, 1-based indices
    0 0 0          terminator

Values are integers, ``p/q`` rationals or decimal floats depending on the
coefficient domain.  Comments and blank lines are rejected.
"""

from __future__ import annotations

import io
from bisect import bisect_left
from fractions import Fraction
from typing import IO, Iterable, Iterator, Sequence


class SmsParseError(ValueError):
    """Malformed SMS input; ``lineno`` is 1-based."""

    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


class DimensionError(ValueError):
    pass


class SparseRow:
    """Sorted sparse coefficient sequence of a row of width ``width``.

    ``cols`` and ``vals`` are parallel lists, strictly increasing in column
    and free of zeros.  Treat instances as immutable: rows are shared between
    processing units and never modified after construction.
    """

    __slots__ = ("width", "cols", "vals")

    def __init__(self, width: int, cols: list[int] | None = None, vals: list | None = None):
        self.width = width
        self.cols = cols if cols is not None else []
        self.vals = vals if vals is not None else []

    @classmethod
    def from_dict(cls, width: int, entries: dict[int, object]) -> "SparseRow":
        cols = sorted(j for j, v in entries.items() if v != 0)
        for j in cols:
            if not 0 <= j < width:
                raise DimensionError(f"column {j} out of range for width {width}")
        return cls(width, cols, [entries[j] for j in cols])

    @classmethod
    def from_dense(cls, values: Sequence) -> "SparseRow":
        cols = [j for j, v in enumerate(values) if v != 0]
        return cls(len(values), cols, [values[j] for j in cols])

    @property
    def start(self) -> int:
        """Column of the first nonzero entry; ``width`` for the null row."""
        return self.cols[0] if self.cols else self.width

    @property
    def lead(self):
        return self.vals[0]

    @property
    def nnz(self) -> int:
        return len(self.cols)

    def is_null(self) -> bool:
        return not self.cols

    def __getitem__(self, j: int):
        k = bisect_left(self.cols, j)
        if k < len(self.cols) and self.cols[k] == j:
            return self.vals[k]
        return 0

    def items(self) -> Iterator[tuple[int, object]]:
        return zip(self.cols, self.vals)

    def to_dict(self) -> dict[int, object]:
        return dict(zip(self.cols, self.vals))

    def to_dense(self) -> list:
        out = [0] * self.width
        for j, v in zip(self.cols, self.vals):
            out[j] = v
        return out

    def map(self, fn) -> "SparseRow":
        return SparseRow(self.width, list(self.cols), [fn(v) for v in self.vals])

    def __eq__(self, other):
        if not isinstance(other, SparseRow):
            return NotImplemented
        return self.width == other.width and self.cols == other.cols and self.vals == other.vals

    def __hash__(self):
        return hash((self.width, tuple(self.cols), tuple(self.vals)))

    def __repr__(self):
        body = ", ".join(f"{j}: {v}" for j, v in zip(self.cols, self.vals))
        return f"SparseRow({self.width}, {{{body}}})"


def start_column(r: SparseRow) -> int:
    return r.start


class SparseMatrix:
    """``n x m`` matrix stored as a list of :class:`SparseRow`."""

    __slots__ = ("n", "m", "rows")

    def __init__(self, n: int, m: int, rows: list[SparseRow] | None = None):
        if n < 0 or m < 0:
            raise DimensionError(f"negative dimensions {n}x{m}")
        if rows is None:
            null = SparseRow(m)
            rows = [null] * n
        if len(rows) != n:
            raise DimensionError(f"expected {n} rows, got {len(rows)}")
        for r in rows:
            if r.width != m:
                raise DimensionError(f"row width {r.width} != {m}")
        self.n = n
        self.m = m
        self.rows = rows

    @classmethod
    def from_dense(cls, data: Sequence[Sequence], m: int | None = None) -> "SparseMatrix":
        rows = [SparseRow.from_dense(list(r)) for r in data]
        if m is None:
            m = rows[0].width if rows else 0
        return cls(len(rows), m, rows)

    @classmethod
    def from_entries(cls, n: int, m: int, entries: Iterable[tuple[int, int, object]]) -> "SparseMatrix":
        """Build from 0-based ``(i, j, v)`` triples; duplicates are an error."""
        buckets: dict[int, dict[int, object]] = {}
        for i, j, v in entries:
            if not (0 <= i < n and 0 <= j < m):
                raise DimensionError(f"entry ({i}, {j}) outside {n}x{m}")
            row = buckets.setdefault(i, {})
            if j in row:
                raise ValueError(f"duplicate entry ({i}, {j})")
            row[j] = v
        null = SparseRow(m)
        rows = [SparseRow.from_dict(m, buckets[i]) if i in buckets else null for i in range(n)]
        return cls(n, m, rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.n, self.m

    @property
    def nnz(self) -> int:
        return sum(r.nnz for r in self.rows)

    def to_dense(self) -> list[list]:
        return [r.to_dense() for r in self.rows]

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix.from_entries(
            self.m, self.n, ((j, i, v) for i, r in enumerate(self.rows) for j, v in r.items())
        )

    def map(self, fn) -> "SparseMatrix":
        return SparseMatrix(self.n, self.m, [r.map(fn) for r in self.rows])

    def start_columns(self) -> list[int]:
        return [r.start for r in self.rows]

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.n == other.n and self.m == other.m and self.rows == other.rows

    def __repr__(self):
        return f"SparseMatrix({self.n}x{self.m}, nnz={self.nnz})"


def is_block_echelon(a: SparseMatrix) -> bool:
    z = a.start_columns()
    return all(z[i] >= z[i - 1] for i in range(1, len(z)))


def is_row_echelon(a: SparseMatrix) -> bool:
    z = a.start_columns()
    return all(z[i] > z[i - 1] or z[i] == a.m for i in range(1, len(z)))


def block_echelon_order(a: SparseMatrix) -> list[int]:
    """Row permutation (stable) that puts ``a`` in block echelon form."""
    return sorted(range(a.n), key=lambda i: a.rows[i].start)


# -- SMS I/O ------------------------------------------------------------------

def _parse_int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise SmsParseError(lineno, f"expected integer, got {tok!r}") from None


def _value_parser(kind: str):
    if kind == "int":
        def parse(tok):
            return int(tok)
    elif kind == "rat":
        def parse(tok):
            return Fraction(tok)
    elif kind == "f64":
        def parse(tok):
            return float(tok)
    else:
        raise ValueError(f"unknown value kind {kind!r}")
    return parse


class SmsReader:
    """Streaming SMS reader.

    The header is parsed on construction; :meth:`entries` then yields
    0-based ``(i, j, v)`` triples one line at a time, so arbitrarily large
    files can be consumed without materializing the matrix.
    """

    def __init__(self, stream: IO, kind: str = "int"):
        if isinstance(stream, (bytes, bytearray)):
            stream = io.StringIO(stream.decode())
        elif isinstance(stream, io.BufferedIOBase) or "b" in getattr(stream, "mode", ""):
            stream = io.TextIOWrapper(stream, encoding="ascii")
        self._stream = stream
        self._parse_value = _value_parser(kind)
        self._lineno = 1
        header = stream.readline()
        if not header:
            raise SmsParseError(1, "empty input")
        toks = header.split()
        if len(toks) != 3 or toks[2] != "M":
            raise SmsParseError(1, f"bad header {header.strip()!r}, expected 'n m M'")
        self.n = _parse_int(toks[0], 1)
        self.m = _parse_int(toks[1], 1)
        if self.n < 0 or self.m < 0:
            raise SmsParseError(1, "negative dimensions")

    @property
    def shape(self) -> tuple[int, int]:
        return self.n, self.m

    def entries(self) -> Iterator[tuple[int, int, object]]:
        n, m = self.n, self.m
        parse = self._parse_value
        for line in self._stream:
            self._lineno += 1
            lineno = self._lineno
            toks = line.split()
            if len(toks) != 3:
                raise SmsParseError(lineno, f"expected 'i j v', got {line.strip()!r}")
            i = _parse_int(toks[0], lineno)
            j = _parse_int(toks[1], lineno)
            if i == 0 and j == 0:
                if toks[2] != "0":
                    raise SmsParseError(lineno, "terminator must be '0 0 0'")
                self._check_trailer()
                return
            try:
                v = parse(toks[2])
            except (ValueError, ZeroDivisionError):
                raise SmsParseError(lineno, f"bad value {toks[2]!r}") from None
            if not (1 <= i <= n and 1 <= j <= m):
                raise DimensionError(f"line {lineno}: entry ({i}, {j}) outside {n}x{m}")
            if v != 0:
                yield i - 1, j - 1, v
        raise SmsParseError(self._lineno + 1, "missing '0 0 0' terminator")

    def _check_trailer(self):
        for line in self._stream:
            self._lineno += 1
            if line.strip():
                raise SmsParseError(self._lineno, "content after terminator")

    def rows(self) -> Iterator[tuple[int, SparseRow]]:
        """Yield ``(i, row)`` for each nonempty row of a row-sorted file.

        Entries must be grouped by row in increasing row order (the usual
        layout); otherwise a :class:`SmsParseError` is raised.
        """
        current = -1
        buf: dict[int, object] = {}
        for i, j, v in self.entries():
            if i != current:
                if i < current:
                    raise SmsParseError(self._lineno, "entries not sorted by row")
                if buf:
                    yield current, SparseRow.from_dict(self.m, buf)
                current, buf = i, {}
            if j in buf:
                raise SmsParseError(self._lineno, f"duplicate entry ({i + 1}, {j + 1})")
            buf[j] = v
        if buf:
            yield current, SparseRow.from_dict(self.m, buf)


def read_sms(stream: IO, kind: str = "int") -> SparseMatrix:
    """Read a whole SMS file into a :class:`SparseMatrix`."""
    reader = SmsReader(stream, kind)
    n, m = reader.shape
    buckets: dict[int, dict[int, object]] = {}
    for i, j, v in reader.entries():
        row = buckets.setdefault(i, {})
        if j in row:
            raise SmsParseError(reader._lineno, f"duplicate entry ({i + 1}, {j + 1})")
        row[j] = v
    null = SparseRow(m)
    rows = [SparseRow.from_dict(m, buckets[i]) if i in buckets else null for i in range(n)]
    return SparseMatrix(n, m, rows)


def format_value(v) -> str:
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def write_sms(a: SparseMatrix, stream: IO) -> None:
    stream.write(f"{a.n} {a.m} M\n")
    for i, r in enumerate(a.rows, start=1):
        for j, v in zip(r.cols, r.vals):
            stream.write(f"{i} {j + 1} {format_value(v)}\n")
    stream.write("0 0 0\n")


def dumps_sms(a: SparseMatrix) -> str:
    buf = io.StringIO()
    write_sms(a, buf)
    return buf.getvalue()


def loads_sms(text: str, kind: str = "int") -> SparseMatrix:
    return read_sms(io.StringIO(text), kind)
