"""Per-column processing units and pivot selection.

A :class:`ProcessingUnit` owns column ``c``: every row it holds starts at
``c``.  Each :meth:`ProcessingUnit.step` picks a pivot, eliminates the rest
of its inbox against it and returns the resulting messages, each addressed to
the column the new row starts at.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from . import ring
from .ring import Domain
from .sparsemat import SparseRow

MASTER = -1


class ProtocolError(RuntimeError):
    """A message arrived that the End-last / start-column contract forbids."""


class Tag(enum.Enum):
    ROW = "Row"
    ROW_TRIPLE = "RowTriple"
    END = "End"


class Variant(enum.Enum):
    ECHELON = "echelon"
    RANK = "rank"
    LUP = "lup"


class State(enum.Enum):
    RUNNING = "running"
    DONE = "done"


@dataclass(slots=True)
class Triple:
    """Working row ``r`` of original index ``h`` with its L-row ``s`` (width n)."""

    r: SparseRow
    h: int
    s: SparseRow


@dataclass(frozen=True, slots=True)
class Message:
    tag: Tag
    payload: object = None
    sender: int = MASTER

    @classmethod
    def row(cls, r: SparseRow, sender: int = MASTER) -> "Message":
        return cls(Tag.ROW, r, sender)

    @classmethod
    def triple(cls, t: Triple, sender: int = MASTER) -> "Message":
        return cls(Tag.ROW_TRIPLE, t, sender)

    @classmethod
    def end(cls, sender: int = MASTER) -> "Message":
        return cls(Tag.END, None, sender)

    @property
    def start(self) -> int:
        if self.tag is Tag.ROW:
            return self.payload.start
        if self.tag is Tag.ROW_TRIPLE:
            return self.payload.r.start
        raise ValueError("End carries no row")


class PivotKind(enum.Enum):
    FIRST_ARRIVAL = "first"
    SPARSEST = "sparsest"
    THRESHOLD = "threshold"
    PARTIAL = "partial"


@dataclass(frozen=True)
class PivotStrategy:
    kind: PivotKind
    gamma: float = 1.0

    def __post_init__(self):
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError(f"gamma must lie in [0, 1], got {self.gamma}")

    @classmethod
    def first_arrival(cls):
        return cls(PivotKind.FIRST_ARRIVAL)

    @classmethod
    def sparsest(cls):
        return cls(PivotKind.SPARSEST)

    @classmethod
    def threshold(cls, gamma: float = 0.5):
        return cls(PivotKind.THRESHOLD, gamma)

    @classmethod
    def partial(cls):
        return cls(PivotKind.PARTIAL, 1.0)

    @property
    def effective_gamma(self) -> float:
        return 1.0 if self.kind is PivotKind.PARTIAL else self.gamma

    def __str__(self):
        if self.kind is PivotKind.THRESHOLD:
            return f"threshold({self.gamma})"
        return self.kind.value


def default_strategy(d: Domain) -> PivotStrategy:
    return PivotStrategy.sparsest() if d.exact else PivotStrategy.threshold(0.5)


def select_pivot(candidates: list[SparseRow], strategy: PivotStrategy, exact: bool = True) -> int:
    """Index into ``candidates`` (in arrival order) of the row to use as pivot.

    Ties are broken by nnz, then by |leading value| (smallest first for exact
    domains, largest first for floats), then by arrival order.
    """
    if not candidates:
        raise ValueError("no pivot candidates")
    if strategy.kind is PivotKind.FIRST_ARRIVAL or len(candidates) == 1:
        return 0

    sign = 1 if exact else -1

    def key(k):
        r = candidates[k]
        return (len(r.cols), sign * abs(r.vals[0]), k)

    eligible = range(len(candidates))
    if strategy.kind in (PivotKind.THRESHOLD, PivotKind.PARTIAL):
        gamma = strategy.effective_gamma
        if exact:
            gamma = Fraction(gamma)
        b = max(abs(r.vals[0]) for r in candidates)
        bound = gamma * b
        eligible = [k for k in eligible if abs(candidates[k].vals[0]) >= bound]
    return min(eligible, key=key)


def add_entry(s: SparseRow, j: int, v) -> SparseRow:
    """``s + v * e_j``."""
    cols, vals = s.cols, s.vals
    lo, hi = 0, len(cols)
    while lo < hi:
        mid = (lo + hi) // 2
        if cols[mid] < j:
            lo = mid + 1
        else:
            hi = mid
    if lo < len(cols) and cols[lo] == j:
        nv = vals[lo] + v
        if nv == 0:
            return SparseRow(s.width, cols[:lo] + cols[lo + 1:], vals[:lo] + vals[lo + 1:])
        return SparseRow(s.width, cols, vals[:lo] + [nv] + vals[lo + 1:])
    return SparseRow(s.width, cols[:lo] + [j] + cols[lo:], vals[:lo] + [v] + vals[lo:])


class ProcessingUnit:
    """State machine for column ``c`` of an ``m``-column matrix.

    In the LUP variant elimination is deferred until End has been received,
    so the pivot held when the first multiplier is recorded is final.
    """

    __slots__ = ("c", "m", "variant", "u", "queue", "state", "end_pending", "output",
                 "eliminations")

    def __init__(self, c: int, m: int, variant: Variant = Variant.ECHELON):
        self.c = c
        self.m = m
        self.variant = variant
        self.u = None
        self.queue: list = []
        self.state = State.RUNNING
        self.end_pending = False
        self.output = None
        self.eliminations = 0

    def __repr__(self):
        return (f"ProcessingUnit(c={self.c}, state={self.state.value}, "
                f"pivot={'set' if self.u is not None else 'nil'}, queued={len(self.queue)})")

    @property
    def running(self) -> bool:
        return self.state is State.RUNNING

    def has_work(self) -> bool:
        return self.running and (bool(self.queue) or self.end_pending)

    def receive(self, msg: Message) -> None:
        if self.state is State.DONE:
            raise ProtocolError(f"P[{self.c}] received {msg.tag.value} after Done")
        if msg.tag is Tag.END:
            self.end_pending = True
            return
        if self.end_pending:
            raise ProtocolError(
                f"P[{self.c}] received {msg.tag.value} from {msg.sender} after End")
        expected = Tag.ROW_TRIPLE if self.variant is Variant.LUP else Tag.ROW
        if msg.tag is not expected:
            raise ProtocolError(f"P[{self.c}] expects {expected.value}, got {msg.tag.value}")
        if msg.start != self.c:
            raise ProtocolError(f"P[{self.c}] received a row starting at column {msg.start}")
        self.queue.append(msg.payload)

    def _row(self, item) -> SparseRow:
        return item.r if self.variant is Variant.LUP else item

    def step(self, strategy: PivotStrategy, d: Domain, allow_end: bool = True) -> list[tuple[int, Message]]:
        """One pass of the main loop; returns ``(destination column, message)`` pairs.

        With ``allow_end=False`` a pending End is left pending; the parallel
        scheduler uses this until every Row this unit sent has been delivered.
        """
        if self.state is State.DONE:
            raise ProtocolError(f"P[{self.c}] stepped after Done")
        out: list[tuple[int, Message]] = []
        lup = self.variant is Variant.LUP
        if self.queue and not (lup and not self.end_pending):
            self._update_pivot(strategy, d)
            self._eliminate_queue(d, out)
        if self.end_pending and allow_end:
            self._finish(out)
        return out

    def _update_pivot(self, strategy: PivotStrategy, d: Domain) -> None:
        cands = self.queue if self.u is None else [self.u] + self.queue
        k = select_pivot([self._row(t) for t in cands], strategy, d.exact)
        if self.u is None:
            self.u = self.queue.pop(k)
        elif k > 0:
            new = self.queue.pop(k - 1)
            # the displaced pivot is the oldest row; it is eliminated first
            self.queue.insert(0, self.u)
            self.u = new

    def _eliminate_queue(self, d: Domain, out: list) -> None:
        u = self.u
        c = self.c
        if self.variant is Variant.LUP:
            fd = d.as_field()
            for t in self.queue:
                lead = t.r.vals[0]
                alpha = (Fraction(lead) if fd.exact else lead) / u.r.vals[0]
                r2 = ring._axpy(t.r, u.r, alpha, fd)
                self.eliminations += 1
                if r2.cols:
                    s2 = add_entry(t.s, u.h, alpha)
                    out.append((r2.cols[0], Message.triple(Triple(r2, t.h, s2), c)))
        else:
            for r in self.queue:
                r2 = ring.eliminate(r, u, d)
                self.eliminations += 1
                if r2.cols:
                    out.append((r2.cols[0], Message.row(r2, c)))
        self.queue.clear()

    def _finish(self, out: list) -> None:
        if self.variant is Variant.RANK:
            self.output = 0 if self.u is None else 1
        else:
            self.output = self.u
        if self.c < self.m - 1:
            out.append((self.c + 1, Message.end(self.c)))
        self.state = State.DONE
        self.end_pending = False
