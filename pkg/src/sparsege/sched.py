"""Master procedure, sequential scheduler and the multi-worker scheduler.

Workers are threads standing in for message-passing ranks.  Each worker owns
the processing units of its column stripes (see :class:`StripeMap`) and has a
single inbound FIFO queue; envelopes carry a per-(sender, receiver) sequence
number so FIFO order can be checked on arrival.  A Row sent to another worker
is acknowledged by the receiver once it sits in the destination inbox, and a
unit only forwards End after all of its remote Rows have been acknowledged.
"""

from __future__ import annotations

import logging
import queue
import threading
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from . import lup as _lup
from .pu import (MASTER, Message, PivotStrategy, ProcessingUnit, ProtocolError, Tag, Triple,
                 Variant, default_strategy)
from .ring import INTEGER, Domain
from .sparsemat import SparseMatrix, SparseRow

log = logging.getLogger(__name__)

POLL_TIMEOUT = 0.05
DEFAULT_WATCHDOG = 30.0

_MSG = 0
_ACK = 1


class DeadlockError(RuntimeError):
    """A worker made no progress for longer than the watchdog allows."""


@dataclass(frozen=True)
class StripeMap:
    """Column-cyclic ownership: stripes of ``w`` columns dealt round-robin to ``p`` workers."""

    w: int
    p: int
    m: int

    def __post_init__(self):
        if self.w < 1 or self.p < 1:
            raise ValueError(f"need w >= 1 and p >= 1, got w={self.w}, p={self.p}")

    def owner(self, c: int) -> int:
        if not 0 <= c < self.m:
            raise IndexError(f"column {c} outside 0..{self.m - 1}")
        return (c // self.w) % self.p

    def columns(self, k: int) -> list[int]:
        return [c for c in range(self.m) if (c // self.w) % self.p == k]

    @property
    def n_stripes(self) -> int:
        return -(-self.m // self.w)

    def boundary_crossings(self) -> int:
        """Number of ``c`` with ``owner(c) != owner(c - 1)``: End hops between workers."""
        return sum(1 for c in range(1, self.m) if self.owner(c) != self.owner(c - 1))


def owner(c: int, sm: StripeMap) -> int:
    return sm.owner(c)


@dataclass
class WorkerStats:
    worker: int
    rows_sent: int = 0
    rows_received: int = 0
    eliminations: int = 0
    wait_polls: int = 0
    end_forwardings: int = 0
    wall_ms: float = 0.0


_COUNTERS = ("rows_sent", "rows_received", "eliminations", "wait_polls", "end_forwardings")


@dataclass
class RunStats:
    workers: list[WorkerStats]
    p: int = 1
    w: int = 1
    m: int = 0
    wall_ms: float = 0.0
    fifo_violations: int = 0
    end_last_violations: int = 0
    seeded: int = 0
    discarded: int = 0
    pivots: int = 0

    def totals(self) -> dict:
        out = {k: sum(getattr(ws, k) for ws in self.workers) for k in _COUNTERS}
        out["wall_ms"] = self.wall_ms
        return out

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "w": self.w,
            "m": self.m,
            "wall_ms": self.wall_ms,
            "fifo_violations": self.fifo_violations,
            "end_last_violations": self.end_last_violations,
            "seeded": self.seeded,
            "discarded": self.discarded,
            "pivots": self.pivots,
            "workers": [asdict(ws) for ws in self.workers],
            "totals": self.totals(),
        }


def _as_variant(v) -> Variant:
    return v if isinstance(v, Variant) else Variant(v)


def _seed_messages(a: SparseMatrix, variant: Variant, d: Domain):
    """Master seeding: each non-null row goes to the unit of its start column."""
    if variant is Variant.LUP:
        if a.n != a.m:
            raise ValueError(f"LUP needs a square matrix, got {a.n}x{a.m}")
        d = d.as_field()
        one = 1.0 if not d.exact else Fraction(1)
    for i, r in enumerate(a.rows):
        r = d.convert_row(r)
        if not r.cols:
            continue
        if variant is Variant.LUP:
            yield r.start, Message.triple(Triple(r, i, SparseRow(a.n, [i], [one])))
        else:
            yield r.start, Message.row(r)


def _collect(a: SparseMatrix, pus: list[ProcessingUnit], variant: Variant, d: Domain):
    if variant is Variant.RANK:
        return sum(pu.output for pu in pus)
    if variant is Variant.ECHELON:
        rows = [pu.output for pu in pus if pu.output is not None]
        return SparseMatrix(len(rows), a.m, rows)
    triples = [(pu.output.r, pu.output.h, pu.output.s) if pu.output is not None else None
               for pu in pus]
    return _lup.assemble(triples, a.n)


def _prepare(a, variant, strategy, d):
    variant = _as_variant(variant)
    if strategy is None:
        strategy = default_strategy(d)
    seeds = list(_seed_messages(a, variant, d))
    return variant, strategy, seeds


def run_sequential(a: SparseMatrix, variant=Variant.RANK, strategy: PivotStrategy | None = None,
                   d: Domain = INTEGER, stats: RunStats | None = None):
    """Single-threaded run; units are stepped in column order until all are Done.

    Returns an ``int`` (rank), a :class:`SparseMatrix` in row echelon form, or
    an :class:`~sparsege.lup.LUPResult`.  If ``stats`` is given it is filled
    in as a one-worker run.
    """
    t0 = time.perf_counter()
    variant, strategy, seeds = _prepare(a, variant, strategy, d)
    m = a.m
    pus = [ProcessingUnit(c, m, variant) for c in range(m)]
    ws = WorkerStats(0)
    for dest, msg in seeds:
        pus[dest].receive(msg)
    if m:
        pus[0].receive(Message.end(MASTER))
    discarded = 0
    running = m
    while running:
        for pu in pus:
            if not pu.has_work():
                continue
            before = pu.eliminations
            msgs = pu.step(strategy, d)
            made = pu.eliminations - before
            rows = sum(1 for _, msg in msgs if msg.tag is not Tag.END)
            discarded += made - rows
            ws.rows_sent += rows
            ws.rows_received += rows
            for dest, msg in msgs:
                pus[dest].receive(msg)
            if not pu.running:
                running -= 1
    ws.eliminations = sum(pu.eliminations for pu in pus)
    result = _collect(a, pus, variant, d)
    if stats is not None:
        ws.wall_ms = (time.perf_counter() - t0) * 1e3
        stats.workers = [ws]
        stats.p, stats.w, stats.m = 1, max(m, 1), m
        stats.wall_ms = ws.wall_ms
        stats.seeded = len(seeds)
        stats.discarded = discarded
        stats.pivots = sum(1 for pu in pus if pu.u is not None)
    return result


class _Worker(threading.Thread):
    def __init__(self, k, pus, sm, inboxes, strategy, d, abort, watchdog):
        super().__init__(name=f"worker-{k}", daemon=True)
        self.k = k
        self.pus = pus
        self.local = sm.columns(k)
        self.sm = sm
        self.inboxes = inboxes
        self.strategy = strategy
        self.d = d
        self.abort = abort
        self.watchdog = watchdog
        self.stats = WorkerStats(k)
        self.outstanding = {c: 0 for c in self.local}
        self.send_seq = [0] * sm.p
        self.recv_seq = [0] * sm.p
        self.fifo_violations = 0
        self.end_last_violations = 0
        self.discarded = 0
        self.error: BaseException | None = None

    def run(self):
        t0 = time.perf_counter()
        try:
            self._loop()
        except BaseException as e:  # surfaced by the master after join
            self.error = e
            self.abort.set()
        finally:
            self.stats.wall_ms = (time.perf_counter() - t0) * 1e3
            self.stats.eliminations = sum(self.pus[c].eliminations for c in self.local)

    def _loop(self):
        pus = self.pus
        running = list(self.local)
        last_progress = time.monotonic()
        while running:
            if self.abort.is_set():
                return
            progress = False
            for c in running:
                pu = pus[c]
                if not pu.has_work():
                    continue
                before = pu.eliminations
                msgs = pu.step(self.strategy, self.d, allow_end=False)
                if pu.eliminations != before:
                    progress = True
                    rows = sum(1 for _, msg in msgs if msg.tag is not Tag.END)
                    self.discarded += pu.eliminations - before - rows
                self._route(c, msgs)
                if pu.end_pending and self.outstanding[c] == 0:
                    self._route(c, pu.step(self.strategy, self.d, allow_end=True))
                    progress = True
            if progress:
                running = [c for c in running if pus[c].running]
                if not running:
                    break
            got = self._drain(block=not progress)
            now = time.monotonic()
            if progress or got:
                last_progress = now
            elif now - last_progress > self.watchdog:
                raise DeadlockError(
                    f"worker {self.k} idle for {self.watchdog}s; waiting on "
                    f"{[c for c in running]}, outstanding={ {c: n for c, n in self.outstanding.items() if n} }")

    def _send(self, dst: int, kind: int, a, b) -> None:
        seq = self.send_seq[dst]
        self.send_seq[dst] = seq + 1
        self.inboxes[dst].put((kind, self.k, seq, a, b))

    def _route(self, c: int, msgs) -> None:
        for dest, msg in msgs:
            dst = self.sm.owner(dest)
            is_row = msg.tag is not Tag.END
            if is_row:
                self.stats.rows_sent += 1
            if dst == self.k:
                self._deliver(dest, msg)
            else:
                self._send(dst, _MSG, dest, msg)
                if is_row:
                    self.outstanding[c] += 1
                else:
                    self.stats.end_forwardings += 1

    def _deliver(self, dest: int, msg: Message) -> None:
        pu = self.pus[dest]
        if msg.tag is not Tag.END:
            self.stats.rows_received += 1
            if pu.end_pending or not pu.running:
                self.end_last_violations += 1
                log.error("End-last violated at P[%d] by sender %d", dest, msg.sender)
                return
        pu.receive(msg)

    def _drain(self, block: bool) -> bool:
        inbox = self.inboxes[self.k]
        try:
            env = inbox.get(timeout=POLL_TIMEOUT) if block else inbox.get_nowait()
        except queue.Empty:
            if block:
                self.stats.wait_polls += 1
            return False
        while True:
            self._handle(env)
            try:
                env = inbox.get_nowait()
            except queue.Empty:
                return True

    def _handle(self, env) -> None:
        kind, src, seq, a, b = env
        if seq != self.recv_seq[src]:
            self.fifo_violations += 1
            log.error("FIFO violated on channel %d->%d: got seq %d, expected %d",
                      src, self.k, seq, self.recv_seq[src])
        self.recv_seq[src] = seq + 1
        if kind == _ACK:
            self.outstanding[a] -= 1
            return
        self._deliver(a, b)
        if b.tag is not Tag.END:
            self._send(src, _ACK, b.sender, None)


def run_parallel(a: SparseMatrix, variant=Variant.RANK, strategy: PivotStrategy | None = None,
                 d: Domain = INTEGER, sm: StripeMap | None = None, *,
                 watchdog: float = DEFAULT_WATCHDOG):
    """Run with ``sm.p`` worker threads; returns ``(result, RunStats)``.

    Raises :class:`DeadlockError` if the watchdog fires and
    :class:`~sparsege.pu.ProtocolError` if any FIFO or End-last violation was
    observed.
    """
    t0 = time.perf_counter()
    variant, strategy, seeds = _prepare(a, variant, strategy, d)
    m = a.m
    if sm is None:
        sm = StripeMap(1, 1, m)
    elif sm.m != m:
        sm = StripeMap(sm.w, sm.p, m)
    pus = [ProcessingUnit(c, m, variant) for c in range(m)]
    for dest, msg in seeds:
        pus[dest].receive(msg)
    # End is injected only once every seeded row sits in its inbox
    if m:
        pus[0].receive(Message.end(MASTER))

    inboxes = [queue.SimpleQueue() for _ in range(sm.p)]
    abort = threading.Event()
    workers = [_Worker(k, pus, sm, inboxes, strategy, d, abort, watchdog) for k in range(sm.p)]
    for wk in workers:
        wk.start()
    for wk in workers:
        wk.join()
    for wk in workers:
        if wk.error is not None:
            raise wk.error

    stats = RunStats(
        workers=[wk.stats for wk in workers],
        p=sm.p, w=sm.w, m=m,
        wall_ms=(time.perf_counter() - t0) * 1e3,
        fifo_violations=sum(wk.fifo_violations for wk in workers),
        end_last_violations=sum(wk.end_last_violations for wk in workers),
        seeded=len(seeds),
        discarded=sum(wk.discarded for wk in workers),
        pivots=sum(1 for pu in pus if pu.u is not None),
    )
    if stats.fifo_violations or stats.end_last_violations:
        raise ProtocolError(
            f"{stats.fifo_violations} FIFO and {stats.end_last_violations} End-last violations")

    if variant is Variant.RANK:
        # sum-reduce: per-worker partial sums, then across workers
        result = sum(sum(pus[c].output for c in wk.local) for wk in workers)
    else:
        result = _collect(a, pus, variant, d)
    return result, stats
