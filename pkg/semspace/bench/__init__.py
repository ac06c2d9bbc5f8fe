"""
Latency benchmark for write, read and take.

Each configuration cell (payload size x thread count x floor) runs a warmup
and then ``reps`` timed operations spread across worker threads. Workloads are
derived from the seed only, so two runs with the same seed issue the same
operations; timings naturally vary. Absolute times are never asserted,
:func:`check_properties` only checks trends that survive hardware changes.
"""

import csv
import platform
import random
import sys
import threading
import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from logging import getLogger
from typing import Dict, List, Optional, Tuple

import numpy as np
import psutil

from ..similarity import matching_concepts
from ..space import DEFAULT_MAX_LEASE_MS, MetaModel, SemanticQuery

logger = getLogger("semspace.bench")

OPS = ("write", "read", "take")
CSV_HEADER = ("op", "size_bytes", "threads", "floor", "count", "mean_ms", "p50_ms", "p95_ms")

KB = 1024
MB = 1024 * KB
DESK_SIZES = (1 * KB, 64 * KB, 1 * MB, 8 * MB)
FULL_SIZES = (1 * KB, 64 * KB, 1 * MB, 8 * MB, 51 * MB)
DEFAULT_FLOORS = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0)
DEFAULT_ENTRIES = 3430

# median latency at the largest size may be at most this many times the
# median at the smallest
SIZE_FACTOR = 5.0
_TIMER_RESOLUTION_MS = 0.001


@dataclass(frozen=True)
class BenchConfig:
    op: str = "write"
    sizes: Tuple[int, ...] = (1 * KB,)
    threads: Tuple[int, ...] = (1,)
    floors: Tuple[float, ...] = DEFAULT_FLOORS
    reps: int = 100
    warmup: int = 10
    seed: int = 0
    entries: int = DEFAULT_ENTRIES
    out: Optional[str] = None
    model: MetaModel = MetaModel.RDFS
    concept: Optional[str] = None
    lease_ms: int = DEFAULT_MAX_LEASE_MS

    def __post_init__(self):
        if self.op not in OPS:
            raise ValueError("op must be one of {0}, got {1!r}".format(", ".join(OPS), self.op))
        if self.reps < 1:
            raise ValueError("reps must be at least 1")
        if self.warmup < 0:
            raise ValueError("warmup must not be negative")
        if not self.sizes or any(s < 1 for s in self.sizes):
            raise ValueError("sizes must be at least 1 byte")
        if not self.threads or any(t < 1 for t in self.threads):
            raise ValueError("thread counts must be at least 1")
        if any(not 0 <= f <= 1 for f in self.floors):
            raise ValueError("floors must lie in [0, 1]")
        if self.entries < 0:
            raise ValueError("entries must not be negative")
        object.__setattr__(self, "model", MetaModel.parse(self.model))


@dataclass
class BenchRow:
    op: str
    size_bytes: int
    threads: int
    floor: Optional[float]
    count: int
    mean_ms: float
    p50_ms: float
    p95_ms: float
    # results returned by the timed operations, entries put in place for the
    # cell and entries removed after timing; not part of the CSV
    results: int = field(default=0, compare=False)
    populated: int = field(default=0, compare=False)
    swept: int = field(default=0, compare=False)


@dataclass
class BenchReport:
    config: BenchConfig
    rows: List[BenchRow] = field(default_factory=list)
    environment: dict = field(default_factory=dict)
    query_concept: Optional[str] = None
    # concept counts written per payload size by the read bench
    populations: Dict[int, Counter] = field(default_factory=dict)


@dataclass(frozen=True)
class Verdict:
    name: str
    passed: bool
    detail: str

    def __str__(self):
        return "{0} {1}: {2}".format("PASS" if self.passed else "FAIL", self.name, self.detail)


def environment():
    return {
        "platform": platform.platform(),
        "python": sys.version.split()[0],
        "cpus": psutil.cpu_count(logical=True),
        "memory_bytes": psutil.virtual_memory().total,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }


def _rng(cfg, *cell):
    return random.Random(":".join(str(part) for part in (cfg.seed,) + cell))


def _timed(fn, ops, threads):
    """Run ``fn(op)`` for every op from ``threads`` workers; return latencies and results."""
    barrier = threading.Barrier(threads)

    def worker(chunk):
        barrier.wait()
        latencies, results = [], 0
        for op in chunk:
            start = time.perf_counter()
            out = fn(op)
            latencies.append((time.perf_counter() - start) * 1000.0)
            if out is not None:
                results += len(out)
        return latencies, results

    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(worker, ops[t::threads]) for t in range(threads)]
        outcomes = [f.result() for f in futures]
    latencies = [lat for lats, _ in outcomes for lat in lats]
    return latencies, sum(r for _, r in outcomes)


def _row(cfg, size, threads, floor, latencies, results, populated=0):
    values = np.asarray(latencies, dtype=float)
    p50, p95 = np.percentile(values, [50, 95])
    return BenchRow(cfg.op, size, threads, floor, len(latencies), float(values.mean()),
                    float(p50), float(p95), results, populated)


def _populate(cfg, space, concepts, payload, rng, count):
    written = []
    for _ in range(count):
        concept = rng.choice(concepts)
        space.write(payload, cfg.model, concept, cfg.lease_ms)
        written.append(concept)
    return written


def _sweep(cfg, space, written):
    return sum(len(space.take(cfg.model, concept)) for concept in dict.fromkeys(written))


def _bench_write(cfg, space, concepts, report):
    for size in cfg.sizes:
        for threads in cfg.threads:
            rng = _rng(cfg, "write", size, threads)
            payload = rng.randbytes(size)
            ops = [rng.choice(concepts) for _ in range(cfg.warmup + cfg.reps)]

            def op(concept):
                space.write(payload, cfg.model, concept, cfg.lease_ms)

            for concept in ops[:cfg.warmup]:
                op(concept)
            latencies, _ = _timed(op, ops[cfg.warmup:], threads)
            report.rows.append(_row(cfg, size, threads, None, latencies, 0))


def _bench_read(cfg, space, concepts, report):
    query_concept = report.query_concept
    for size in cfg.sizes:
        rng = _rng(cfg, "read", size)
        payload = rng.randbytes(size)
        written = _populate(cfg, space, concepts, payload, rng, cfg.entries)
        report.populations[size] = Counter(written)
        cells = []
        for floor in cfg.floors:
            for threads in cfg.threads:
                query = SemanticQuery(cfg.model, query_concept, floor)
                for _ in range(cfg.warmup):
                    space.read(query)
                latencies, results = _timed(lambda q: space.read(q), [query] * cfg.reps, threads)
                cells.append(_row(cfg, size, threads, floor, latencies, results, cfg.entries))
        # the next size is populated from scratch
        swept = _sweep(cfg, space, written)
        for row in cells:
            row.swept = swept
        report.rows.extend(cells)


def _bench_take(cfg, space, concepts, report):
    for size in cfg.sizes:
        for threads in cfg.threads:
            rng = _rng(cfg, "take", size, threads)
            payload = rng.randbytes(size)
            for _ in range(cfg.warmup):
                space.take(cfg.model, rng.choice(concepts))
            written = _populate(cfg, space, concepts, payload, rng, cfg.entries)
            order = list(dict.fromkeys(written))
            rng.shuffle(order)
            ops = [order[i % len(order)] for i in range(cfg.reps)] if order else [concepts[0]] * cfg.reps
            latencies, results = _timed(lambda c: space.take(cfg.model, c), ops, threads)
            row = _row(cfg, size, threads, None, latencies, results, len(written))
            # leave nothing behind for the next cell
            row.swept = _sweep(cfg, space, order)
            report.rows.append(row)


def run_bench(cfg, space):
    """
    Run the benchmark described by ``cfg`` against ``space``.

    The ontology for ``cfg.model`` must already be loaded. A failing
    operation aborts the run with the space's exception.
    """
    index = space.index(cfg.model)
    concepts = list(index.concepts)
    report = BenchReport(config=cfg, environment=environment())
    if cfg.op in ("read", "take"):
        report.query_concept = cfg.concept or _rng(cfg, "query").choice(concepts)
    logger.info("Running %s bench: sizes=%s threads=%s reps=%d seed=%d",
                cfg.op, cfg.sizes, cfg.threads, cfg.reps, cfg.seed)
    {"write": _bench_write, "read": _bench_read, "take": _bench_take}[cfg.op](
        cfg, space, concepts, report)
    if cfg.out:
        write_csv(report, cfg.out)
    return report


def _check_size_independence(rows):
    threads = min(r.threads for r in rows)
    by_size = sorted((r for r in rows if r.threads == threads), key=lambda r: r.size_bytes)
    if len(by_size) < 2:
        return None
    small, large = by_size[0], by_size[-1]
    limit = SIZE_FACTOR * max(small.p50_ms, _TIMER_RESOLUTION_MS)
    return Verdict(
        "size-independence", large.p50_ms <= limit,
        "median {0:.4f}ms at {1} bytes vs {2:.4f}ms at {3} bytes (limit {4:.4f}ms)".format(
            large.p50_ms, large.size_bytes, small.p50_ms, small.size_bytes, limit))


def _check_floor_monotonicity(report, rows, space):
    cfg = report.config
    index = space.index(cfg.model)
    problems = []
    for size, threads in sorted({(r.size_bytes, r.threads) for r in rows}):
        population = report.populations.get(size, Counter())
        cells = sorted((r for r in rows if (r.size_bytes, r.threads) == (size, threads)),
                       key=lambda r: r.floor)
        counts = [r.results // r.count for r in cells]
        for prev, cur, row in zip(counts, counts[1:], cells[1:]):
            if cur > prev:
                problems.append("{0} bytes: count rises to {1} at floor {2}".format(
                    size, cur, row.floor))
        for count, row in zip(counts, cells):
            matched = {m.concept for m in matching_concepts(index, report.query_concept, row.floor)}
            predicted = sum(population[c] for c in matched)
            if count != predicted:
                problems.append("{0} bytes, floor {1}: {2} results, predicted {3}".format(
                    size, row.floor, count, predicted))
    return Verdict("floor-monotonicity", not problems, "; ".join(problems) or "counts {0}".format(
        [r.results // r.count for r in sorted(rows, key=lambda r: (r.size_bytes, r.threads, r.floor))]))


def check_properties(report, space):
    """Evaluate the benchmark's qualitative properties; returns a list of verdicts."""
    verdicts = []
    write_rows = [r for r in report.rows if r.op == "write"]
    read_rows = [r for r in report.rows if r.op == "read"]
    take_rows = [r for r in report.rows if r.op == "take"]
    if write_rows:
        verdict = _check_size_independence(write_rows)
        if verdict is not None:
            verdicts.append(verdict)
    if read_rows:
        verdicts.append(_check_floor_monotonicity(report, read_rows, space))
    if take_rows:
        bad = [r for r in take_rows if r.results + r.swept != r.populated]
        verdicts.append(Verdict(
            "take-exclusivity", not bad,
            "; ".join(
                "{0} bytes x {1} threads took {2} + {3} swept of {4}".format(
                    r.size_bytes, r.threads, r.results, r.swept, r.populated)
                for r in (bad or take_rows))))
    stats = space.stats()
    balance = stats.total_writes - stats.taken_total - stats.expired_total
    verdicts.append(Verdict(
        "bookkeeping", balance == stats.live_entries,
        "writes {0} - taken {1} - expired {2} = {3}, live {4}".format(
            stats.total_writes, stats.taken_total, stats.expired_total, balance,
            stats.live_entries)))
    return verdicts


def write_csv(report, path):
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for row in report.rows:
            writer.writerow([
                row.op, row.size_bytes, row.threads,
                "" if row.floor is None else repr(float(row.floor)),
                row.count, repr(row.mean_ms), repr(row.p50_ms), repr(row.p95_ms),
            ])


def read_csv(path):
    """Parse a CSV written by :func:`write_csv` back into rows."""
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        if tuple(reader.fieldnames or ()) != CSV_HEADER:
            raise ValueError("unexpected CSV header {0!r}".format(reader.fieldnames))
        return [
            BenchRow(
                op=rec["op"],
                size_bytes=int(rec["size_bytes"]),
                threads=int(rec["threads"]),
                floor=float(rec["floor"]) if rec["floor"] else None,
                count=int(rec["count"]),
                mean_ms=float(rec["mean_ms"]),
                p50_ms=float(rec["p50_ms"]),
                p95_ms=float(rec["p95_ms"]),
            )
            for rec in reader
        ]


__all__ = [
    "BenchConfig", "BenchReport", "BenchRow", "CSV_HEADER", "DESK_SIZES",
    "FULL_SIZES", "Verdict", "check_properties", "read_csv", "run_bench",
    "write_csv",
]
