"""
The in-memory semantic space.

Entries are opaque payloads annotated with (model, concept) meta-information
and bounded by a lease. A per-model meta index links concepts to entry ids;
reads match by concept similarity, takes by exact concept. Every operation
runs under one lock, so the operation history is linearizable.
"""

import enum
import itertools
import threading
from dataclasses import dataclass, field
from logging import getLogger
from typing import Dict, Tuple

from .errors import InvalidLease, ModelNotLoaded, UnknownConcept
from .similarity import matching_concepts, s_dice
from .util import now_ms

logger = getLogger("semspace.space")

DEFAULT_MAX_LEASE_MS = 3600000
DEFAULT_REAPER_INTERVAL_MS = 1000


class MetaModel(str, enum.Enum):
    RDFS = "RDFS"
    WSML = "WSML"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(value)
        except ValueError:
            raise ValueError("unknown meta-model {0!r}, expected RDFS or WSML".format(value)) from None


@dataclass(frozen=True)
class Lease:
    requested_ms: int
    granted_ms: int
    expires_at: int


@dataclass(frozen=True)
class MetaInformation:
    model: MetaModel
    concept: str
    path_keys: Tuple[int, ...]
    identifier: str


@dataclass(frozen=True)
class InformationEntity:
    id: int
    payload: bytes
    meta: MetaInformation
    lease: Lease

    def expired(self, now):
        return self.lease.expires_at <= now


@dataclass(frozen=True)
class SemanticQuery:
    model: MetaModel
    concept: str
    semantic_match_degree_floor: float


@dataclass(frozen=True)
class SyntacticQuery:
    identifier: str

    def __post_init__(self):
        if not self.identifier:
            raise ValueError("identifier must not be empty")


@dataclass(frozen=True)
class Result:
    id: int
    concept: str
    degree: float
    payload: bytes
    identifier: str


@dataclass(frozen=True)
class SpaceStats:
    live_entries: int = 0
    entries_per_model: Dict[str, int] = field(default_factory=dict)
    total_writes: int = 0
    # semantic and syntactic reads
    total_reads: int = 0
    total_takes: int = 0
    taken_total: int = 0
    expired_total: int = 0


def _result(entry, degree):
    return Result(entry.id, entry.meta.concept, degree, entry.payload, entry.meta.identifier)


class Space:
    """
    A concurrent semantic space.

    ``clock`` returns the current time as integer epoch milliseconds; tests
    inject a fake one to drive lease expiry.
    """

    def __init__(self, max_lease_ms=DEFAULT_MAX_LEASE_MS, clock=now_ms):
        if max_lease_ms < 1:
            raise ValueError("max_lease_ms must be positive")
        self.max_lease_ms = max_lease_ms
        self._clock = clock
        self._lock = threading.RLock()
        self._ids = itertools.count(1)
        self._indexes = {}
        self._entries = {}
        # model -> concept -> ordered set of entry ids
        self._meta_index = {}
        self._by_identifier = {}
        self._counters = dict.fromkeys(
            ("total_writes", "total_reads", "total_takes", "taken_total", "expired_total"), 0)
        self._reaper = None
        self._reaper_stop = threading.Event()

    # models

    def load_model(self, model, index):
        model = MetaModel.parse(model)
        with self._lock:
            self._indexes[model] = index
            self._meta_index.setdefault(model, {})
        logger.info("Loaded %s model with %d concepts", model.value, len(index))

    def models(self):
        with self._lock:
            return tuple(self._indexes)

    def index(self, model):
        model = MetaModel.parse(model)
        with self._lock:
            try:
                return self._indexes[model]
            except KeyError:
                raise ModelNotLoaded(model) from None

    def s_dice(self, model, c1, c2):
        return s_dice(self.index(model), c1, c2)

    # operations

    def write(self, payload, model, concept, requested_lease_ms):
        model = MetaModel.parse(model)
        if (isinstance(requested_lease_ms, bool) or not isinstance(requested_lease_ms, int)
                or requested_lease_ms < 1):
            raise InvalidLease(requested_lease_ms)
        payload = bytes(payload)
        with self._lock:
            record = self.index(model).record(concept)
            entry_id = next(self._ids)
            now = self._clock()
            granted = min(requested_lease_ms, self.max_lease_ms)
            meta = MetaInformation(
                model=model,
                concept=concept,
                path_keys=record.path_keys,
                identifier="entry-{0:016x}".format(entry_id),
            )
            entry = InformationEntity(entry_id, payload, meta, Lease(requested_lease_ms, granted, now + granted))
            # meta-information first, then the entry itself
            self._meta_index[model].setdefault(concept, {})[entry_id] = None
            self._by_identifier[meta.identifier] = entry_id
            self._entries[entry_id] = entry
            self._counters["total_writes"] += 1
        logger.debug("write id=%d model=%s concept=%s lease=%dms", entry_id, model.value, concept, granted)
        return entry_id, entry.lease

    def read(self, query):
        model = MetaModel.parse(query.model)
        with self._lock:
            index = self.index(model)
            matches = matching_concepts(index, query.concept, query.semantic_match_degree_floor)
            now = self._clock()
            by_concept = self._meta_index[model]
            results = []
            for match in matches:
                degree = match.degree
                for entry_id in by_concept.get(match.concept, ()):
                    entry = self._entries[entry_id]
                    if not entry.expired(now):
                        results.append(_result(entry, degree))
            self._counters["total_reads"] += 1
        # matches are already sorted by degree; ties keep write order
        results.sort(key=lambda r: (-r.degree, r.id))
        logger.debug("read model=%s concept=%s floor=%s -> %d results",
                     model.value, query.concept, query.semantic_match_degree_floor, len(results))
        return results

    def read_by_id(self, query):
        with self._lock:
            self._counters["total_reads"] += 1
            entry_id = self._by_identifier.get(query.identifier)
            if entry_id is None:
                return []
            entry = self._entries[entry_id]
            if entry.expired(self._clock()):
                return []
            return [_result(entry, 1.0)]

    def take(self, model, concept):
        model = MetaModel.parse(model)
        with self._lock:
            self.index(model).record(concept)
            now = self._clock()
            ids = self._meta_index[model].get(concept, {})
            results = []
            for entry_id in list(ids):
                entry = self._entries[entry_id]
                if entry.expired(now):
                    continue
                self._remove(entry)
                results.append(_result(entry, 1.0))
            self._counters["total_takes"] += 1
            self._counters["taken_total"] += len(results)
        logger.debug("take model=%s concept=%s -> %d results", model.value, concept, len(results))
        return results

    def expire(self, now=None):
        with self._lock:
            if now is None:
                now = self._clock()
            removed = self._reap(now)
        if removed:
            logger.debug("expired %d entries", removed)
        return removed

    def stats(self):
        with self._lock:
            self._reap(self._clock())
            per_model = {}
            for entry in self._entries.values():
                key = entry.meta.model.value
                per_model[key] = per_model.get(key, 0) + 1
            return SpaceStats(live_entries=len(self._entries), entries_per_model=per_model,
                              **self._counters)

    # internals, callers hold the lock

    def _remove(self, entry):
        del self._entries[entry.id]
        del self._by_identifier[entry.meta.identifier]
        by_concept = self._meta_index[entry.meta.model]
        ids = by_concept[entry.meta.concept]
        del ids[entry.id]
        if not ids:
            del by_concept[entry.meta.concept]

    def _reap(self, now):
        expired = [entry for entry in self._entries.values() if entry.expired(now)]
        for entry in expired:
            self._remove(entry)
        self._counters["expired_total"] += len(expired)
        return len(expired)

    # reaper

    def start_reaper(self, interval_ms=DEFAULT_REAPER_INTERVAL_MS):
        if interval_ms < 1:
            raise ValueError("reaper interval must be positive")
        with self._lock:
            if self._reaper is not None:
                return
            self._reaper_stop.clear()
            self._reaper = threading.Thread(
                target=self._run_reaper, args=(interval_ms / 1000.0,),
                name="semspace-reaper", daemon=True)
            self._reaper.start()
        logger.info("Reaper started, interval %dms", interval_ms)

    def stop_reaper(self):
        with self._lock:
            reaper, self._reaper = self._reaper, None
        if reaper is None:
            return
        self._reaper_stop.set()
        reaper.join()
        logger.info("Reaper stopped")

    def _run_reaper(self, interval):
        while not self._reaper_stop.wait(interval):
            self.expire()
