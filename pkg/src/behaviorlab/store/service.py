"""Append-only deduplicating record store with a sequence-ordered change feed.

Writes are serialized through one lock (the sequencer); readers and feeds
never block writers for long. Persistence is a single append log whose lines
are `<sequence>\\t<received_at>\\t<canonical record json>`.
"""

from __future__ import annotations

import json
import os
import threading
import time
from dataclasses import dataclass
from typing import Callable

from ..model.records import DataRecord
from ..model.serialization import record_from_dict, record_to_dict, record_to_line, schema_problems


class RecordRejectedError(ValueError):
    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


@dataclass(frozen=True)
class StoreAck:
    event_id: str
    sequence: int


@dataclass(frozen=True)
class StoredRecord:
    record: DataRecord
    received_at: int
    sequence: int


def _now_ms() -> int:
    return int(time.time() * 1000)


class RecordStore:
    def __init__(self, path: str | None = None, clock: Callable[[], int] = _now_ms):
        self._path = path
        self._clock = clock
        self._lock = threading.Lock()
        self._changed = threading.Condition(self._lock)
        self._log: list[StoredRecord] = []  # sequence order
        self._acks: dict[str, StoreAck] = {}
        self._fp = None
        if path:
            self._load(path)
            self._fp = open(path, "a", encoding="utf-8")

    def _load(self, path: str) -> None:
        if not os.path.exists(path):
            return
        with open(path, "r", encoding="utf-8") as fp:
            for line in fp:
                line = line.rstrip("\n")
                if not line:
                    continue
                seq_text, received_text, payload = line.split("\t", 2)
                record = record_from_dict(json.loads(payload))
                stored = StoredRecord(
                    record=record, received_at=int(received_text), sequence=int(seq_text)
                )
                self._log.append(stored)
                self._acks[record.event_id] = StoreAck(record.event_id, stored.sequence)

    def close(self) -> None:
        if self._fp:
            self._fp.close()
            self._fp = None

    def put_record(self, record) -> StoreAck:
        """Persist once per event_id; repeat puts return the original ack."""
        if isinstance(record, DataRecord):
            decoded = record
        else:
            problems = schema_problems(record)
            if problems:
                raise RecordRejectedError(problems)
            decoded = record_from_dict(record)

        with self._changed:
            existing = self._acks.get(decoded.event_id)
            if existing is not None:
                return existing
            sequence = len(self._log) + 1
            stored = StoredRecord(record=decoded, received_at=self._clock(), sequence=sequence)
            if self._fp:
                self._fp.write(f"{sequence}\t{stored.received_at}\t{record_to_line(decoded)}\n")
                self._fp.flush()
            self._log.append(stored)
            ack = StoreAck(decoded.event_id, sequence)
            self._acks[decoded.event_id] = ack
            self._changed.notify_all()
            return ack

    def count(self) -> int:
        with self._lock:
            return len(self._log)

    @property
    def last_sequence(self) -> int:
        with self._lock:
            return len(self._log)

    def query_records(
        self,
        session_id: str | None = None,
        behavior_name: str | None = None,
        time_range: tuple[int, int] | None = None,
    ) -> list[StoredRecord]:
        """Matching records in sequence order."""
        with self._lock:
            log = list(self._log)
        out = []
        for stored in log:
            r = stored.record
            if session_id is not None and r.session_id != session_id:
                continue
            if behavior_name is not None and r.behavior_name != behavior_name:
                continue
            if time_range is not None and not (time_range[0] <= r.clicked_at <= time_range[1]):
                continue
            out.append(stored)
        return out

    def poll_feed(self, from_sequence: int, limit: int = 1000, timeout_s: float = 0.0) -> list[StoredRecord]:
        """Records with sequence > from_sequence; optionally waits for the first one."""
        if from_sequence < 0:
            raise ValueError("from_sequence must be >= 0")
        deadline = time.monotonic() + timeout_s
        with self._changed:
            while len(self._log) <= from_sequence:
                remaining = deadline - time.monotonic()
                if remaining <= 0:
                    return []
                self._changed.wait(remaining)
            return self._log[from_sequence : from_sequence + limit]

    def change_feed(self, from_sequence: int = 0) -> "Feed":
        return Feed(self, from_sequence)


class Feed:
    """Live cursor over the store: replay from a sequence, then tail new arrivals."""

    def __init__(self, store: RecordStore, from_sequence: int):
        if from_sequence < 0:
            raise ValueError("from_sequence must be >= 0")
        self._store = store
        self._next = from_sequence

    @property
    def position(self) -> int:
        return self._next

    def next(self, timeout_s: float = 0.0) -> StoredRecord | None:
        batch = self._store.poll_feed(self._next, limit=1, timeout_s=timeout_s)
        if not batch:
            return None
        stored = batch[0]
        self._next = stored.sequence
        return stored

    def drain_available(self) -> list[StoredRecord]:
        out = []
        while True:
            stored = self.next(timeout_s=0.0)
            if stored is None:
                return out
            out.append(stored)


def stored_to_dict(stored: StoredRecord) -> dict:
    out = {"sequence": stored.sequence, "received_at": stored.received_at}
    out["record"] = record_to_dict(stored.record)
    return out
