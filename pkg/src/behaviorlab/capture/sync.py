"""Idempotent upload queue: pending entries retry with exponential backoff.

Delivery is at-least-once; the store dedups by event_id, so the combination
is effectively-once. Entries keep clicked_at order; a failing entry retries
up to max_attempts (backoff base 0.5 s doubling to a 30 s cap) before it is
parked as failed, without blocking later entries.
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass
from typing import Callable

from ..model.records import DataRecord
from ..store.service import StoreAck

PENDING = "pending"
ACKED = "acked"
FAILED = "failed"

DEFAULT_BASE_DELAY_S = 0.5
DEFAULT_MAX_DELAY_S = 30.0
DEFAULT_MAX_ATTEMPTS = 10


@dataclass
class SyncQueueEntry:
    record: DataRecord
    attempts: int = 0
    state: str = PENDING
    ack: StoreAck | None = None
    last_error: str | None = None


class SyncQueue:
    def __init__(
        self,
        client,
        base_delay_s: float = DEFAULT_BASE_DELAY_S,
        max_delay_s: float = DEFAULT_MAX_DELAY_S,
        max_attempts: int = DEFAULT_MAX_ATTEMPTS,
        sleep: Callable[[float], None] = time.sleep,
    ):
        self.client = client
        self.base_delay_s = base_delay_s
        self.max_delay_s = max_delay_s
        self.max_attempts = max_attempts
        self._sleep = sleep
        self._lock = threading.Lock()
        self._entries: list[SyncQueueEntry] = []
        self._drain_lock = threading.Lock()  # one drainer at a time

    def enqueue(self, record: DataRecord) -> SyncQueueEntry:
        entry = SyncQueueEntry(record=record)
        with self._lock:
            self._entries.append(entry)
        return entry

    def entries(self) -> list[SyncQueueEntry]:
        with self._lock:
            return list(self._entries)

    def depth(self) -> int:
        with self._lock:
            return sum(1 for e in self._entries if e.state == PENDING)

    def pending_event_ids(self) -> list[str]:
        with self._lock:
            return [e.record.event_id for e in self._entries if e.state == PENDING]

    def counts(self) -> dict[str, int]:
        with self._lock:
            out = {PENDING: 0, ACKED: 0, FAILED: 0}
            for e in self._entries:
                out[e.state] += 1
            return out

    def _backoff_delay(self, attempts: int) -> float:
        return min(self.max_delay_s, self.base_delay_s * (2 ** (attempts - 1)))

    def drain(self, max_rounds_per_entry: int | None = None) -> int:
        """Transmit pending entries in order; returns how many were acked.

        max_rounds_per_entry caps attempts made during this call (a single
        non-blocking pump pass uses 1); the per-entry lifetime cap
        max_attempts always applies.
        """
        acked_now = 0
        with self._drain_lock:
            for entry in self.entries():
                if entry.state != PENDING:
                    continue
                rounds = 0
                while entry.state == PENDING:
                    if max_rounds_per_entry is not None and rounds >= max_rounds_per_entry:
                        break
                    rounds += 1
                    try:
                        ack = self.client.put_record(entry.record)
                    except Exception as exc:
                        entry.attempts += 1
                        entry.last_error = str(exc)
                        if entry.attempts >= self.max_attempts:
                            entry.state = FAILED
                            break
                        if max_rounds_per_entry is None or rounds < max_rounds_per_entry:
                            self._sleep(self._backoff_delay(entry.attempts))
                        continue
                    entry.attempts += 1
                    entry.state = ACKED
                    entry.ack = ack
                    acked_now += 1
        return acked_now
