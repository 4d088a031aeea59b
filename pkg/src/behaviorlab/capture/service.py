"""Session lifecycle and behavior-click capture.

A click resolves the behavior in the registry, joins the sensor hub's
snapshot at click time into a 31-slot record, appends it to the durable
local log, and enqueues it for sync. Capture never waits on the network.
"""

from __future__ import annotations

import os
import threading
import time
from dataclasses import dataclass
from typing import Callable

from ..model.behaviors import BehaviorRegistry
from ..model.readings import nearest_beacon
from ..model.records import DataRecord, flatten_record
from ..model.serialization import record_to_line
from ..sensors.snapshot import DEFAULT_FRESHNESS_WINDOW_MS, SensorHub
from .sync import SyncQueue


class SessionStateError(RuntimeError):
    pass


class UnknownSessionError(KeyError):
    pass


@dataclass(frozen=True)
class Session:
    session_id: str
    started_at: int
    registry_revision: int
    location_label: str | None = None
    ended_at: int | None = None

    def __post_init__(self) -> None:
        if self.ended_at is not None and self.ended_at < self.started_at:
            raise ValueError("ended_at must be >= started_at")

    @property
    def open(self) -> bool:
        return self.ended_at is None


def _now_ms() -> int:
    return int(time.time() * 1000)


class CaptureService:
    def __init__(
        self,
        registry: BehaviorRegistry,
        hub: SensorHub,
        store_client,
        data_dir: str | None = None,
        device_id: str = "dev1",
        freshness_window_ms: int = DEFAULT_FRESHNESS_WINDOW_MS,
        clock: Callable[[], int] = _now_ms,
        sync_base_delay_s: float = 0.5,
        sync_max_delay_s: float = 30.0,
        sync_max_attempts: int = 10,
        sync_sleep: Callable[[float], None] = time.sleep,
    ):
        self.device_id = device_id
        self.hub = hub
        self.hub.freshness_window_ms = freshness_window_ms
        self.freshness_window_ms = freshness_window_ms
        self._clock = clock
        self._lock = threading.Lock()
        self._registry = registry
        self._sessions: dict[str, Session] = {}
        self._open_session_id: str | None = None
        self._session_counter = 0
        self._event_counter = 0
        self._events: dict[str, list[DataRecord]] = {}  # session_id -> clicked order
        self.queue = SyncQueue(
            store_client,
            base_delay_s=sync_base_delay_s,
            max_delay_s=sync_max_delay_s,
            max_attempts=sync_max_attempts,
            sleep=sync_sleep,
        )
        self._log_fp = None
        if data_dir:
            os.makedirs(data_dir, exist_ok=True)
            self._log_fp = open(os.path.join(data_dir, "events.jsonl"), "a", encoding="utf-8")

    # -- registry ----------------------------------------------------------

    @property
    def registry(self) -> BehaviorRegistry:
        with self._lock:
            return self._registry

    def replace_registry(self, definitions) -> BehaviorRegistry:
        with self._lock:
            self._registry = self._registry.replace_all(definitions)
            return self._registry

    def upsert_behavior(self, defn) -> BehaviorRegistry:
        with self._lock:
            self._registry = self._registry.upsert(defn)
            return self._registry

    # -- sessions ----------------------------------------------------------

    def start_session(self, location_label: str | None = None) -> Session:
        with self._lock:
            if self._open_session_id is not None:
                raise SessionStateError(f"session {self._open_session_id} is already open")
            self._session_counter += 1
            session = Session(
                session_id=f"{self.device_id}-s{self._session_counter:04d}",
                started_at=self._clock(),
                registry_revision=self._registry.revision,
                location_label=location_label,
            )
            self._sessions[session.session_id] = session
            self._events[session.session_id] = []
            self._open_session_id = session.session_id
            return session

    def end_session(self) -> Session:
        with self._lock:
            if self._open_session_id is None:
                raise SessionStateError("no open session")
            session = self._sessions[self._open_session_id]
            events = self._events[session.session_id]
            ended_at = max(self._clock(), events[-1].clicked_at if events else session.started_at)
            closed = Session(
                session_id=session.session_id,
                started_at=session.started_at,
                registry_revision=session.registry_revision,
                location_label=session.location_label,
                ended_at=ended_at,
            )
            self._sessions[session.session_id] = closed
            self._open_session_id = None
            return closed

    @property
    def open_session(self) -> Session | None:
        with self._lock:
            if self._open_session_id is None:
                return None
            return self._sessions[self._open_session_id]

    def get_session(self, session_id: str) -> Session:
        with self._lock:
            if session_id not in self._sessions:
                raise UnknownSessionError(session_id)
            return self._sessions[session_id]

    # -- capture -----------------------------------------------------------

    def record_behavior(
        self,
        behavior_name: str,
        category_name: str | None = None,
        now: int | None = None,
    ) -> DataRecord:
        """One click: resolve, snapshot, flatten, log, enqueue. Errors log nothing."""
        with self._lock:
            if self._open_session_id is None:
                raise SessionStateError("no open session")
            session = self._sessions[self._open_session_id]
            behavior = self._registry.get(behavior_name, category_name)

            clicked_at = self._clock() if now is None else now
            events = self._events[session.session_id]
            if events and clicked_at < events[-1].clicked_at:
                clicked_at = events[-1].clicked_at  # keep per-session order monotone
            clicked_at = max(clicked_at, session.started_at)

            self._event_counter += 1
            event_id = f"{self.device_id}:{session.session_id}:{self._event_counter:06d}"

        snapshot = self.hub.snapshot(clicked_at)
        record = flatten_record(event_id, session.session_id, behavior, clicked_at, snapshot)

        with self._lock:
            self._events[session.session_id].append(record)
            if self._log_fp:
                self._log_fp.write(record_to_line(record) + "\n")
                self._log_fp.flush()
        self.queue.enqueue(record)
        return record

    # -- log access ----------------------------------------------------------

    def session_records(self, session_id: str) -> list[DataRecord]:
        with self._lock:
            if session_id not in self._events:
                raise UnknownSessionError(session_id)
            return list(self._events[session_id])

    def export_log(self, session_id: str) -> str:
        """Header line plus canonical record lines in clicked_at order.

        Byte-stable: exporting twice yields identical text, and exporting
        after more clicks extends the earlier export (prefix property).
        """
        records = self.session_records(session_id)
        session = self.get_session(session_id)
        header = (
            '{"type":"session-log","session_id":"%s","started_at":%d}'
            % (session.session_id, session.started_at)
        )
        return header + "\n" + "".join(record_to_line(r) + "\n" for r in records)

    # -- sync / status -------------------------------------------------------

    def drain_sync_queue(self, max_rounds_per_entry: int | None = None) -> int:
        return self.queue.drain(max_rounds_per_entry=max_rounds_per_entry)

    def status(self) -> dict:
        now = self._clock()
        ages = self.hub.ages_ms(now)
        latest = self.hub.latest()
        nearest = nearest_beacon(latest.beacons)
        session = self.open_session
        counts = self.queue.counts()
        return {
            "now": now,
            "session": None
            if session is None
            else {"session_id": session.session_id, "started_at": session.started_at},
            "freshness_window_ms": self.freshness_window_ms,
            "source_ages_ms": ages,
            "nearest_beacon": None if nearest is None else nearest.beacon_name,
            "queue_depth": counts["pending"],
            "queue_failed": counts["failed"],
            "queue_acked": counts["acked"],
            "pending_event_ids": self.queue.pending_event_ids(),
        }

    def close(self) -> None:
        if self._log_fp:
            self._log_fp.close()
            self._log_fp = None
