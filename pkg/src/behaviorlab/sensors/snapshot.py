"""Latest-value cells per source and the click-time snapshot join."""

from __future__ import annotations

import threading
from dataclasses import dataclass

from ..model.readings import BeaconReading, EnvFrame, GpsFix, SensorSnapshot, WeatherSnapshot
from ..model.records import SOURCES

DEFAULT_FRESHNESS_WINDOW_MS = 30_000


@dataclass(frozen=True)
class SourcesLatest:
    """Most recent delivery per source; None / empty means never delivered."""

    beacons: tuple[BeaconReading, ...] = ()
    gps: GpsFix | None = None
    env: EnvFrame | None = None
    weather: WeatherSnapshot | None = None


def assemble_snapshot(
    latest: SourcesLatest,
    now_ms: int,
    freshness_window_ms: int = DEFAULT_FRESHNESS_WINDOW_MS,
) -> SensorSnapshot:
    """Join the latest per-source readings that are fresh at now_ms.

    A reading is fresh iff 0 <= now - observed_at <= freshness_window_ms
    (boundary included); stale and future readings are omitted.
    """
    if freshness_window_ms <= 0:
        raise ValueError("freshness_window_ms must be > 0")

    def fresh(observed_at: int) -> bool:
        return 0 <= now_ms - observed_at <= freshness_window_ms

    beacons = tuple(r for r in latest.beacons if fresh(r.observed_at))
    gps = latest.gps if latest.gps is not None and fresh(latest.gps.observed_at) else None
    env = latest.env if latest.env is not None and fresh(latest.env.observed_at) else None
    weather = (
        latest.weather
        if latest.weather is not None and fresh(latest.weather.observed_at)
        else None
    )
    return SensorSnapshot(
        beacons=beacons, gps=gps, env=env, weather=weather, assembled_at=now_ms
    )


class SensorHub:
    """Thread-safe latest-value cell per source.

    Producers call the offer_* methods independently; snapshot() reads each
    cell atomically (no cross-source atomicity is needed or provided).
    """

    def __init__(self, freshness_window_ms: int = DEFAULT_FRESHNESS_WINDOW_MS):
        self.freshness_window_ms = freshness_window_ms
        self._lock = threading.Lock()
        self._beacons: tuple[BeaconReading, ...] = ()
        self._gps: GpsFix | None = None
        self._env: EnvFrame | None = None
        self._weather: WeatherSnapshot | None = None

    def offer_beacons(self, readings) -> None:
        with self._lock:
            self._beacons = tuple(readings)

    def offer_gps(self, fix: GpsFix | None) -> None:
        with self._lock:
            self._gps = fix

    def offer_env(self, frame: EnvFrame | None) -> None:
        with self._lock:
            self._env = frame

    def offer_weather(self, snap: WeatherSnapshot | None) -> None:
        with self._lock:
            self._weather = snap

    def clear(self, source: str) -> None:
        if source not in SOURCES:
            raise ValueError(f"unknown source: {source}")
        with self._lock:
            if source == "beacon":
                self._beacons = ()
            elif source == "gps":
                self._gps = None
            elif source == "env":
                self._env = None
            else:
                self._weather = None

    def latest(self) -> SourcesLatest:
        with self._lock:
            return SourcesLatest(
                beacons=self._beacons, gps=self._gps, env=self._env, weather=self._weather
            )

    def snapshot(self, now_ms: int) -> SensorSnapshot:
        return assemble_snapshot(self.latest(), now_ms, self.freshness_window_ms)

    def ages_ms(self, now_ms: int) -> dict[str, int | None]:
        """Per-source age of the latest reading, None when never delivered."""
        latest = self.latest()
        newest_beacon = max((r.observed_at for r in latest.beacons), default=None)
        out: dict[str, int | None] = {}
        for source, observed in (
            ("beacon", newest_beacon),
            ("gps", latest.gps.observed_at if latest.gps else None),
            ("env", latest.env.observed_at if latest.env else None),
            ("weather", latest.weather.observed_at if latest.weather else None),
        ):
            out[source] = None if observed is None else now_ms - observed
        return out
