"""Process entry points for the HTTP services and the live sensor daemon."""

from __future__ import annotations

import random
import threading
import time

from ..capture.api import create_capture_app
from ..capture.service import CaptureService
from ..fixtures.build import default_weather_payload
from ..sensors.propagation import scan_beacons
from ..sensors.snapshot import SensorHub
from ..sensors.weather import WeatherClient, WeatherUnavailableError, fixture_key
from ..store.api import HttpStoreClient, create_store_app
from ..store.service import RecordStore
from .scenario import ScenarioConfig, _gps_at, _synthetic_env, path_position


class SensorDaemon:
    """Background producers feeding the hub from a scenario's world model.

    The device walks the scenario path on wall time (clamping at the end),
    each source refreshing once per interval.
    """

    def __init__(
        self,
        config: ScenarioConfig,
        hub: SensorHub,
        weather_mode: str = "fixture",
        weather_fixture_path: str | None = None,
        interval_s: float = 1.0,
    ):
        self.config = config
        self.hub = hub
        self.interval_s = interval_s
        fixture_data = dict(config.weather_payloads)
        lat, lon = config.geo_origin
        fixture_data.setdefault(fixture_key(lat, lon), default_weather_payload())
        self.weather = WeatherClient(
            mode=weather_mode,
            fixture_path=weather_fixture_path,
            fixture_data=fixture_data if weather_mode == "fixture" else None,
            cache_ttl_ms=25_000,
        )
        self._start_ms = int(time.time() * 1000)
        self._stop = threading.Event()
        self._thread: threading.Thread | None = None
        self._tick = 0

    def _refresh(self) -> None:
        now = int(time.time() * 1000)
        rel_t = now - self._start_ms
        pos = path_position(self.config.device_path, rel_t)
        self._tick += 1
        self.hub.offer_beacons(
            scan_beacons(
                self.config.plan,
                self.config.beacons,
                pos,
                detect_floor_dbm=self.config.detect_floor_dbm,
                noise_sigma=self.config.noise_sigma,
                rng_seed=self.config.seed + self._tick,
                now_ms=now,
            )
        )
        fix = _gps_at(self.config.geo_origin, pos, now)
        self.hub.offer_gps(fix)
        self.hub.offer_env(_synthetic_env(random.Random(self.config.seed + self._tick), now))
        try:
            self.hub.offer_weather(self.weather.fetch(fix.latitude, fix.longitude))
        except WeatherUnavailableError:
            pass  # leave the previous snapshot to age out of the freshness window

    def _loop(self) -> None:
        while not self._stop.is_set():
            try:
                self._refresh()
            except Exception:
                pass
            self._stop.wait(self.interval_s)

    def start(self) -> None:
        self._thread = threading.Thread(target=self._loop, daemon=True, name="sensor-daemon")
        self._thread.start()

    def stop(self) -> None:
        self._stop.set()


def serve_store(port: int, data_path: str | None) -> None:
    import uvicorn

    store = RecordStore(path=data_path)
    app = create_store_app(store)
    uvicorn.run(app, host="127.0.0.1", port=port, log_level="warning")


def build_capture_service(
    config: ScenarioConfig,
    store_url: str,
    data_dir: str | None,
    freshness_window_ms: int,
    weather_mode: str,
) -> tuple[CaptureService, SensorDaemon]:
    hub = SensorHub(freshness_window_ms=freshness_window_ms)
    service = CaptureService(
        registry=config.registry,
        hub=hub,
        store_client=HttpStoreClient(store_url),
        data_dir=data_dir,
        freshness_window_ms=freshness_window_ms,
    )
    daemon = SensorDaemon(config, hub, weather_mode=weather_mode)
    return service, daemon


def serve_capture(
    port: int,
    config: ScenarioConfig,
    store_url: str,
    data_dir: str | None,
    freshness_window_ms: int,
    weather_mode: str,
    ui_dir: str | None = None,
) -> None:
    import uvicorn

    service, daemon = build_capture_service(
        config, store_url, data_dir, freshness_window_ms, weather_mode
    )
    daemon.start()
    app = create_capture_app(service)
    if ui_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=ui_dir, html=True), name="ui")
    uvicorn.run(app, host="127.0.0.1", port=port, log_level="warning")
