"""Scenario files and the deterministic end-to-end simulation runner.

A scenario drives an in-process capture + store stack on a simulated clock
(fixed epoch), so two runs of the same file produce byte-identical outputs.
Sensor sources refresh at every click unless a fault window covers that
moment, in which case the source's cell is cleared (source down = no data).
The sync queue is pumped only while the store is up; pending entries are
drained once after the click schedule ends, with backoff sleeps advancing
the same simulated clock.
"""

from __future__ import annotations

import json
import math
import os
import random
from dataclasses import dataclass, field

from ..capture.service import CaptureService
from ..fixtures.build import (
    FIXTURE_EPOCH_MS,
    default_registry,
    default_weather_payload,
    eight_room_floor,
)
from ..model.behaviors import BehaviorDefinition, BehaviorRegistry
from ..model.readings import EnvFrame, GpsFix
from ..model.records import SOURCES, SOURCE_SLOTS, SLOT_CODES
from ..sensors.floorplan import BeaconPlacement, FloorPlan, Room, Wall
from ..sensors.propagation import DEFAULT_DETECT_FLOOR_DBM, scan_beacons
from ..sensors.snapshot import DEFAULT_FRESHNESS_WINDOW_MS, SensorHub
from ..sensors.weather import WeatherClient, WeatherUnavailableError, fixture_key
from ..store.api import InProcessStoreClient, StoreUnavailableError
from ..store.service import RecordStore


class ScenarioError(ValueError):
    """The scenario file is unreadable or internally inconsistent."""


@dataclass(frozen=True)
class FaultWindow:
    source: str  # beacon | gps | env | weather | store
    start_ms: int  # relative to scenario start, inclusive
    end_ms: int  # exclusive

    def covers(self, t_ms: int) -> bool:
        return self.start_ms <= t_ms < self.end_ms


@dataclass
class ScenarioConfig:
    seed: int = 1
    noise_sigma: float = 0.0
    detect_floor_dbm: float = DEFAULT_DETECT_FLOOR_DBM
    freshness_window_ms: int = DEFAULT_FRESHNESS_WINDOW_MS
    geo_origin: tuple[float, float] = (34.79, 132.78)  # (lat, lon)
    plan: FloorPlan | None = None
    beacons: tuple[BeaconPlacement, ...] = ()
    registry: BehaviorRegistry | None = None
    device_path: tuple[tuple[int, float, float], ...] = ()  # (t_ms, x, y)
    clicks: tuple[tuple[int, str], ...] = ()  # (t_ms, behavior_name)
    faults: tuple[FaultWindow, ...] = ()
    weather_payloads: dict = field(default_factory=dict)
    location_label: str | None = None


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ScenarioError(message)


def load_scenario(path: str) -> ScenarioConfig:
    try:
        with open(path, "r", encoding="utf-8") as fp:
            raw = json.load(fp)
    except OSError as exc:
        raise ScenarioError(f"cannot read scenario: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"scenario is not valid JSON: {exc}") from exc
    return scenario_from_dict(raw)


def scenario_from_dict(raw: dict) -> ScenarioConfig:
    _require(isinstance(raw, dict), "scenario must be a JSON object")
    seed = raw.get("seed", 1)
    _require(isinstance(seed, int), "seed must be an integer")

    if "floor" in raw or "beacons" in raw:
        _require("floor" in raw and "beacons" in raw, "floor and beacons must be given together")
        try:
            rooms = tuple(
                Room(r["room_id"], r["x0"], r["y0"], r["x1"], r["y1"])
                for r in raw["floor"].get("rooms", [])
            )
            walls = tuple(
                Wall(w["x0"], w["y0"], w["x1"], w["y1"], w["attenuation_db"])
                for w in raw["floor"].get("walls", [])
            )
            plan = FloorPlan(rooms=rooms, walls=walls)
            beacons = tuple(
                BeaconPlacement(
                    uuid=b["uuid"],
                    beacon_name=b["beacon_name"],
                    x=b["x"],
                    y=b["y"],
                    tx_power_at_1m=b.get("tx_power_at_1m", -59.0),
                )
                for b in raw["beacons"]
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ScenarioError(f"bad floor/beacons: {exc}") from exc
        for b in beacons:
            try:
                plan.validate_placement(b)
            except ValueError as exc:
                raise ScenarioError(str(exc)) from exc
    else:
        plan, beacons = eight_room_floor()

    if "registry" in raw:
        try:
            registry = BehaviorRegistry().replace_all(
                BehaviorDefinition(r["category_code"], r["behavior_name"], r["category_name"])
                for r in raw["registry"]
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ScenarioError(f"bad registry: {exc}") from exc
    else:
        registry = default_registry()

    path_raw = raw.get("device_path") or [{"t_ms": 0, "x": plan.rooms[0].center[0], "y": plan.rooms[0].center[1]}]
    try:
        device_path = tuple((p["t_ms"], float(p["x"]), float(p["y"])) for p in path_raw)
    except (KeyError, TypeError) as exc:
        raise ScenarioError(f"bad device_path: {exc}") from exc
    _require(
        all(device_path[i][0] <= device_path[i + 1][0] for i in range(len(device_path) - 1)),
        "device_path times must be non-decreasing",
    )

    if "clicks" in raw:
        try:
            clicks = tuple((c["t_ms"], c["behavior_name"]) for c in raw["clicks"])
        except (KeyError, TypeError) as exc:
            raise ScenarioError(f"bad clicks: {exc}") from exc
    else:
        rate = raw.get("click_rate_per_min")
        duration = raw.get("duration_ms")
        _require(
            isinstance(rate, (int, float)) and rate > 0 and isinstance(duration, int),
            "need clicks, or click_rate_per_min with duration_ms",
        )
        rng = random.Random(seed)
        names = [d.behavior_name for d in registry.definitions]
        clicks_list: list[tuple[int, str]] = []
        t = 0.0
        i = 0
        while True:
            t += rng.expovariate(rate / 60_000.0)
            if t >= duration:
                break
            clicks_list.append((int(t), names[i % len(names)]))
            i += 1
        clicks = tuple(clicks_list)

    _require(all(clicks[i][0] <= clicks[i + 1][0] for i in range(len(clicks) - 1)),
             "click times must be non-decreasing")
    for t, name in clicks:
        try:
            registry.get(name)
        except KeyError as exc:
            raise ScenarioError(f"click behavior does not resolve in registry: {name!r}") from exc

    faults = []
    for f in raw.get("faults", []):
        try:
            window = FaultWindow(f["source"], f["start_ms"], f["end_ms"])
        except (KeyError, TypeError) as exc:
            raise ScenarioError(f"bad fault window: {exc}") from exc
        _require(window.source in SOURCES + ("store",), f"unknown fault source: {window.source}")
        _require(window.start_ms < window.end_ms, "fault window must have start_ms < end_ms")
        faults.append(window)

    origin = raw.get("geo_origin", {})
    lat = origin.get("lat", 34.79)
    lon = origin.get("lon", 132.78)
    weather_payloads = raw.get("weather") or {fixture_key(lat, lon): default_weather_payload()}

    return ScenarioConfig(
        seed=seed,
        noise_sigma=float(raw.get("noise_sigma", 0.0)),
        detect_floor_dbm=float(raw.get("detect_floor_dbm", DEFAULT_DETECT_FLOOR_DBM)),
        freshness_window_ms=int(raw.get("freshness_window_ms", DEFAULT_FRESHNESS_WINDOW_MS)),
        geo_origin=(lat, lon),
        plan=plan,
        beacons=beacons,
        registry=registry,
        device_path=device_path,
        clicks=clicks,
        faults=tuple(faults),
        weather_payloads=weather_payloads,
        location_label=raw.get("location_label"),
    )


class SimClock:
    """Monotone simulated clock in epoch ms; sleep() advances it."""

    def __init__(self, start_ms: int = FIXTURE_EPOCH_MS):
        self._now = start_ms

    def now(self) -> int:
        return self._now

    def advance_to(self, t_ms: int) -> None:
        self._now = max(self._now, t_ms)

    def sleep(self, seconds: float) -> None:
        self._now += int(round(seconds * 1000))


class OutageStoreClient:
    """Store client that fails while the simulated store outage is active."""

    def __init__(self, inner, windows, clock: SimClock, epoch_ms: int):
        self._inner = inner
        self._windows = tuple(windows)
        self._clock = clock
        self._epoch = epoch_ms

    def store_up(self, now_ms: int | None = None) -> bool:
        t = (self._clock.now() if now_ms is None else now_ms) - self._epoch
        return not any(w.covers(t) for w in self._windows)

    def put_record(self, record):
        if not self.store_up():
            raise StoreUnavailableError("simulated store outage")
        return self._inner.put_record(record)


def path_position(path, t_ms: int) -> tuple[float, float]:
    if t_ms <= path[0][0]:
        return (path[0][1], path[0][2])
    for (t0, x0, y0), (t1, x1, y1) in zip(path, path[1:]):
        if t_ms <= t1:
            if t1 == t0:
                return (x1, y1)
            frac = (t_ms - t0) / (t1 - t0)
            return (x0 + frac * (x1 - x0), y0 + frac * (y1 - y0))
    return (path[-1][1], path[-1][2])


def _synthetic_env(rng: random.Random, now_ms: int) -> EnvFrame:
    return EnvFrame(
        uv_range=round(rng.uniform(0.0, 3.0), 2),
        geomag_range_g1=round(rng.uniform(-1.0, 1.0), 3),
        geomag_range_g2=round(rng.uniform(-1.0, 1.0), 3),
        geomag_range_g3=round(rng.uniform(-1.0, 1.0), 3),
        geomag_res_ut1=round(rng.uniform(-60.0, 60.0), 1),
        geomag_res_ut2=round(rng.uniform(-60.0, 60.0), 1),
        geomag_res_ut3=round(rng.uniform(-60.0, 60.0), 1),
        ambient_light=round(rng.uniform(100.0, 800.0), 1),
        pressure=round(rng.uniform(1000.0, 1025.0), 1),
        temperature=round(rng.uniform(18.0, 26.0), 1),
        humidity=round(rng.uniform(35.0, 65.0), 1),
        observed_at=now_ms,
    )


def _gps_at(origin: tuple[float, float], pos: tuple[float, float], now_ms: int) -> GpsFix:
    lat0, lon0 = origin
    lat = lat0 + pos[1] / 111_320.0
    lon = lon0 + pos[0] / (111_320.0 * math.cos(math.radians(lat0)))
    return GpsFix(latitude=lat, longitude=lon, observed_at=now_ms)


@dataclass
class SimulationResult:
    session_id: str
    capture: CaptureService
    store: RecordStore
    store_client: OutageStoreClient
    summary: dict
    event_log_path: str | None = None
    store_path: str | None = None
    summary_path: str | None = None


def run_scenario(config: ScenarioConfig, out_dir: str | None = None) -> SimulationResult:
    clock = SimClock(FIXTURE_EPOCH_MS)
    store_path = None
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)
        store_path = os.path.join(out_dir, "store.jsonl")
        if os.path.exists(store_path):
            os.remove(store_path)
    store = RecordStore(path=store_path, clock=clock.now)
    client = OutageStoreClient(
        InProcessStoreClient(store),
        [w for w in config.faults if w.source == "store"],
        clock,
        FIXTURE_EPOCH_MS,
    )
    hub = SensorHub(freshness_window_ms=config.freshness_window_ms)
    capture = CaptureService(
        registry=config.registry,
        hub=hub,
        store_client=client,
        device_id="sim",
        freshness_window_ms=config.freshness_window_ms,
        clock=clock.now,
        sync_sleep=clock.sleep,
    )
    weather = WeatherClient(
        mode="fixture",
        fixture_data=config.weather_payloads,
        cache_ttl_ms=0,  # refetch per click: deterministic and always fresh
        clock=clock.now,
    )

    env_rng = random.Random(config.seed)
    sensor_faults = {s: [w for w in config.faults if w.source == s] for s in SOURCES}

    def source_down(source: str, rel_t: int) -> bool:
        return any(w.covers(rel_t) for w in sensor_faults[source])

    session = capture.start_session(location_label=config.location_label)

    for i, (rel_t, behavior_name) in enumerate(config.clicks):
        now = FIXTURE_EPOCH_MS + rel_t
        clock.advance_to(now)
        pos = path_position(config.device_path, rel_t)

        if source_down("beacon", rel_t):
            hub.clear("beacon")
        else:
            hub.offer_beacons(
                scan_beacons(
                    config.plan,
                    config.beacons,
                    pos,
                    detect_floor_dbm=config.detect_floor_dbm,
                    noise_sigma=config.noise_sigma,
                    rng_seed=config.seed * 1_000_003 + i,
                    now_ms=now,
                )
            )
        if source_down("gps", rel_t):
            hub.clear("gps")
        else:
            hub.offer_gps(_gps_at(config.geo_origin, pos, now))
        if source_down("env", rel_t):
            hub.clear("env")
        else:
            hub.offer_env(_synthetic_env(env_rng, now))
        if source_down("weather", rel_t):
            hub.clear("weather")
        else:
            fix = _gps_at(config.geo_origin, pos, now)
            try:
                hub.offer_weather(weather.fetch(fix.latitude, fix.longitude))
            except WeatherUnavailableError:
                hub.clear("weather")

        capture.record_behavior(behavior_name, now=now)
        if client.store_up(now):
            capture.drain_sync_queue(max_rounds_per_entry=1)

    capture.end_session()
    capture.drain_sync_queue()

    records = capture.session_records(session.session_id)
    per_type_present = {code: sum(1 for r in records if r.present(code)) for code in SLOT_CODES}
    per_source_errors = {
        source: sum(1 for r in records if any(not r.present(c) for c in SOURCE_SLOTS[source]))
        for source in SOURCES
    }
    counts = capture.queue.counts()
    summary = {
        "session_id": session.session_id,
        "clicks": len(config.clicks),
        "records_logged": len(records),
        "store_records": store.count(),
        "sync": counts,
        "per_source_error_records": per_source_errors,
        "per_type_present": per_type_present,
    }

    result = SimulationResult(
        session_id=session.session_id,
        capture=capture,
        store=store,
        store_client=client,
        summary=summary,
        store_path=store_path,
    )
    if out_dir:
        event_log_path = os.path.join(out_dir, "events.jsonl")
        with open(event_log_path, "w", encoding="utf-8") as fp:
            fp.write(capture.export_log(session.session_id))
        summary_path = os.path.join(out_dir, "summary.json")
        with open(summary_path, "w", encoding="utf-8") as fp:
            json.dump(summary, fp, indent=2, sort_keys=True)
            fp.write("\n")
        result.event_log_path = event_log_path
        result.summary_path = summary_path
        store.close()
    return result
