from __future__ import annotations

import pytest

from behaviorlab.model.behaviors import BehaviorDefinition
from behaviorlab.model.readings import (
    BeaconReading,
    EnvFrame,
    GpsFix,
    SensorSnapshot,
    WeatherSnapshot,
)
from behaviorlab.store.api import StoreUnavailableError
from behaviorlab.store.service import RecordStore


def make_env(observed_at: int = 0) -> EnvFrame:
    return EnvFrame(
        uv_range=0.5,
        geomag_range_g1=0.1,
        geomag_range_g2=-0.2,
        geomag_range_g3=0.9,
        geomag_res_ut1=30.0,
        geomag_res_ut2=-11.0,
        geomag_res_ut3=45.5,
        ambient_light=300.0,
        pressure=1012.0,
        temperature=22.5,
        humidity=48.0,
        observed_at=observed_at,
    )


def make_weather(observed_at: int = 0, **overrides) -> WeatherSnapshot:
    values = dict(
        country_name="JP",
        location_name="Matsuyama",
        weather="Clouds",
        sunset_time=1577871000,
        sunrise_time=1577833200,
        current_time=1577850000,
        temp_min=4.0,
        temp_max=9.0,
        pressure=1020.0,
        temp_main=6.5,
        humidity=62.0,
        weather_description="scattered clouds",
        cloudiness=40.0,
        wind_direction=250.0,
        wind_speed=3.6,
        observed_at=observed_at,
    )
    values.update(overrides)
    return WeatherSnapshot(**values)


def make_beacon(uuid="u1", rssi=-60, name="iB-1", observed_at: int = 0) -> BeaconReading:
    return BeaconReading(uuid=uuid, rssi=rssi, beacon_name=name, observed_at=observed_at)


def full_snapshot(at: int = 1000) -> SensorSnapshot:
    return SensorSnapshot(
        beacons=(make_beacon(observed_at=at),),
        gps=GpsFix(latitude=34.79, longitude=132.78, observed_at=at),
        env=make_env(at),
        weather=make_weather(at),
        assembled_at=at,
    )


def behavior(code=0, name="Hungry", category="Needs") -> BehaviorDefinition:
    return BehaviorDefinition(category_code=code, behavior_name=name, category_name=category)


class ManualClock:
    def __init__(self, start: int = 1_000_000):
        self.t = start

    def __call__(self) -> int:
        return self.t

    def advance(self, ms: int) -> None:
        self.t += ms


class FlakyStoreClient:
    """Fails the first `failures` puts (per entry lifetime), then delegates."""

    def __init__(self, store: RecordStore, failures: int = 0):
        self.store = store
        self.failures = failures
        self.puts = 0
        self.down = False

    def put_record(self, record):
        self.puts += 1
        if self.down:
            raise StoreUnavailableError("store is down")
        if self.failures > 0:
            self.failures -= 1
            raise StoreUnavailableError("transient failure")
        return self.store.put_record(record)


@pytest.fixture
def clock() -> ManualClock:
    return ManualClock()
