"""Value types for the four sensor sources and the per-click snapshot."""

from __future__ import annotations

import math
from dataclasses import dataclass


def _finite(name: str, value: float) -> None:
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class BeaconReading:
    uuid: str
    rssi: int  # dBm, <= 0
    beacon_name: str
    observed_at: int  # epoch ms

    def __post_init__(self) -> None:
        if self.rssi > 0:
            raise ValueError(f"rssi must be <= 0 dBm, got {self.rssi}")


@dataclass(frozen=True)
class GpsFix:
    latitude: float
    longitude: float
    observed_at: int

    def __post_init__(self) -> None:
        _finite("latitude", self.latitude)
        _finite("longitude", self.longitude)
        if not -90.0 <= self.latitude <= 90.0:
            raise ValueError(f"latitude out of range: {self.latitude}")
        if not -180.0 <= self.longitude <= 180.0:
            raise ValueError(f"longitude out of range: {self.longitude}")


@dataclass(frozen=True)
class EnvFrame:
    """One frame of the 11-channel motion/environment sensor module.

    Channels map to the S1..S11 slot codes: uv_range (S1), three geomagnetic
    ranges in g (S2-S4), three geomagnetic resolutions in microtesla (S5-S7),
    ambient_light (S8), pressure (S9), temperature (S10), humidity (S11).
    """

    uv_range: float  # mW/cm^2
    geomag_range_g1: float
    geomag_range_g2: float
    geomag_range_g3: float
    geomag_res_ut1: float
    geomag_res_ut2: float
    geomag_res_ut3: float
    ambient_light: float  # Lx
    pressure: float  # hPa
    temperature: float  # degrees C
    humidity: float  # %RH
    observed_at: int

    def __post_init__(self) -> None:
        for name in (
            "uv_range", "geomag_range_g1", "geomag_range_g2", "geomag_range_g3",
            "geomag_res_ut1", "geomag_res_ut2", "geomag_res_ut3",
            "ambient_light", "pressure", "temperature", "humidity",
        ):
            _finite(name, getattr(self, name))
        if self.uv_range < 0:
            raise ValueError("uv_range must be >= 0")
        if self.ambient_light < 0:
            raise ValueError("ambient_light must be >= 0")
        if self.pressure <= 0:
            raise ValueError("pressure must be > 0")
        if not 0.0 <= self.humidity <= 100.0:
            raise ValueError(f"humidity out of range: {self.humidity}")

    def channels(self) -> tuple[float, ...]:
        """The 11 measurement channels in S1..S11 order."""
        return (
            self.uv_range,
            self.geomag_range_g1, self.geomag_range_g2, self.geomag_range_g3,
            self.geomag_res_ut1, self.geomag_res_ut2, self.geomag_res_ut3,
            self.ambient_light, self.pressure, self.temperature, self.humidity,
        )


@dataclass(frozen=True)
class WeatherSnapshot:
    """The 15 weather-service parameters (A1..A15); None marks a parameter the
    payload failed to deliver. observed_at/source are freshness metadata, not
    parameters."""

    country_name: str | None = None          # A1
    location_name: str | None = None         # A2
    weather: str | None = None               # A3
    sunset_time: int | None = None           # A4, unix seconds
    sunrise_time: int | None = None          # A5, unix seconds
    current_time: int | None = None          # A6, unix seconds
    temp_min: float | None = None            # A7, degrees C
    temp_max: float | None = None            # A8, degrees C
    pressure: float | None = None            # A9, hPa
    temp_main: float | None = None           # A10, degrees C
    humidity: float | None = None            # A11, %
    weather_description: str | None = None   # A12
    cloudiness: float | None = None          # A13, %
    wind_direction: float | None = None      # A14, degrees [0, 360)
    wind_speed: float | None = None          # A15, m/s
    observed_at: int = 0
    source: str = "live"  # live | fixture

    def __post_init__(self) -> None:
        if self.wind_direction is not None and not 0.0 <= self.wind_direction < 360.0:
            raise ValueError(f"wind_direction out of range: {self.wind_direction}")
        if self.wind_speed is not None and self.wind_speed < 0:
            raise ValueError("wind_speed must be >= 0")
        if (
            self.temp_min is not None
            and self.temp_main is not None
            and self.temp_max is not None
            and not (self.temp_min <= self.temp_main <= self.temp_max)
        ):
            raise ValueError("temperatures must satisfy temp_min <= temp_main <= temp_max")

    def parameters(self) -> tuple:
        """The 15 parameters in A1..A15 order (None where missing)."""
        return (
            self.country_name, self.location_name, self.weather,
            self.sunset_time, self.sunrise_time, self.current_time,
            self.temp_min, self.temp_max, self.pressure, self.temp_main,
            self.humidity, self.weather_description, self.cloudiness,
            self.wind_direction, self.wind_speed,
        )


@dataclass(frozen=True)
class SensorSnapshot:
    """Per-source latest readings joined at one instant (a behavior click)."""

    beacons: tuple[BeaconReading, ...] = ()
    gps: GpsFix | None = None
    env: EnvFrame | None = None
    weather: WeatherSnapshot | None = None
    assembled_at: int = 0

    def __post_init__(self) -> None:
        for r in self.beacons:
            if r.observed_at > self.assembled_at:
                raise ValueError("beacon reading newer than assembled_at")
        for r in (self.gps, self.env, self.weather):
            if r is not None and r.observed_at > self.assembled_at:
                raise ValueError("reading newer than assembled_at")


def nearest_beacon(readings) -> BeaconReading | None:
    """Strongest-RSSI reading; ties broken by lexicographically smallest uuid."""
    best = None
    for r in readings:
        if best is None or (-r.rssi, r.uuid) < (-best.rssi, best.uuid):
            best = r
    return best
