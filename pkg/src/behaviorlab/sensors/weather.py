"""Weather client for the 15-parameter current-conditions source.

Live mode queries an OpenWeatherMap-compatible endpoint; fixture mode serves
stored payloads keyed by coordinates rounded to 2 decimals; off mode always
reports the source unavailable. Successful snapshots are cached for 60 s and
the cache age counts toward freshness (observed_at is the fetch time, not the
serve time).
"""

from __future__ import annotations

import json
import os
import time
from typing import Callable

from ..model.readings import WeatherSnapshot

DEFAULT_ENDPOINT = "https://api.openweathermap.org/data/2.5/weather"
API_KEY_ENV = "OPENWEATHERMAP_API_KEY"
CACHE_TTL_MS = 60_000


class WeatherUnavailableError(RuntimeError):
    """The weather source cannot produce a snapshot right now."""


def fixture_key(lat: float, lon: float) -> str:
    return f"{lat:.2f},{lon:.2f}"


def _get(payload: dict, *path):
    cur = payload
    for part in path:
        if isinstance(cur, dict) and part in cur:
            cur = cur[part]
        elif isinstance(cur, list) and isinstance(part, int) and len(cur) > part:
            cur = cur[part]
        else:
            return None
    return cur


def parse_payload(payload: dict, observed_at: int, source: str) -> WeatherSnapshot:
    """Map a current-weather payload onto the 15 parameters; absent fields stay None."""
    wind_dir = _get(payload, "wind", "deg")
    if wind_dir is not None:
        wind_dir = float(wind_dir) % 360.0
    return WeatherSnapshot(
        country_name=_get(payload, "sys", "country"),
        location_name=_get(payload, "name"),
        weather=_get(payload, "weather", 0, "main"),
        sunset_time=_get(payload, "sys", "sunset"),
        sunrise_time=_get(payload, "sys", "sunrise"),
        current_time=_get(payload, "dt"),
        temp_min=_get(payload, "main", "temp_min"),
        temp_max=_get(payload, "main", "temp_max"),
        pressure=_get(payload, "main", "pressure"),
        temp_main=_get(payload, "main", "temp"),
        humidity=_get(payload, "main", "humidity"),
        weather_description=_get(payload, "weather", 0, "description"),
        cloudiness=_get(payload, "clouds", "all"),
        wind_direction=wind_dir,
        wind_speed=_get(payload, "wind", "speed"),
        observed_at=observed_at,
        source=source,
    )


class WeatherClient:
    def __init__(
        self,
        mode: str = "fixture",
        fixture_path: str | None = None,
        fixture_data: dict | None = None,
        api_key: str | None = None,
        endpoint: str = DEFAULT_ENDPOINT,
        cache_ttl_ms: int = CACHE_TTL_MS,
        clock: Callable[[], int] | None = None,
        timeout_s: float = 5.0,
    ):
        if mode not in ("live", "fixture", "off"):
            raise ValueError(f"unknown weather mode: {mode}")
        self.mode = mode
        self.endpoint = endpoint
        self.timeout_s = timeout_s
        self.cache_ttl_ms = cache_ttl_ms
        self._clock = clock or (lambda: int(time.time() * 1000))
        self._api_key = api_key if api_key is not None else os.environ.get(API_KEY_ENV)
        self._fixtures: dict = dict(fixture_data) if fixture_data else {}
        if fixture_path:
            with open(fixture_path, "r", encoding="utf-8") as fp:
                self._fixtures.update(json.load(fp))
        self._cache: dict[str, WeatherSnapshot] = {}

    def fetch(self, lat: float, lon: float) -> WeatherSnapshot:
        """Current conditions at (lat, lon); raises WeatherUnavailableError."""
        if not (-90.0 <= lat <= 90.0 and -180.0 <= lon <= 180.0):
            raise ValueError(f"invalid coordinates: ({lat}, {lon})")
        if self.mode == "off":
            raise WeatherUnavailableError("weather source disabled")

        key = fixture_key(lat, lon)
        now = self._clock()
        cached = self._cache.get(key)
        if cached is not None and now - cached.observed_at <= self.cache_ttl_ms:
            return cached

        if self.mode == "fixture":
            payload = self._fixtures.get(key)
            if payload is None:
                raise WeatherUnavailableError(f"no stored payload for {key}")
            snap = parse_payload(payload, observed_at=now, source="fixture")
        else:
            snap = parse_payload(self._fetch_live(lat, lon), observed_at=now, source="live")
        self._cache[key] = snap
        return snap

    def _fetch_live(self, lat: float, lon: float) -> dict:
        import requests

        if not self._api_key:
            raise WeatherUnavailableError(f"no API key ({API_KEY_ENV} unset)")
        try:
            resp = requests.get(
                self.endpoint,
                params={"lat": lat, "lon": lon, "appid": self._api_key, "units": "metric"},
                timeout=self.timeout_s,
            )
            resp.raise_for_status()
            payload = resp.json()
        except Exception as exc:
            raise WeatherUnavailableError(f"weather endpoint failure: {exc}") from exc
        if not isinstance(payload, dict):
            raise WeatherUnavailableError("malformed weather payload")
        return payload
