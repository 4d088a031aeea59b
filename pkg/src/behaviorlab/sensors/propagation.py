"""Simulated beacon field: log-distance path loss, wall attenuation, shadowing.

rssi = tx_power_at_1m - 10*n*log10(d / 1m) - sum(wall attenuation) + N(0, sigma)

with path-loss exponent n = 2.0 and d clamped below at 0.1 m. Within 1 m of
the receiver an extra shadowing term models near-phone interference, but only
when noise is enabled at all (sigma = 0 stays exactly deterministic).
"""

from __future__ import annotations

import math
import random
import time

from ..model.readings import BeaconReading, nearest_beacon
from .floorplan import BeaconPlacement, FloorPlan, Point

PATH_LOSS_EXPONENT = 2.0
MIN_DISTANCE_M = 0.1
DEFAULT_DETECT_FLOOR_DBM = -95.0
NEAR_FIELD_RADIUS_M = 1.0
NEAR_FIELD_EXTRA_SIGMA_DB = 4.0

__all__ = [
    "rssi_at",
    "scan_beacons",
    "nearest_beacon",
    "PATH_LOSS_EXPONENT",
    "DEFAULT_DETECT_FLOOR_DBM",
]


def _now_ms() -> int:
    return int(time.time() * 1000)


def _simulated_rssi(
    placement: BeaconPlacement,
    device_pos: Point,
    plan: FloorPlan,
    noise_sigma: float,
    rng: random.Random,
    path_loss_exponent: float,
) -> float:
    dx = placement.x - device_pos[0]
    dy = placement.y - device_pos[1]
    d = max(math.hypot(dx, dy), MIN_DISTANCE_M)
    rssi = placement.tx_power_at_1m - 10.0 * path_loss_exponent * math.log10(d)
    rssi -= plan.attenuation_between((placement.x, placement.y), device_pos)
    if noise_sigma > 0:
        sigma = noise_sigma
        if d < NEAR_FIELD_RADIUS_M:
            sigma += NEAR_FIELD_EXTRA_SIGMA_DB
        rssi += rng.gauss(0.0, sigma)
    return rssi


def rssi_at(
    placement: BeaconPlacement,
    device_pos: Point,
    plan: FloorPlan,
    noise_sigma: float = 0.0,
    rng_seed: int = 0,
    path_loss_exponent: float = PATH_LOSS_EXPONENT,
) -> float:
    """Simulated received power in dBm; deterministic for a given rng_seed."""
    rng = random.Random(rng_seed)
    return _simulated_rssi(placement, device_pos, plan, noise_sigma, rng, path_loss_exponent)


def scan_beacons(
    plan: FloorPlan,
    placements,
    device_pos: Point,
    detect_floor_dbm: float = DEFAULT_DETECT_FLOOR_DBM,
    noise_sigma: float = 0.0,
    rng_seed: int = 0,
    now_ms: int | None = None,
    path_loss_exponent: float = PATH_LOSS_EXPONENT,
) -> list[BeaconReading]:
    """One reading per placement whose simulated rssi clears the detection floor."""
    if not -110.0 <= detect_floor_dbm <= -60.0:
        raise ValueError(f"detect_floor_dbm out of range: {detect_floor_dbm}")
    observed_at = _now_ms() if now_ms is None else now_ms
    rng = random.Random(rng_seed)
    readings = []
    for placement in placements:
        rssi = _simulated_rssi(placement, device_pos, plan, noise_sigma, rng, path_loss_exponent)
        if rssi >= detect_floor_dbm:
            readings.append(
                BeaconReading(
                    uuid=placement.uuid,
                    rssi=min(0, round(rssi)),
                    beacon_name=placement.beacon_name,
                    observed_at=observed_at,
                )
            )
    return readings
