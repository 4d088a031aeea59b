"""Sensor sources: simulated beacon field, floor plans, snapshots, weather."""

from ..model.readings import SensorSnapshot, nearest_beacon
from .floorplan import (
    BeaconPlacement,
    FloorPlan,
    Room,
    Wall,
    center_placements,
    grid_plan,
    segments_intersect,
)
from .propagation import (
    DEFAULT_DETECT_FLOOR_DBM,
    PATH_LOSS_EXPONENT,
    rssi_at,
    scan_beacons,
)
from .snapshot import (
    DEFAULT_FRESHNESS_WINDOW_MS,
    SensorHub,
    SourcesLatest,
    assemble_snapshot,
)
from .weather import WeatherClient, WeatherUnavailableError, fixture_key, parse_payload
