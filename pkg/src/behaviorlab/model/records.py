"""The 31-slot flattened record one behavior click produces.

Slot codes follow the wire naming: iB1-iB3 (beacon uuid/rssi/name),
GPS1-GPS2 (longitude/latitude), S1-S11 (environment channels), A1-A15
(weather parameters). Every record carries all 31 slots; a slot is either a
value or the explicit ERROR marker, never absent.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping

from .behaviors import BehaviorDefinition
from .readings import SensorSnapshot, nearest_beacon

BEACON_SLOTS = ("iB1", "iB2", "iB3")
GPS_SLOTS = ("GPS1", "GPS2")  # GPS1 = longitude, GPS2 = latitude
ENV_SLOTS = tuple(f"S{i}" for i in range(1, 12))
WEATHER_SLOTS = tuple(f"A{i}" for i in range(1, 16))
SLOT_CODES = BEACON_SLOTS + GPS_SLOTS + ENV_SLOTS + WEATHER_SLOTS

SOURCE_SLOTS = {
    "beacon": BEACON_SLOTS,
    "gps": GPS_SLOTS,
    "env": ENV_SLOTS,
    "weather": WEATHER_SLOTS,
}
SOURCES = tuple(SOURCE_SLOTS)

assert len(SLOT_CODES) == 31


class _SlotError:
    """Singleton marker: the source failed to deliver this slot."""

    _instance = None
    __slots__ = ()

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "ERROR"


ERROR = _SlotError()


@dataclass(frozen=True)
class DataRecord:
    event_id: str
    session_id: str
    behavior_name: str
    category_name: str
    clicked_at: int  # epoch ms
    slots: Mapping[str, object]

    def __post_init__(self) -> None:
        missing = [c for c in SLOT_CODES if c not in self.slots]
        extra = [c for c in self.slots if c not in SLOT_CODES]
        if missing or extra:
            raise ValueError(f"bad slot set: missing={missing} extra={extra}")
        object.__setattr__(self, "slots", MappingProxyType(dict(self.slots)))

    def present(self, code: str) -> bool:
        return self.slots[code] is not ERROR

    def value_slots(self) -> tuple[str, ...]:
        return tuple(c for c in SLOT_CODES if self.slots[c] is not ERROR)

    def error_slots(self) -> tuple[str, ...]:
        return tuple(c for c in SLOT_CODES if self.slots[c] is ERROR)

    @property
    def n_values(self) -> int:
        return len(self.value_slots())


def flatten_record(
    event_id: str,
    session_id: str,
    behavior: BehaviorDefinition,
    clicked_at: int,
    snapshot: SensorSnapshot,
) -> DataRecord:
    """Join one click with the snapshot's sources into a 31-slot record.

    Absent sources become ERROR slots; a present weather snapshot can still
    carry per-parameter errors (None parameters map to ERROR).
    """
    slots: dict[str, object] = {c: ERROR for c in SLOT_CODES}

    beacon = nearest_beacon(snapshot.beacons)
    if beacon is not None:
        slots["iB1"] = beacon.uuid
        slots["iB2"] = beacon.rssi
        slots["iB3"] = beacon.beacon_name

    if snapshot.gps is not None:
        slots["GPS1"] = snapshot.gps.longitude
        slots["GPS2"] = snapshot.gps.latitude

    if snapshot.env is not None:
        for code, value in zip(ENV_SLOTS, snapshot.env.channels()):
            slots[code] = value

    if snapshot.weather is not None:
        for code, value in zip(WEATHER_SLOTS, snapshot.weather.parameters()):
            if value is not None:
                slots[code] = value

    return DataRecord(
        event_id=event_id,
        session_id=session_id,
        behavior_name=behavior.behavior_name,
        category_name=behavior.category_name,
        clicked_at=clicked_at,
        slots=slots,
    )
