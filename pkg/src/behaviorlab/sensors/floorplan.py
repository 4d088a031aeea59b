"""2-D floor plan: axis-aligned rooms, attenuating wall segments, beacon spots."""

from __future__ import annotations

import math
from dataclasses import dataclass

Point = tuple[float, float]


@dataclass(frozen=True)
class Room:
    room_id: str
    x0: float
    y0: float
    x1: float
    y1: float

    def __post_init__(self) -> None:
        if not (self.x0 < self.x1 and self.y0 < self.y1):
            raise ValueError(f"degenerate room {self.room_id}")

    def contains(self, x: float, y: float) -> bool:
        return self.x0 <= x <= self.x1 and self.y0 <= y <= self.y1

    @property
    def center(self) -> Point:
        return ((self.x0 + self.x1) / 2.0, (self.y0 + self.y1) / 2.0)


@dataclass(frozen=True)
class Wall:
    x0: float
    y0: float
    x1: float
    y1: float
    attenuation_db: float

    def __post_init__(self) -> None:
        if self.attenuation_db < 0:
            raise ValueError("attenuation_db must be >= 0")


@dataclass(frozen=True)
class BeaconPlacement:
    uuid: str
    beacon_name: str
    x: float
    y: float
    tx_power_at_1m: float  # dBm

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError("placement coordinates must be finite")
        if not -80.0 <= self.tx_power_at_1m <= -40.0:
            raise ValueError(f"tx_power_at_1m out of range: {self.tx_power_at_1m}")


def _orient(ax: float, ay: float, bx: float, by: float, cx: float, cy: float) -> float:
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)


def _on_segment(ax, ay, bx, by, px, py) -> bool:
    return min(ax, bx) <= px <= max(ax, bx) and min(ay, by) <= py <= max(ay, by)


def segments_intersect(p1: Point, p2: Point, q1: Point, q2: Point) -> bool:
    """True when segment p1-p2 touches or crosses segment q1-q2."""
    d1 = _orient(*q1, *q2, *p1)
    d2 = _orient(*q1, *q2, *p2)
    d3 = _orient(*p1, *p2, *q1)
    d4 = _orient(*p1, *p2, *q2)
    if ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0)) and d1 != 0 and d2 != 0 and d3 != 0 and d4 != 0:
        return True
    # Degenerate contact counts as a crossing (conservative: attenuation applies).
    if d1 == 0 and _on_segment(*q1, *q2, *p1):
        return True
    if d2 == 0 and _on_segment(*q1, *q2, *p2):
        return True
    if d3 == 0 and _on_segment(*p1, *p2, *q1):
        return True
    if d4 == 0 and _on_segment(*p1, *p2, *q2):
        return True
    return False


@dataclass(frozen=True)
class FloorPlan:
    rooms: tuple[Room, ...]
    walls: tuple[Wall, ...]

    def room_of(self, x: float, y: float) -> Room | None:
        for room in self.rooms:
            if room.contains(x, y):
                return room
        return None

    def validate_placement(self, placement: BeaconPlacement) -> Room:
        inside = [r for r in self.rooms if r.contains(placement.x, placement.y)]
        if len(inside) != 1:
            raise ValueError(
                f"beacon {placement.beacon_name} must lie inside exactly one room, "
                f"found {len(inside)}"
            )
        return inside[0]

    def attenuation_between(self, a: Point, b: Point) -> float:
        """Total wall attenuation (dB) along the straight path a-b."""
        total = 0.0
        for wall in self.walls:
            if segments_intersect(a, b, (wall.x0, wall.y0), (wall.x1, wall.y1)):
                total += wall.attenuation_db
        return total


def grid_plan(
    rows: int,
    cols: int,
    room_w: float = 6.0,
    room_h: float = 6.0,
    wall_db: float = 15.0,
) -> FloorPlan:
    """rows x cols grid of identical rooms separated by single attenuating walls."""
    rooms = []
    for r in range(rows):
        for c in range(cols):
            rooms.append(
                Room(
                    room_id=f"room-{r}{c}",
                    x0=c * room_w,
                    y0=r * room_h,
                    x1=(c + 1) * room_w,
                    y1=(r + 1) * room_h,
                )
            )
    walls = []
    for c in range(1, cols):  # internal vertical boundaries, one segment per row
        for r in range(rows):
            walls.append(Wall(c * room_w, r * room_h, c * room_w, (r + 1) * room_h, wall_db))
    for r in range(1, rows):  # internal horizontal boundaries, one segment per column
        for c in range(cols):
            walls.append(Wall(c * room_w, r * room_h, (c + 1) * room_w, r * room_h, wall_db))
    return FloorPlan(rooms=tuple(rooms), walls=tuple(walls))


def center_placements(plan: FloorPlan, tx_power_at_1m: float = -59.0) -> tuple[BeaconPlacement, ...]:
    """One beacon at each room's center, named after the room."""
    placements = []
    for i, room in enumerate(plan.rooms, start=1):
        x, y = room.center
        placements.append(
            BeaconPlacement(
                uuid=f"b{i:04d}-0000-0000-0000-000000000000",
                beacon_name=f"iB-{room.room_id}",
                x=x,
                y=y,
                tx_power_at_1m=tx_power_at_1m,
            )
        )
    return tuple(placements)
