"""Deterministic fixture generators.

Raw subject data is unavailable, so the bundled fixtures are synthetic logs
constructed to have exactly the published summary statistics. Everything here
is pure and seedless: the same fixture bytes come out every time.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..analysis.alignment import CandidateEvent, ReferenceEntry
from ..model.behaviors import BehaviorDefinition, BehaviorRegistry
from ..model.records import DataRecord, ERROR, SLOT_CODES
from ..model.taxonomy import RaterScoreSheet, SCORE_KEYS
from ..sensors.floorplan import BeaconPlacement, FloorPlan, center_placements, grid_plan
from . import published

FIXTURE_EPOCH_MS = 1_577_836_800_000  # 2020-01-01T00:00:00Z

_VOCABULARY = (
    "Hungry", "Thirsty", "Want toilet", "Hello", "Goodbye",
    "Play more", "Uncomfortable", "Tired",
)


def default_registry() -> BehaviorRegistry:
    rows = (
        (0, "Hungry", "Needs"),
        (1, "Thirsty", "Needs"),
        (2, "Want toilet", "Needs"),
        (0, "Hello", "Social"),
        (1, "Goodbye", "Social"),
        (2, "Play more", "Social"),
        (0, "Uncomfortable", "Discomfort"),
        (1, "Tired", "Discomfort"),
    )
    return BehaviorRegistry().replace_all(
        BehaviorDefinition(code, name, category) for code, name, category in rows
    )


# -- method-comparison logs --------------------------------------------------

@dataclass(frozen=True)
class AlignmentFixture:
    reference: tuple[ReferenceEntry, ...]
    app: tuple[CandidateEvent, ...]
    handwritten: tuple[CandidateEvent, ...]


def _other_name(name: str) -> str:
    i = _VOCABULARY.index(name)
    return _VOCABULARY[(i + 1) % len(_VOCABULARY)]


def alignment_fixture() -> AlignmentFixture:
    """Reference log plus two candidate logs with the published label counts.

    Entries sit 30 s apart (far beyond the 5 s tolerance) so each candidate
    can only pair with its own reference entry.
    """
    n = published.ALIGNMENT_REFERENCE_COUNT
    reference = tuple(
        ReferenceEntry(
            behavior_name=_VOCABULARY[i % len(_VOCABULARY)],
            occurred_at=FIXTURE_EPOCH_MS + i * 30_000,
        )
        for i in range(n)
    )

    def candidates(correct: int, incorrect: int) -> tuple[CandidateEvent, ...]:
        out = []
        for i in range(correct):
            ref = reference[i]
            out.append(CandidateEvent(ref.behavior_name, ref.occurred_at))
        for i in range(correct, correct + incorrect):
            ref = reference[i]
            out.append(CandidateEvent(_other_name(ref.behavior_name), ref.occurred_at + 1_000))
        return tuple(out)

    return AlignmentFixture(
        reference=reference,
        app=candidates(published.APP_CORRECT, published.APP_INCORRECT),
        handwritten=candidates(published.HANDWRITTEN_CORRECT, published.HANDWRITTEN_INCORRECT),
    )


# -- completeness records ------------------------------------------------------

_SLOT_FILL = {
    "iB1": "a0000000-0000-0000-0000-0000000000ff",
    "iB2": -68,
    "iB3": "iB-room-00",
    "GPS1": 132.78,
    "GPS2": 34.79,
    "S1": 0.4, "S2": 0.12, "S3": -0.33, "S4": 0.95,
    "S5": 31.0, "S6": -12.5, "S7": 44.2,
    "S8": 420.0, "S9": 1013.2, "S10": 21.5, "S11": 48.0,
    "A1": "JP", "A2": "Matsuyama", "A3": "Clouds",
    "A4": 1577871000, "A5": 1577833200, "A6": 1577850000,
    "A7": 4.0, "A8": 9.0, "A9": 1020.0, "A10": 6.5, "A11": 62.0,
    "A12": "scattered clouds", "A13": 40.0, "A14": 250.0, "A15": 3.6,
}


def completeness_fixture() -> list[DataRecord]:
    """327 records whose per-type presence counts equal the published figures.

    Type with count k is present in the first k records, so per-record slot
    sets differ but the audit counts land exactly.
    """
    total = published.COMPLETENESS_TOTAL
    records = []
    for i in range(total):
        slots = {
            code: (_SLOT_FILL[code] if i < published.COMPLETENESS_PRESENT[code] else ERROR)
            for code in SLOT_CODES
        }
        name = _VOCABULARY[i % len(_VOCABULARY)]
        records.append(
            DataRecord(
                event_id=f"cmp:{i:04d}",
                session_id="fixture-completeness",
                behavior_name=name,
                category_name="Needs" if name in ("Hungry", "Thirsty", "Want toilet") else "Social",
                clicked_at=FIXTURE_EPOCH_MS + i * 60_000,
                slots=slots,
            )
        )
    return records


# -- consensus score sheet -----------------------------------------------------

def consensus_fixture() -> RaterScoreSheet:
    """Final (consensus) sheet whose totals equal the published frequency table.

    Each category's movements are laid out consecutively modulo the event
    count, which tiles all 676 movements evenly over the 291 events.
    """
    n_events = published.FREQUENCY_EVENT_COUNT
    event_ids = [f"beh-{i + 1:04d}" for i in range(n_events)]
    sheet = RaterScoreSheet(rater_id="consensus")
    for event_id in event_ids:
        sheet.set_counts(event_id, {})
    cursor = 0
    for key in SCORE_KEYS:
        count = published.FREQUENCY_COUNTS[key]
        for i in range(count):
            sheet.add_count(event_ids[(cursor + i) % n_events], key)
        cursor += count
    return sheet


# -- floor plan for proximity scenarios -----------------------------------------

def eight_room_floor(
    wall_db: float = 15.0, tx_power_at_1m: float = -59.0
) -> tuple[FloorPlan, tuple[BeaconPlacement, ...]]:
    """2x4 grid of 6 m classrooms with one centered beacon per room."""
    plan = grid_plan(rows=2, cols=4, room_w=6.0, room_h=6.0, wall_db=wall_db)
    return plan, center_placements(plan, tx_power_at_1m=tx_power_at_1m)


def default_weather_payload() -> dict:
    """Stored current-conditions payload for the bundled coordinates (34.79, 132.78)."""
    return {
        "coord": {"lon": 132.78, "lat": 34.79},
        "weather": [{"main": "Clouds", "description": "scattered clouds"}],
        "main": {
            "temp": 6.5,
            "temp_min": 4.0,
            "temp_max": 9.0,
            "pressure": 1020,
            "humidity": 62,
        },
        "wind": {"speed": 3.6, "deg": 250},
        "clouds": {"all": 40},
        "dt": 1577850000,
        "sys": {"country": "JP", "sunrise": 1577833200, "sunset": 1577871000},
        "name": "Matsuyama",
    }
