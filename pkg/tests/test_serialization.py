import json

import pytest

from behaviorlab.model.records import ERROR, flatten_record
from behaviorlab.model.readings import SensorSnapshot
from behaviorlab.model.serialization import (
    RECORD_KEYS,
    record_from_line,
    record_to_dict,
    record_to_line,
    records_to_text,
    schema_problems,
    sheet_from_lines,
    sheet_to_text,
)
from behaviorlab.model.taxonomy import RaterScoreSheet, SCORE_KEYS

from conftest import behavior, full_snapshot


def sample_record(weather=True):
    snap = full_snapshot()
    if not weather:
        snap = SensorSnapshot(
            beacons=snap.beacons, gps=snap.gps, env=snap.env, weather=None,
            assembled_at=snap.assembled_at,
        )
    return flatten_record("dev:s1:000001", "s1", behavior(), snap.assembled_at, snap)


def test_line_round_trip_preserves_everything():
    record = sample_record(weather=False)
    clone = record_from_line(record_to_line(record))
    assert clone == record
    assert clone.slots["A1"] is ERROR


def test_canonical_key_order_and_null_errors():
    record = sample_record(weather=False)
    obj = json.loads(record_to_line(record))
    assert list(obj) == list(RECORD_KEYS)
    assert obj["A14"] is None
    assert obj["iB2"] == -60


def test_bytes_are_deterministic():
    records = [sample_record(), sample_record(weather=False)]
    assert records_to_text(records) == records_to_text(records)


def test_schema_problems_name_missing_slots():
    obj = record_to_dict(sample_record())
    del obj["S7"]
    problems = schema_problems(obj)
    assert any("S7" in p for p in problems)
    assert record_to_dict(sample_record()) and not schema_problems(record_to_dict(sample_record()))


def test_schema_problems_flag_types_and_unknown_keys():
    obj = record_to_dict(sample_record())
    obj["iB2"] = "loud"
    obj["bonus"] = 1
    problems = schema_problems(obj)
    assert any("iB2" in p for p in problems)
    assert any("bonus" in p for p in problems)
    obj = record_to_dict(sample_record())
    obj["clicked_at"] = "yesterday"
    assert any("clicked_at" in p for p in schema_problems(obj))


def test_record_from_line_rejects_bad_lines():
    with pytest.raises(ValueError, match="missing slot"):
        record_from_line('{"event_id":"e","session_id":"s","behavior_name":"b",'
                         '"category_name":"c","clicked_at":1}')


def test_sheet_round_trip():
    sheet = RaterScoreSheet(rater_id="rater-a")
    sheet.set_counts("e1", {"a.1": 2, "c": 1})
    sheet.set_counts("e2", {"d.3": 1})
    text = sheet_to_text(sheet)
    lines = text.splitlines()
    assert len(lines) == 2
    first = json.loads(lines[0])
    assert list(first) == ["rater_id", "event_id", *SCORE_KEYS]
    clone = sheet_from_lines(lines)
    assert clone.rater_id == "rater-a"
    assert clone.counts("e1") == sheet.counts("e1")
    assert clone.counts("e2") == sheet.counts("e2")


def test_sheet_from_lines_selects_rater_and_rejects_mixes():
    a = RaterScoreSheet(rater_id="a")
    a.set_counts("e1", {"c": 1})
    b = RaterScoreSheet(rater_id="b")
    b.set_counts("e1", {"c": 2})
    both = sheet_to_text(a) + sheet_to_text(b)
    assert sheet_from_lines(both.splitlines(), rater_id="b").counts("e1")["c"] == 2
    with pytest.raises(ValueError, match="mixed rater ids"):
        sheet_from_lines(both.splitlines())
    with pytest.raises(ValueError, match="no score lines"):
        sheet_from_lines([], rater_id="a")
