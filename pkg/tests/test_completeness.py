import random

import pytest

from behaviorlab.analysis.completeness import (
    EmptyAuditError,
    completeness_audit,
    drop_all_error_records,
)
from behaviorlab.model.records import DataRecord, ERROR, SLOT_CODES, SOURCE_SLOTS


def record_with(present, event_id="e", clicked_at=0):
    slots = {c: (1 if c in present else ERROR) for c in SLOT_CODES}
    for c in ("iB1", "iB3", "A1", "A2", "A3", "A12"):
        if c in present:
            slots[c] = "x"
    return DataRecord(event_id, "s", "b", "cat", clicked_at, slots)


def test_counting_oracle_a14():
    records = [
        record_with(set(SLOT_CODES) if i < 7 else set(SLOT_CODES) - {"A14"}, event_id=f"e{i}")
        for i in range(10)
    ]
    audit = completeness_audit(records)
    assert audit.per_type["A14"].count == 7
    assert audit.per_type["A14"].percent == pytest.approx(70.0)
    assert audit.per_type["A13"].percent == pytest.approx(100.0)


def test_everything_present_is_100_percent():
    records = [record_with(set(SLOT_CODES), event_id=f"e{i}") for i in range(5)]
    audit = completeness_audit(records)
    assert all(t.percent == pytest.approx(100.0) for t in audit.per_type.values())
    assert all(s.mean_percent == pytest.approx(100.0) for s in audit.per_source.values())


def test_empty_input_raises():
    with pytest.raises(EmptyAuditError):
        completeness_audit([])


def test_source_mean_equals_mean_of_type_percents():
    rng = random.Random(44)
    records = []
    for i in range(40):
        present = {c for c in SLOT_CODES if rng.random() < 0.7}
        present.add("GPS1")  # keep every record auditable
        records.append(record_with(present, event_id=f"e{i}"))
    audit = completeness_audit(records)
    for source, codes in SOURCE_SLOTS.items():
        type_mean = sum(audit.per_type[c].percent for c in codes) / len(codes)
        assert audit.per_source[source].mean_percent == pytest.approx(type_mean, rel=1e-12)
        assert 0.0 <= audit.per_source[source].mean_percent <= 100.0
    for t in audit.per_type.values():
        assert 0.0 <= t.percent <= 100.0


def test_drop_all_error_records():
    empty = record_with(set(), event_id="empty")
    full = record_with(set(SLOT_CODES), event_id="full")
    assert drop_all_error_records([empty, full]) == [full]
