"""Canonical line-delimited encoding for records and score sheets.

One JSON object per line, UTF-8, compact separators, fixed key order. Every
record line carries the five metadata keys plus all 31 slot codes; JSON null
is the explicit error marker for a slot. The byte output is deterministic for
identical inputs, which the export and store formats rely on.
"""

from __future__ import annotations

import json
from typing import Iterable, Iterator

from .records import DataRecord, ERROR, SLOT_CODES
from .taxonomy import RaterScoreSheet, SCORE_KEYS

METADATA_KEYS = ("event_id", "session_id", "behavior_name", "category_name", "clicked_at")
RECORD_KEYS = METADATA_KEYS + SLOT_CODES

_STRING_SLOTS = {"iB1", "iB3", "A1", "A2", "A3", "A12"}


def record_to_dict(record: DataRecord) -> dict:
    out: dict = {
        "event_id": record.event_id,
        "session_id": record.session_id,
        "behavior_name": record.behavior_name,
        "category_name": record.category_name,
        "clicked_at": record.clicked_at,
    }
    for code in SLOT_CODES:
        value = record.slots[code]
        out[code] = None if value is ERROR else value
    return out


def record_to_line(record: DataRecord) -> str:
    return json.dumps(record_to_dict(record), ensure_ascii=False, separators=(",", ":"))


def schema_problems(obj) -> list[str]:
    """Field-level diagnostics for a decoded record object; empty means valid."""
    if not isinstance(obj, dict):
        return ["record must be an object"]
    problems = []
    for key in METADATA_KEYS:
        if key not in obj:
            problems.append(f"missing metadata key: {key}")
    for key in ("event_id", "session_id", "behavior_name", "category_name"):
        if key in obj and not (isinstance(obj[key], str) and obj[key]):
            problems.append(f"{key} must be a non-empty string")
    if "clicked_at" in obj and not isinstance(obj["clicked_at"], int):
        problems.append("clicked_at must be an integer timestamp (ms)")
    for code in SLOT_CODES:
        if code not in obj:
            problems.append(f"missing slot: {code}")
            continue
        value = obj[code]
        if value is None:
            continue  # explicit error marker
        if code in _STRING_SLOTS:
            if not isinstance(value, str):
                problems.append(f"slot {code} must be a string or null")
        elif not isinstance(value, (int, float)) or isinstance(value, bool):
            problems.append(f"slot {code} must be numeric or null")
    known = set(RECORD_KEYS)
    for key in obj:
        if key not in known:
            problems.append(f"unknown key: {key}")
    return problems


def record_from_dict(obj: dict) -> DataRecord:
    problems = schema_problems(obj)
    if problems:
        raise ValueError("; ".join(problems))
    slots = {code: (ERROR if obj[code] is None else obj[code]) for code in SLOT_CODES}
    return DataRecord(
        event_id=obj["event_id"],
        session_id=obj["session_id"],
        behavior_name=obj["behavior_name"],
        category_name=obj["category_name"],
        clicked_at=obj["clicked_at"],
        slots=slots,
    )


def record_from_line(line: str) -> DataRecord:
    return record_from_dict(json.loads(line))


def records_to_text(records: Iterable[DataRecord]) -> str:
    return "".join(record_to_line(r) + "\n" for r in records)


def records_from_lines(lines: Iterable[str]) -> Iterator[DataRecord]:
    for line in lines:
        line = line.strip()
        if line:
            yield record_from_line(line)


def sheet_to_lines(sheet: RaterScoreSheet) -> Iterator[str]:
    for event_id in sheet.event_ids:
        counts = sheet.counts(event_id)
        obj = {"rater_id": sheet.rater_id, "event_id": event_id}
        obj.update({k: counts[k] for k in SCORE_KEYS})
        yield json.dumps(obj, ensure_ascii=False, separators=(",", ":"))


def sheet_to_text(sheet: RaterScoreSheet) -> str:
    return "".join(line + "\n" for line in sheet_to_lines(sheet))


def sheet_from_lines(lines: Iterable[str], rater_id: str | None = None) -> RaterScoreSheet:
    sheet: RaterScoreSheet | None = None
    for lineno, line in enumerate(lines, start=1):
        line = line.strip()
        if not line:
            continue
        obj = json.loads(line)
        try:
            rid = obj["rater_id"]
            event_id = obj["event_id"]
            counts = {k: obj[k] for k in SCORE_KEYS if k in obj}
        except KeyError as exc:
            raise ValueError(f"line {lineno}: missing key {exc}") from None
        if rater_id is not None and rid != rater_id:
            continue
        if sheet is None:
            sheet = RaterScoreSheet(rater_id=rid)
        elif rid != sheet.rater_id:
            raise ValueError(
                f"line {lineno}: mixed rater ids ({rid!r} vs {sheet.rater_id!r}); "
                "pass rater_id to select one"
            )
        sheet.set_counts(event_id, counts)
    if sheet is None:
        raise ValueError("no score lines found" + (f" for rater {rater_id!r}" if rater_id else ""))
    return sheet
