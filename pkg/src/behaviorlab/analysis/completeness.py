"""Per-type and per-source transmission completeness over collected records."""

from __future__ import annotations

from dataclasses import dataclass

from ..model.records import DataRecord, SLOT_CODES, SOURCES, SOURCE_SLOTS


class EmptyAuditError(ValueError):
    """No records to audit."""


@dataclass(frozen=True)
class TypeCompleteness:
    code: str
    count: int
    percent: float


@dataclass(frozen=True)
class SourceCompleteness:
    source: str
    mean_count: float
    mean_percent: float


@dataclass(frozen=True)
class CompletenessAudit:
    total_records: int
    per_type: dict[str, TypeCompleteness]
    per_source: dict[str, SourceCompleteness]


def drop_all_error_records(records) -> list[DataRecord]:
    """Keep only records with at least one value slot (audit precondition)."""
    return [r for r in records if r.n_values > 0]


def completeness_audit(records) -> CompletenessAudit:
    """Count value slots per data type; source means average their types' counts.

    Callers must pre-filter to records with >= 1 value slot; an empty input
    raises EmptyAuditError.
    """
    records = list(records)
    if not records:
        raise EmptyAuditError("no records with associated data")
    total = len(records)

    counts = {code: 0 for code in SLOT_CODES}
    for record in records:
        for code in SLOT_CODES:
            if record.present(code):
                counts[code] += 1

    per_type = {
        code: TypeCompleteness(code=code, count=counts[code], percent=100.0 * counts[code] / total)
        for code in SLOT_CODES
    }
    per_source = {}
    for source in SOURCES:
        codes = SOURCE_SLOTS[source]
        mean_count = sum(counts[c] for c in codes) / len(codes)
        per_source[source] = SourceCompleteness(
            source=source,
            mean_count=mean_count,
            mean_percent=100.0 * mean_count / total,
        )
    return CompletenessAudit(total_records=total, per_type=per_type, per_source=per_source)
