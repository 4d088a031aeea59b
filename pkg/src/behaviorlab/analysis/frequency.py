"""Movement frequency tables and the two-rater consensus merge."""

from __future__ import annotations

from dataclasses import dataclass

from ..model.taxonomy import MAJORS, RaterScoreSheet, SCORE_KEYS


class UnresolvedDisagreementError(ValueError):
    def __init__(self, event_ids):
        self.event_ids = tuple(event_ids)
        super().__init__(f"unresolved rater disagreement on events: {', '.join(self.event_ids)}")


@dataclass(frozen=True)
class FrequencyCell:
    count: int
    percent: float  # of the grand total


@dataclass(frozen=True)
class FrequencyTable:
    grand_total: int
    majors: dict[str, FrequencyCell]
    minors: dict[str, FrequencyCell]  # keyed by SCORE_KEYS (includes "c")


def frequency_table(final_scores: RaterScoreSheet) -> FrequencyTable:
    """Total count per countable key and per major, with percents of the grand total."""
    totals = {k: 0 for k in SCORE_KEYS}
    for event_id in final_scores.event_ids:
        counts = final_scores.counts(event_id)
        for k in SCORE_KEYS:
            totals[k] += counts[k]

    major_totals = {}
    for major in MAJORS:
        if major.code == "c":
            major_totals["c"] = totals["c"]
        else:
            major_totals[major.code] = sum(totals[m] for m in major.minors)

    grand = sum(major_totals.values())

    def cell(count: int) -> FrequencyCell:
        return FrequencyCell(count=count, percent=(100.0 * count / grand) if grand else 0.0)

    return FrequencyTable(
        grand_total=grand,
        majors={code: cell(major_totals[code]) for code in major_totals},
        minors={k: cell(totals[k]) for k in SCORE_KEYS},
    )


def consensus_merge(
    sheet1: RaterScoreSheet,
    sheet2: RaterScoreSheet,
    resolutions: dict[str, dict[str, int]] | None = None,
    rater_id: str = "consensus",
) -> RaterScoreSheet:
    """Copy agreed events; disagreed events must appear in resolutions."""
    resolutions = resolutions or {}
    event_ids = list(dict.fromkeys(list(sheet1.event_ids) + list(sheet2.event_ids)))

    unresolved = []
    merged = RaterScoreSheet(rater_id=rater_id)
    for event_id in event_ids:
        c1 = sheet1.counts(event_id) if event_id in sheet1.scores else None
        c2 = sheet2.counts(event_id) if event_id in sheet2.scores else None
        if c1 is not None and c1 == c2:
            merged.set_counts(event_id, c1)
        elif event_id in resolutions:
            merged.set_counts(event_id, resolutions[event_id])
        else:
            unresolved.append(event_id)
    if unresolved:
        raise UnresolvedDisagreementError(unresolved)
    return merged
