import random

import pytest

from behaviorlab.analysis.frequency import (
    UnresolvedDisagreementError,
    consensus_merge,
    frequency_table,
)
from behaviorlab.fixtures.build import consensus_fixture
from behaviorlab.model.taxonomy import MAJORS, RaterScoreSheet, SCORE_KEYS


def test_bundled_consensus_reproduces_published_totals():
    table = frequency_table(consensus_fixture())
    assert table.grand_total == 676
    expected = {
        "a": (104, 15.4), "b": (61, 9.0), "c": (146, 21.6),
        "d": (154, 22.8), "e": (187, 27.7), "f": (24, 3.6),
    }
    for code, (count, percent) in expected.items():
        assert table.majors[code].count == count
        assert table.majors[code].percent == pytest.approx(percent, abs=0.05)


def test_empty_sheet_is_all_zero():
    table = frequency_table(RaterScoreSheet(rater_id="x"))
    assert table.grand_total == 0
    assert all(c.count == 0 and c.percent == 0.0 for c in table.majors.values())


def test_single_event_counting_oracle():
    sheet = RaterScoreSheet(rater_id="x")
    sheet.set_counts("e1", {"d.3": 2, "c": 1})
    table = frequency_table(sheet)
    assert table.grand_total == 3
    assert table.majors["d"].count == 2
    assert table.majors["d"].percent == pytest.approx(100.0 * 2 / 3, abs=1e-9)
    assert table.majors["c"].count == 1
    assert table.majors["c"].percent == pytest.approx(100.0 * 1 / 3, abs=1e-9)


def test_majors_are_sums_of_minors_and_percents_sum_to_100():
    rng = random.Random(18)
    for _ in range(50):
        sheet = RaterScoreSheet(rater_id="x")
        for i in range(rng.randint(1, 30)):
            sheet.set_counts(
                f"e{i}", {k: rng.randint(0, 3) for k in SCORE_KEYS if rng.random() < 0.5}
            )
        table = frequency_table(sheet)
        for major in MAJORS:
            minor_sum = (
                table.minors["c"].count
                if major.code == "c"
                else sum(table.minors[m].count for m in major.minors)
            )
            assert table.majors[major.code].count == minor_sum
        if table.grand_total > 0:
            assert sum(c.percent for c in table.majors.values()) == pytest.approx(100.0, abs=0.1)


# -- consensus merge ---------------------------------------------------------------


def sheets_with_disagreement():
    s1 = RaterScoreSheet(rater_id="r1")
    s2 = RaterScoreSheet(rater_id="r2")
    s1.set_counts("agree", {"c": 1})
    s2.set_counts("agree", {"c": 1})
    s1.set_counts("argue", {"d.3": 1})
    s2.set_counts("argue", {"d.3": 2})
    return s1, s2


def test_identical_sheets_merge_to_identical_output():
    s1 = RaterScoreSheet(rater_id="r1")
    s1.set_counts("e1", {"a.1": 1})
    s2 = RaterScoreSheet(rater_id="r2")
    s2.set_counts("e1", {"a.1": 1})
    merged = consensus_merge(s1, s2)
    assert merged.rater_id == "consensus"
    assert merged.counts("e1") == s1.counts("e1")


def test_resolution_wins_on_disagreement():
    s1, s2 = sheets_with_disagreement()
    merged = consensus_merge(s1, s2, resolutions={"argue": {"d.3": 2}})
    assert merged.counts("argue")["d.3"] == 2
    assert merged.counts("agree")["c"] == 1


def test_uncovered_disagreement_names_the_event():
    s1, s2 = sheets_with_disagreement()
    with pytest.raises(UnresolvedDisagreementError) as err:
        consensus_merge(s1, s2)
    assert err.value.event_ids == ("argue",)


def test_event_scored_by_only_one_rater_needs_resolution():
    s1 = RaterScoreSheet(rater_id="r1")
    s1.set_counts("solo", {"c": 1})
    s2 = RaterScoreSheet(rater_id="r2")
    with pytest.raises(UnresolvedDisagreementError):
        consensus_merge(s1, s2)
    merged = consensus_merge(s1, s2, resolutions={"solo": {"c": 1}})
    assert merged.counts("solo")["c"] == 1
