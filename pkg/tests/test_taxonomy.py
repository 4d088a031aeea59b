import random

import pytest

from behaviorlab.model.taxonomy import (
    MAJORS,
    MAJORS_BY_CODE,
    MINOR_CODES,
    MINORS,
    SCORE_KEYS,
    RaterScoreSheet,
    major_from_minors,
)


def test_structure_6_majors_16_minors():
    assert len(MAJORS) == 6
    assert [m.code for m in MAJORS] == ["a", "b", "c", "d", "e", "f"]
    assert len(MINORS) == 16  # vocalization has no minors and is excluded
    assert MAJORS_BY_CODE["c"].minors == ()
    for minor in MINORS:
        assert minor.code in MAJORS_BY_CODE[minor.major].minors
        assert minor.criterion
    assert len(SCORE_KEYS) == 17 and "c" in SCORE_KEYS


def test_expected_labels():
    assert MAJORS_BY_CODE["a"].label == "Eye movement"
    assert MAJORS_BY_CODE["c"].label == "Vocalization"
    assert MAJORS_BY_CODE["f"].label == "Non-Communicative Behaviors (Others)"
    labels = {m.code: m.label for m in MINORS}
    assert labels["a.1"] == "Gazing"
    assert labels["d.3"] == "Moving"
    assert labels["e.3"] == "Movement of a part of the body"


def sheet_with(event_id, counts):
    sheet = RaterScoreSheet(rater_id="r1")
    sheet.set_counts(event_id, counts)
    return sheet


def test_goodbye_worked_example():
    # waving the hands (d.3) while producing sound (c)
    sheet = sheet_with("goodbye", {"d.3": 1, "c": 1})
    assert major_from_minors(sheet, "goodbye") == {"a": 0, "b": 0, "c": 1, "d": 1, "e": 0, "f": 0}


def test_all_zero_counts_give_all_zero_majors():
    sheet = sheet_with("e0", {})
    assert set(major_from_minors(sheet, "e0").values()) == {0}


def test_any_nonzero_minor_scores_its_major_once():
    sheet = sheet_with("e1", {"a.1": 2, "a.3": 1})
    majors = major_from_minors(sheet, "e1")
    assert majors == {"a": 1, "b": 0, "c": 0, "d": 0, "e": 0, "f": 0}


def test_major_from_minors_is_monotone():
    rng = random.Random(31)
    sheet = RaterScoreSheet(rater_id="r")
    for trial in range(300):
        event = f"e{trial}"
        counts = {k: rng.randint(0, 2) for k in SCORE_KEYS if rng.random() < 0.4}
        sheet.set_counts(event, counts)
        before = major_from_minors(sheet, event)
        bump = rng.choice(SCORE_KEYS)
        sheet.add_count(event, bump)
        after = major_from_minors(sheet, event)
        for code in before:
            assert after[code] >= before[code]


def test_sheet_validation():
    sheet = RaterScoreSheet(rater_id="r")
    with pytest.raises(ValueError):
        sheet.set_counts("e", {"z.9": 1})
    with pytest.raises(ValueError):
        sheet.set_counts("e", {"a.1": -1})
    with pytest.raises(KeyError):
        sheet.counts("missing-event")
    sheet.set_counts("e", {"a.1": 1})
    assert sheet.counts("e")["a.1"] == 1
    assert sum(sheet.counts("e").values()) == 1  # other keys zero-filled
    assert set(sheet.counts("e")) == set(SCORE_KEYS)


def test_minor_codes_cover_every_major_except_c():
    majors_with_minors = {m.major for m in MINORS}
    assert majors_with_minors == {"a", "b", "d", "e", "f"}
    assert set(MINOR_CODES) == {m.code for m in MINORS}
