"""Fixed expression taxonomy and per-rater score sheets.

Six major categories (a-f). Vocalization (c) has no minor categories and is
counted directly at the major level, so the countable keys are the 16 minors
plus "c". A major scores 1 for an event when any of its minors has a count
of at least one (for c: when the direct count is at least one).
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class MinorCategory:
    code: str
    major: str
    label: str
    criterion: str


@dataclass(frozen=True)
class MajorCategory:
    code: str
    label: str
    minors: tuple[str, ...]


MAJORS: tuple[MajorCategory, ...] = (
    MajorCategory("a", "Eye movement", ("a.1", "a.2", "a.3", "a.4")),
    MajorCategory("b", "Facial Expression", ("b.1", "b.2", "b.3")),
    MajorCategory("c", "Vocalization", ()),
    MajorCategory("d", "Hand movement", ("d.1", "d.2", "d.3")),
    MajorCategory("e", "Body movement", ("e.1", "e.2", "e.3")),
    MajorCategory("f", "Non-Communicative Behaviors (Others)", ("f.1", "f.2", "f.3")),
)

MINORS: tuple[MinorCategory, ...] = (
    MinorCategory("a.1", "a", "Gazing",
                  "Gaze at people and things (in the case of interpersonal people, "
                  "look at their faces)"),
    MinorCategory("a.2", "a", "Eye tracking",
                  "Eye movements that follow the movements of people and things in "
                  "a linear fashion"),
    MinorCategory("a.3", "a", "Changing line of sight",
                  "Change of line of sight, movement of line of sight; gaze rolls "
                  "and moves; point-like movement that is not \"a.2. eye tracking.\" "
                  "The momentary glare can also be evaluated. Movements that cannot "
                  "be evaluated as gaze/tracking."),
    MinorCategory("a.4", "a", "Opening or closing the eyelids",
                  "Not an involuntary blink. Their reaction when told to open or "
                  "close their eyes."),
    MinorCategory("b.1", "b", "Smiling", "Smile"),
    MinorCategory("b.2", "b", "Facial expression (other than smile)",
                  "Something that is not expressionless. Changes in facial "
                  "expressions. Surprise, frowning, sticking out tongue, etc."),
    MinorCategory("b.3", "b", "Concentrating and listening",
                  "Focusing on picture books, music, and voices etc."),
    MinorCategory("d.1", "d", "Pointing",
                  "Hand pointing or pointing finger towards an object."),
    MinorCategory("d.2", "d", "Reaching",
                  "The action of reaching or chasing after reaching the target, not "
                  "by pointing hand or finger."),
    MinorCategory("d.3", "d", "Moving",
                  "Grab, hit, beckon, push, raise hands, dispel, etc."),
    MinorCategory("e.1", "e", "Approaching",
                  "Head or upper body (or the whole body) is brought close to a "
                  "person or an object."),
    MinorCategory("e.2", "e", "Contacting",
                  "Touching people and things with hands and body. It does not "
                  "include cases that are touched by accident or touched."),
    MinorCategory("e.3", "e", "Movement of a part of the body",
                  "Head and neck movements, upper body movements, upper and lower "
                  "limb movements (shake, bend, move mouth, flutter legs, etc.); "
                  "(excluding \"d.1. pointing\", \"d.2. reaching\", \"d.3. moving\"), "
                  "etc. Distinguish from \"f.1. stereotyped behavior\""),
    MinorCategory("f.1", "f", "Stereotypical behavior",
                  "The same behavior or movement are repeated without purpose. "
                  "Behavior that occurs in a certain repetition e.g. Finger sucking, "
                  "shaking hands, rocking, etc. (Shaking things is \"d.3. moving\")"),
    MinorCategory("f.2", "f", "Self- and others-injurious behavior",
                  "Hitting someone, biting finger, etc."),
    MinorCategory("f.3", "f", "Others",
                  "Difficult to classify other than the above categories"),
)

VOCALIZATION_CRITERION = "Producing sound"

MAJOR_CODES = tuple(m.code for m in MAJORS)
MINOR_CODES = tuple(m.code for m in MINORS)
# All countable keys: the 16 minors plus the directly-scored vocalization major.
SCORE_KEYS = MINOR_CODES[:7] + ("c",) + MINOR_CODES[7:]

MINORS_BY_CODE = {m.code: m for m in MINORS}
MAJORS_BY_CODE = {m.code: m for m in MAJORS}

assert len(MAJORS) == 6
assert len(MINORS) == 16
assert len(SCORE_KEYS) == 17


def _normalized_counts(counts: dict[str, int] | None) -> dict[str, int]:
    counts = dict(counts or {})
    unknown = [k for k in counts if k not in SCORE_KEYS]
    if unknown:
        raise ValueError(f"unknown score keys: {unknown}")
    bad = {k: v for k, v in counts.items() if not isinstance(v, int) or v < 0}
    if bad:
        raise ValueError(f"counts must be non-negative integers: {bad}")
    return {k: counts.get(k, 0) for k in SCORE_KEYS}


@dataclass
class RaterScoreSheet:
    """One rater's movement counts per event, keyed by SCORE_KEYS."""

    rater_id: str
    scores: dict[str, dict[str, int]] = field(default_factory=dict)

    def set_counts(self, event_id: str, counts: dict[str, int]) -> None:
        self.scores[event_id] = _normalized_counts(counts)

    def add_count(self, event_id: str, key: str, n: int = 1) -> None:
        counts = self.scores.setdefault(event_id, _normalized_counts(None))
        if key not in SCORE_KEYS:
            raise ValueError(f"unknown score key: {key}")
        counts[key] += n

    def counts(self, event_id: str) -> dict[str, int]:
        if event_id not in self.scores:
            raise KeyError(event_id)
        return dict(self.scores[event_id])

    @property
    def event_ids(self) -> tuple[str, ...]:
        return tuple(self.scores)


def major_from_minors(sheet: RaterScoreSheet, event_id: str) -> dict[str, int]:
    """Derived 0/1 major scores: 1 iff any minor (or c itself) has count >= 1."""
    counts = sheet.counts(event_id)
    out: dict[str, int] = {}
    for major in MAJORS:
        if major.code == "c":
            out["c"] = 1 if counts["c"] >= 1 else 0
        else:
            out[major.code] = 1 if any(counts[m] >= 1 for m in major.minors) else 0
    return out
