"""Two-rater agreement: Cohen's kappa, its large-sample test, range buckets."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..model.taxonomy import MAJORS, MINORS, RaterScoreSheet, major_from_minors

BUCKET_LESS_THAN_CHANCE = "less-than-chance"
BUCKET_SLIGHT = "slight"
BUCKET_FAIR = "fair"
BUCKET_MODERATE = "moderate"
BUCKET_SUBSTANTIAL = "substantial"
BUCKET_ALMOST_PERFECT = "almost-perfect"
BUCKET_UNDEFINED = "undefined"


@dataclass(frozen=True)
class KappaResult:
    kappa: float | None  # None when chance agreement is exactly 1 (undefined)
    p_value: float | None  # None when undefined or untestable (zero null variance)
    n: int

    @property
    def undefined(self) -> bool:
        return self.kappa is None


def _validate_binary(scores, name: str) -> list[int]:
    out = []
    for v in scores:
        if v not in (0, 1):
            raise ValueError(f"{name} must contain only 0/1 scores, got {v!r}")
        out.append(v)
    return out


def cohen_kappa(scores1, scores2) -> KappaResult:
    """kappa = (p_o - p_e) / (1 - p_e) over paired binary scores.

    Computed from integer cell counts so exact fractions stay exact:
    kappa = (n*agree - E) / (n^2 - E) with E = n1y*n2y + n1n*n2n.
    Undefined (None) when E == n^2, i.e. both raters are constant in the
    same direction. The p-value is the two-sided normal approximation for
    testing kappa = 0; it is None when the null variance degenerates to 0.
    """
    s1 = _validate_binary(scores1, "scores1")
    s2 = _validate_binary(scores2, "scores2")
    if len(s1) != len(s2):
        raise ValueError(f"length mismatch: {len(s1)} vs {len(s2)}")
    n = len(s1)
    if n < 1:
        raise ValueError("need at least one paired score")

    agree = sum(1 for x, y in zip(s1, s2) if x == y)
    n1y = sum(s1)
    n2y = sum(s2)
    chance = n1y * n2y + (n - n1y) * (n - n2y)  # E = n^2 * p_e
    if chance == n * n:
        return KappaResult(kappa=None, p_value=None, n=n)

    kappa = (n * agree - chance) / (n * n - chance)

    # Null variance (kappa = 0), binary case:
    # var0 = [p_e + p_e^2 - sum_k p1k*p2k*(p1k + p2k)] / (n * (1 - p_e)^2)
    p1y, p2y = n1y / n, n2y / n
    p_e = chance / (n * n)
    cross = p1y * p2y * (p1y + p2y) + (1 - p1y) * (1 - p2y) * ((1 - p1y) + (1 - p2y))
    var0 = (p_e + p_e * p_e - cross) / (n * (1 - p_e) ** 2)
    if var0 <= 0:
        return KappaResult(kappa=kappa, p_value=None, n=n)
    z = kappa / math.sqrt(var0)
    p_value = math.erfc(abs(z) / math.sqrt(2.0))
    return KappaResult(kappa=kappa, p_value=p_value, n=n)


def kappa_bucket(kappa: float) -> str:
    """Agreement-level bucket for a kappa coefficient in [-1, 1]."""
    if not -1.0 <= kappa <= 1.0:
        raise ValueError(f"kappa out of range: {kappa}")
    if kappa <= 0.0:
        return BUCKET_LESS_THAN_CHANCE
    if kappa <= 0.20:
        return BUCKET_SLIGHT
    if kappa <= 0.40:
        return BUCKET_FAIR
    if kappa <= 0.60:
        return BUCKET_MODERATE
    if kappa <= 0.80:
        return BUCKET_SUBSTANTIAL
    return BUCKET_ALMOST_PERFECT


@dataclass(frozen=True)
class CategoryAgreement:
    category: str
    label: str
    kind: str  # "major" | "minor"
    kappa: float | None
    p_value: float | None
    bucket: str


def kappa_report(sheet1: RaterScoreSheet, sheet2: RaterScoreSheet) -> tuple[CategoryAgreement, ...]:
    """Per-category kappa over the events both raters scored (6 majors + 16 minors).

    Presence (count >= 1) is the binary score per minor; major scores derive
    from minors in the usual way.
    """
    events = [e for e in sheet1.event_ids if e in set(sheet2.event_ids)]
    if not events:
        raise ValueError("no events scored by both raters")

    majors1 = {e: major_from_minors(sheet1, e) for e in events}
    majors2 = {e: major_from_minors(sheet2, e) for e in events}

    rows: list[CategoryAgreement] = []
    for major in MAJORS:
        r = cohen_kappa(
            [majors1[e][major.code] for e in events],
            [majors2[e][major.code] for e in events],
        )
        rows.append(_category_row(major.code, major.label, "major", r))
        for minor_code in major.minors:
            minor = next(m for m in MINORS if m.code == minor_code)
            r = cohen_kappa(
                [1 if sheet1.counts(e)[minor_code] >= 1 else 0 for e in events],
                [1 if sheet2.counts(e)[minor_code] >= 1 else 0 for e in events],
            )
            rows.append(_category_row(minor.code, minor.label, "minor", r))
    return tuple(rows)


def _category_row(code: str, label: str, kind: str, r: KappaResult) -> CategoryAgreement:
    bucket = BUCKET_UNDEFINED if r.kappa is None else kappa_bucket(r.kappa)
    return CategoryAgreement(
        category=code, label=label, kind=kind, kappa=r.kappa, p_value=r.p_value, bucket=bucket
    )
