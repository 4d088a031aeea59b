"""Label a collected log against the expert reference log.

Greedy matching in time order: each candidate (ascending timestamp) pairs
with the nearest still-unmatched reference entry within the tolerance.
A pair with equal behavior names is correct, with different names incorrect;
an unpairable candidate is incorrect; an unpaired reference entry is missing.
"""

from __future__ import annotations

from dataclasses import dataclass

DEFAULT_TOLERANCE_MS = 5_000

CORRECT = "correct"
INCORRECT = "incorrect"
MISSING = "missing"


@dataclass(frozen=True)
class CandidateEvent:
    behavior_name: str
    at: int  # epoch ms


@dataclass(frozen=True)
class ReferenceEntry:
    behavior_name: str
    occurred_at: int


@dataclass(frozen=True)
class AlignmentResult:
    candidate_labels: tuple[str, ...]  # per candidate, original order: correct | incorrect
    matched_reference: tuple[int | None, ...]  # per candidate: reference index or None
    missing_reference_indexes: tuple[int, ...]
    correct: int
    incorrect: int
    missing: int
    reference_count: int

    @property
    def missing_or_incorrect(self) -> int:
        return self.missing + self.incorrect


def align(candidates, reference, tolerance_ms: int = DEFAULT_TOLERANCE_MS) -> AlignmentResult:
    if tolerance_ms <= 0:
        raise ValueError("tolerance_ms must be > 0")
    candidates = list(candidates)
    reference = sorted(reference, key=lambda r: r.occurred_at)

    order = sorted(range(len(candidates)), key=lambda i: candidates[i].at)
    matched_ref: list[int | None] = [None] * len(candidates)
    ref_taken = [False] * len(reference)

    for i in order:
        cand = candidates[i]
        best_j: int | None = None
        best_delta = None
        for j, ref in enumerate(reference):
            if ref_taken[j]:
                continue
            delta = abs(ref.occurred_at - cand.at)
            if delta > tolerance_ms:
                continue
            # Nearest wins; equal distance prefers the earlier reference entry.
            if best_delta is None or delta < best_delta:
                best_delta = delta
                best_j = j
        if best_j is not None:
            ref_taken[best_j] = True
            matched_ref[i] = best_j

    labels = []
    for i, cand in enumerate(candidates):
        j = matched_ref[i]
        if j is not None and reference[j].behavior_name == cand.behavior_name:
            labels.append(CORRECT)
        else:
            labels.append(INCORRECT)

    missing_idx = tuple(j for j, taken in enumerate(ref_taken) if not taken)
    correct = sum(1 for l in labels if l == CORRECT)
    return AlignmentResult(
        candidate_labels=tuple(labels),
        matched_reference=tuple(matched_ref),
        missing_reference_indexes=missing_idx,
        correct=correct,
        incorrect=len(labels) - correct,
        missing=len(missing_idx),
        reference_count=len(reference),
    )
