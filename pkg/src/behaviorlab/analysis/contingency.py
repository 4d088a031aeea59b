"""2x2 contingency statistics: Pearson chi-square and odds ratios.

Layout: rows are the two collection methods, columns are correct vs
missing-or-incorrect, so the table (a, b, c, d) reads

        correct   missing/incorrect
  m1       a             b
  m2       c             d
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class UndefinedTestError(ValueError):
    """A marginal total is zero, so the test statistic is undefined."""


@dataclass(frozen=True)
class ContingencyTable2x2:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        for name in "abcd":
            v = getattr(self, name)
            if not isinstance(v, int) or v < 0:
                raise ValueError(f"cell {name} must be a non-negative integer, got {v!r}")

    @property
    def total(self) -> int:
        return self.a + self.b + self.c + self.d

    @property
    def cells(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)


@dataclass(frozen=True)
class ChiSquareResult:
    chi2: float
    df: int
    p_value: float


@dataclass(frozen=True)
class OddsRatioResult:
    or_correct: float
    or_missing_incorrect: float
    haldane_corrected: bool


def chi2_sf_df1(x: float) -> float:
    """Survival function of chi-square with df=1: Q(1/2, x/2) = erfc(sqrt(x/2))."""
    if x < 0:
        raise ValueError("chi-square statistic must be >= 0")
    return math.erfc(math.sqrt(x / 2.0))


def chi_square_2x2(t: ContingencyTable2x2) -> ChiSquareResult:
    """Pearson statistic without continuity correction, df = 1."""
    a, b, c, d = t.cells
    n = t.total
    row1, row2 = a + b, c + d
    col1, col2 = a + c, b + d
    if min(row1, row2, col1, col2) == 0:
        raise UndefinedTestError("zero marginal total")
    chi2 = 0.0
    for observed, row, col in ((a, row1, col1), (b, row1, col2), (c, row2, col1), (d, row2, col2)):
        expected = row * col / n
        chi2 += (observed - expected) ** 2 / expected
    return ChiSquareResult(chi2=chi2, df=1, p_value=chi2_sf_df1(chi2))


def odds_ratio(t: ContingencyTable2x2) -> OddsRatioResult:
    """(a*d)/(b*c) and its reciprocal; zero cells get the Haldane +0.5 correction."""
    a, b, c, d = (float(v) for v in t.cells)
    corrected = 0 in t.cells
    if corrected:
        a, b, c, d = a + 0.5, b + 0.5, c + 0.5, d + 0.5
    or_correct = (a * d) / (b * c)
    return OddsRatioResult(
        or_correct=or_correct,
        or_missing_incorrect=1.0 / or_correct,
        haldane_corrected=corrected,
    )
