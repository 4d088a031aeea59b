import random

import pytest
from scipy import stats

from behaviorlab.analysis.contingency import (
    ContingencyTable2x2,
    UndefinedTestError,
    chi2_sf_df1,
    chi_square_2x2,
    odds_ratio,
)


def oracle_chi2(a, b, c, d):
    """Textbook sum of (O-E)^2/E over the four cells."""
    n = a + b + c + d
    rows = (a + b, c + d)
    cols = (a + c, b + d)
    observed = ((a, b), (c, d))
    total = 0.0
    for i in range(2):
        for j in range(2):
            expected = rows[i] * cols[j] / n
            total += (observed[i][j] - expected) ** 2 / expected
    return total


def test_reference_table_reproduces_published_statistic():
    r = chi_square_2x2(ContingencyTable2x2(269, 32, 195, 106))
    assert r.chi2 == pytest.approx(51.48, abs=0.01)
    assert r.df == 1
    assert r.p_value < 0.001


def test_identical_rows_give_zero():
    r = chi_square_2x2(ContingencyTable2x2(50, 50, 50, 50))
    assert r.chi2 == 0.0
    assert r.p_value == 1.0


def test_matches_expected_counts_oracle():
    assert chi_square_2x2(ContingencyTable2x2(10, 5, 4, 11)).chi2 == pytest.approx(
        oracle_chi2(10, 5, 4, 11), rel=1e-12
    )


def test_matches_oracle_on_random_tables():
    rng = random.Random(2024)
    for _ in range(300):
        a, b, c, d = (rng.randint(1, 400) for _ in range(4))
        ours = chi_square_2x2(ContingencyTable2x2(a, b, c, d)).chi2
        assert ours == pytest.approx(oracle_chi2(a, b, c, d), rel=1e-9)


def test_invariant_under_row_and_column_swaps():
    rng = random.Random(8)
    for _ in range(100):
        a, b, c, d = (rng.randint(1, 200) for _ in range(4))
        base = chi_square_2x2(ContingencyTable2x2(a, b, c, d)).chi2
        assert chi_square_2x2(ContingencyTable2x2(c, d, a, b)).chi2 == pytest.approx(base, rel=1e-12)
        assert chi_square_2x2(ContingencyTable2x2(b, a, d, c)).chi2 == pytest.approx(base, rel=1e-12)


def test_agrees_with_scipy():
    for cells in ((269, 32, 195, 106), (10, 5, 4, 11), (7, 3, 2, 9)):
        a, b, c, d = cells
        ours = chi_square_2x2(ContingencyTable2x2(a, b, c, d))
        sp_chi2, sp_p, sp_df, _ = stats.chi2_contingency([[a, b], [c, d]], correction=False)
        assert ours.chi2 == pytest.approx(sp_chi2, rel=1e-12)
        assert ours.df == sp_df
        assert ours.p_value == pytest.approx(sp_p, rel=1e-9)


def test_survival_function_matches_scipy():
    for x in (0.5, 1.0, 3.84, 10.0, 51.48):
        assert chi2_sf_df1(x) == pytest.approx(stats.chi2.sf(x, df=1), rel=1e-9)


def test_zero_marginal_is_undefined():
    with pytest.raises(UndefinedTestError):
        chi_square_2x2(ContingencyTable2x2(0, 0, 5, 5))
    with pytest.raises(UndefinedTestError):
        chi_square_2x2(ContingencyTable2x2(0, 5, 0, 5))


def test_cells_validated():
    with pytest.raises(ValueError):
        ContingencyTable2x2(-1, 2, 3, 4)
    with pytest.raises(ValueError):
        ContingencyTable2x2(1.5, 2, 3, 4)


# -- odds ratios ---------------------------------------------------------------


def test_reference_table_odds_ratios():
    r = odds_ratio(ContingencyTable2x2(269, 32, 195, 106))
    assert r.or_correct == pytest.approx((269 * 106) / (32 * 195), rel=1e-12)
    assert 4.55 <= r.or_correct <= 4.60  # published rounding: 4.6
    assert 0.21 <= r.or_missing_incorrect <= 0.23  # published rounding: 0.2
    assert not r.haldane_corrected


def test_uniform_table_gives_unity():
    r = odds_ratio(ContingencyTable2x2(7, 7, 7, 7))
    assert r.or_correct == 1.0
    assert r.or_missing_incorrect == 1.0


def test_zero_cell_takes_haldane_correction():
    r = odds_ratio(ContingencyTable2x2(10, 0, 5, 5))
    assert r.haldane_corrected
    assert r.or_correct == pytest.approx((10.5 * 5.5) / (0.5 * 5.5), rel=1e-12)


def test_reciprocal_product_is_one():
    rng = random.Random(5)
    for _ in range(100):
        a, b, c, d = (rng.randint(1, 300) for _ in range(4))
        left = odds_ratio(ContingencyTable2x2(a, b, c, d)).or_correct
        right = odds_ratio(ContingencyTable2x2(b, a, d, c)).or_correct
        assert left * right == pytest.approx(1.0, rel=1e-12)
