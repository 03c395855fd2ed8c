"""Spread summaries, correlation, and the empirical CDF."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from airtoll.stats import cdf, pearson, quantile, summary

series = st.lists(
    st.floats(min_value=-1.0e6, max_value=1.0e6, allow_nan=False, allow_infinity=False),
    min_size=2,
    max_size=50,
)


def test_quartiles_linear_interpolation():
    values = [1.0, 2.0, 3.0, 4.0]
    assert quantile(values, 0.25) == pytest.approx(1.75)
    assert quantile(values, 0.75) == pytest.approx(3.25)
    assert quantile(values, 0.0) == 1.0
    assert quantile(values, 1.0) == 4.0
    with pytest.raises(ValueError):
        quantile(values, 1.5)


def test_summary_of_small_set():
    s = summary([1.0, 2.0, 3.0, 4.0])
    assert s.mean == pytest.approx(2.5)
    assert s.iqr == pytest.approx(1.5)
    assert s.std == pytest.approx(np.std([1, 2, 3, 4]), rel=1e-12)  # population std
    assert s.normalized_iqr == pytest.approx(0.6)
    assert s.normalized_std == pytest.approx(s.std / 2.5, rel=1e-12)


def test_summary_constant_series():
    s = summary([7.0, 7.0, 7.0])
    assert s.std == 0.0
    assert s.iqr == 0.0
    assert s.normalized_std == 0.0
    assert s.normalized_iqr == 0.0


def test_summary_nonpositive_mean_undefined_normalization():
    s = summary([-1.0, 1.0])
    assert s.mean == 0.0
    assert s.normalized_std is None
    assert s.normalized_iqr is None


def test_pearson_known_values():
    assert pearson([1, 2, 3], [2, 4, 6]) == pytest.approx(1.0)
    assert pearson([1, 2, 3], [6, 4, 2]) == pytest.approx(-1.0)
    assert pearson([1, 2, 3, 4], [1, 3, 2, 4]) == pytest.approx(0.8)


def test_pearson_zero_variance_undefined():
    assert pearson([1, 1, 1], [1, 2, 3]) is None
    assert pearson([1, 2, 3], [5, 5, 5]) is None


def test_pearson_guards():
    with pytest.raises(ValueError, match="length"):
        pearson([1, 2], [1, 2, 3])
    with pytest.raises(ValueError, match="two points"):
        pearson([1], [2])


@given(series)
def test_pearson_bounded(values):
    shifted = [v * 0.7 + 3.0 for v in values]
    r = pearson(values, shifted)
    if r is not None:
        assert -1.0 - 1e-9 <= r <= 1.0 + 1e-9


def test_cdf_shape_and_monotonicity():
    pairs = cdf([3.0, 1.0, 2.0, 2.0])
    assert pairs[0] == (1.0, 0.25)
    assert pairs[-1] == (3.0, 1.0)
    values = [p[0] for p in pairs]
    fractions = [p[1] for p in pairs]
    assert values == sorted(values)
    assert fractions == sorted(fractions)
    assert fractions[-1] == 1.0


@given(series)
def test_cdf_last_fraction_is_one(values):
    pairs = cdf(values)
    assert pairs[-1][1] == pytest.approx(1.0)
    assert len(pairs) == len(values)


def test_rejects_non_finite_and_empty():
    with pytest.raises(ValueError):
        summary([])
    with pytest.raises(ValueError):
        summary([1.0, float("nan")])
    with pytest.raises(ValueError):
        cdf([float("inf")])


@given(series, st.floats(min_value=0.0, max_value=1.0))
def test_quantile_within_range(values, q):
    result = quantile(values, q)
    assert min(values) <= result <= max(values)
