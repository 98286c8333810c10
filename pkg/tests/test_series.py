import datetime as dt

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import week_bucket_oracle
from trendindex.errors import AlignmentError, DataError, FrequencyError
from trendindex.series import (
    MONTHLY,
    WEEKLY,
    MonthIndex,
    Panel,
    TimeSeries,
    align,
    difference,
    lag,
    resample_weekly_to_monthly,
    standardize,
    unstandardize,
    week_counts_by_month,
)


def weekly(values, start=dt.date(2006, 1, 2), label="w"):
    return TimeSeries(label, WEEKLY, start, np.asarray(values, dtype=float))


def monthly(values, start=MonthIndex(2006, 1), label="m"):
    return TimeSeries(label, MONTHLY, start, np.asarray(values, dtype=float))


class TestMonthIndex:
    def test_ordering_and_successor(self):
        assert MonthIndex(2009, 12).plus(1) == MonthIndex(2010, 1)
        assert MonthIndex(2006, 1) < MonthIndex(2006, 2) < MonthIndex(2007, 1)

    def test_parse_roundtrip(self):
        m = MonthIndex.parse("2013-06")
        assert (m.year, m.month) == (2013, 6)
        assert str(m) == "2013-06"

    def test_invalid_month(self):
        with pytest.raises(ValueError):
            MonthIndex(2006, 13)

    @given(st.integers(-500, 500), st.integers(-500, 500))
    def test_plus_is_additive(self, a, b):
        m = MonthIndex(2006, 1)
        assert m.plus(a).plus(b) == m.plus(a + b)


class TestResample:
    def test_constant_series_stays_constant(self):
        out = resample_weekly_to_monthly(weekly([5.0] * 52))
        assert out.frequency == MONTHLY
        assert np.all(out.values == 5.0)

    def test_matches_bucketing_oracle(self):
        # 8 weeks spanning two calendar months, values 1..8
        start = dt.date(2006, 1, 2)
        values = list(range(1, 9))
        out = resample_weekly_to_monthly(weekly(values, start=start))
        expected = week_bucket_oracle(start, values)
        got = {(m.year, m.month): v for m, v in zip(out.index, out.values)}
        assert list(got) == list(expected)
        for key in expected:
            assert got[key] == pytest.approx(expected[key], abs=1e-12)

    def test_boundary_week_moves_to_next_month(self):
        # week starting Jan 29 ends Feb 4: belongs to February
        start = dt.date(2006, 1, 1)  # Sunday; weeks end on Saturdays
        out = resample_weekly_to_monthly(weekly([1, 1, 1, 1, 10], start=start))
        # weeks 1-4 end Jan 7..28 -> January; week 5 ends Feb 4 -> February
        assert [m.month for m in out.index] == [1, 2]
        assert out.values[0] == pytest.approx(1.0)
        assert out.values[1] == pytest.approx(10.0)

    def test_requires_weekly_input(self):
        with pytest.raises(FrequencyError):
            resample_weekly_to_monthly(monthly([1, 2, 3, 4]))

    def test_requires_four_weeks(self):
        with pytest.raises(DataError):
            resample_weekly_to_monthly(weekly([1, 2, 3]))

    @settings(max_examples=25)
    @given(
        st.integers(0, 400),
        st.lists(st.floats(-100, 100), min_size=4, max_size=120),
    )
    def test_oracle_equivalence_property(self, offset, values):
        start = dt.date(2006, 1, 2) + dt.timedelta(days=offset)
        out = resample_weekly_to_monthly(weekly(values, start=start))
        expected = week_bucket_oracle(start, values)
        assert len(out) == len(expected)
        for m, v in zip(out.index, out.values):
            assert v == pytest.approx(expected[(m.year, m.month)], abs=1e-9)

    def test_week_counts(self):
        counts = week_counts_by_month(weekly([1.0] * 9))
        assert sum(counts.values()) == 9


class TestDifference:
    def test_linear_series_first_difference(self):
        out = difference(monthly(np.arange(10.0)), 1)
        assert np.allclose(out.values, 1.0)
        assert out.start == MonthIndex(2006, 2)

    def test_zero_order_is_identity(self):
        s = monthly([3.0, 1.0, 4.0])
        out = difference(s, 0)
        assert np.array_equal(out.values, s.values)
        assert out.start == s.start

    def test_second_difference_of_squares(self):
        out = difference(monthly([1.0, 4.0, 9.0, 16.0]), 2)
        assert np.array_equal(out.values, [2.0, 2.0])

    def test_composition(self):
        s = monthly(np.random.default_rng(0).normal(size=30))
        twice = difference(difference(s, 1), 1)
        once = difference(s, 2)
        assert np.allclose(twice.values, once.values)
        assert twice.start == once.start

    def test_too_short(self):
        with pytest.raises(DataError):
            difference(monthly([1.0, 2.0]), 2)


class TestLag:
    def test_basic_alignment(self):
        out = lag(monthly([1.0, 2.0, 3.0]), 1)
        assert np.array_equal(out.values, [1.0, 2.0])
        assert out.start == MonthIndex(2006, 2)

    def test_lag_commutes_with_difference(self):
        s = monthly([1.0, 3.0, 6.0, 10.0])
        a = difference(lag(s, 1), 1)
        b = lag(difference(s, 1), 1)
        assert a.start == b.start
        assert np.array_equal(a.values, b.values)

    def test_lag_equal_to_length_errors(self):
        with pytest.raises(DataError):
            lag(monthly([1.0, 2.0, 3.0]), 3)

    def test_nonpositive_lag_rejected(self):
        with pytest.raises(ValueError):
            lag(monthly([1.0, 2.0]), 0)


class TestAlign:
    def test_identical_ranges(self):
        p = align([monthly([1, 2, 3], label="a"), monthly([4, 5, 6], label="b")])
        assert p.n_rows == 3 and p.n_cols == 2
        assert p.labels == ("a", "b")

    def test_interval_intersection(self):
        a = monthly(np.arange(90.0), start=MonthIndex(2006, 1), label="a")
        b = monthly(np.arange(94.0), start=MonthIndex(2006, 3), label="b")
        p = align([a, b])
        assert p.start == MonthIndex(2006, 3)
        assert p.end == MonthIndex(2013, 6)
        assert p.column("a").values[0] == 2.0

    def test_disjoint_ranges(self):
        a = monthly([1, 2], start=MonthIndex(2006, 1), label="a")
        b = monthly([1, 2], start=MonthIndex(2010, 1), label="b")
        with pytest.raises(AlignmentError):
            align([a, b])

    def test_idempotent(self):
        a = monthly(np.arange(20.0), start=MonthIndex(2006, 1), label="a")
        b = monthly(np.arange(15.0), start=MonthIndex(2006, 4), label="b")
        once = align([a, b])
        twice = align(once.columns())
        assert once.index == twice.index
        assert np.array_equal(once.values, twice.values)

    def test_weekly_rejected(self):
        with pytest.raises(FrequencyError):
            align([weekly([1, 2, 3, 4])])


class TestStandardize:
    def test_unit_moments(self):
        p = align([monthly([1.0, 2.0, 3.0], label="a")])
        z, means, sds = standardize(p)
        assert abs(z.values.mean()) < 1e-10
        assert abs(z.values.std(ddof=1) - 1.0) < 1e-10
        assert means[0] == pytest.approx(2.0)

    def test_constant_column_rejected(self):
        p = align([monthly([2.0, 2.0, 2.0], label="flat")])
        with pytest.raises(DataError, match="flat"):
            standardize(p)

    def test_round_trip(self):
        rng = np.random.default_rng(3)
        cols = [monthly(rng.normal(size=40) * 7 + 3, label=f"c{j}") for j in range(4)]
        p = align(cols)
        z, means, sds = standardize(p)
        back = unstandardize(z, means, sds)
        assert np.allclose(back.values, p.values, atol=1e-12)

    @settings(max_examples=30)
    @given(st.lists(st.floats(-50, 50), min_size=3, max_size=40, unique=True))
    def test_moments_property(self, values):
        p = align([monthly(values, label="a")])
        z, _, _ = standardize(p)
        assert abs(z.values[:, 0].mean()) < 1e-10
        assert abs(z.values[:, 0].std(ddof=1) - 1.0) < 1e-10


class TestPanel:
    def test_duplicate_labels_rejected(self):
        with pytest.raises(DataError):
            align([monthly([1, 2], label="x"), monthly([3, 4], label="x")])

    def test_non_contiguous_index_rejected(self):
        with pytest.raises(DataError):
            Panel(
                (MonthIndex(2006, 1), MonthIndex(2006, 3)),
                ("a",),
                np.array([[1.0], [2.0]]),
            )

    def test_nan_rejected(self):
        with pytest.raises(DataError):
            monthly([1.0, float("nan")])
