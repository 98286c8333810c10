"""Monthly/weekly time-series containers and the basic transforms.

Everything is immutable after construction: transforms return new objects.
Weekly series are keyed by the start date of their first week; monthly
series by a (year, month) index.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import AlignmentError, DataError, FrequencyError

WEEKLY = "weekly"
MONTHLY = "monthly"


@dataclass(frozen=True, order=True)
class MonthIndex:
    """Calendar month; totally ordered, with (y, 12) + 1 month = (y+1, 1)."""

    year: int
    month: int

    def __post_init__(self):
        if not 1 <= self.month <= 12:
            raise ValueError(f"month must be in 1..12, got {self.month}")

    @property
    def ordinal(self) -> int:
        return self.year * 12 + (self.month - 1)

    @classmethod
    def from_ordinal(cls, ordinal: int) -> "MonthIndex":
        return cls(ordinal // 12, ordinal % 12 + 1)

    @classmethod
    def parse(cls, text: str) -> "MonthIndex":
        parts = text.strip().split("-")
        if len(parts) != 2:
            raise ValueError(f"expected YYYY-MM, got {text!r}")
        return cls(int(parts[0]), int(parts[1]))

    def plus(self, months: int) -> "MonthIndex":
        return MonthIndex.from_ordinal(self.ordinal + months)

    def months_until(self, other: "MonthIndex") -> int:
        return other.ordinal - self.ordinal

    def __str__(self) -> str:
        return f"{self.year:04d}-{self.month:02d}"


def _freeze(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """A single weekly or monthly series of finite values."""

    label: str
    frequency: str
    start: MonthIndex | dt.date
    values: np.ndarray

    def __post_init__(self):
        if self.frequency not in (WEEKLY, MONTHLY):
            raise FrequencyError(f"unknown frequency {self.frequency!r}")
        if self.frequency == MONTHLY and not isinstance(self.start, MonthIndex):
            raise ValueError("monthly series must start at a MonthIndex")
        if self.frequency == WEEKLY and not isinstance(self.start, dt.date):
            raise ValueError("weekly series must start at a calendar date")
        object.__setattr__(self, "values", _freeze(self.values))
        if self.values.ndim != 1 or len(self.values) < 1:
            raise DataError(f"series {self.label!r} must be a non-empty vector")
        if not np.all(np.isfinite(self.values)):
            raise DataError(f"series {self.label!r} contains non-finite values")

    def __len__(self) -> int:
        return len(self.values)

    @property
    def index(self) -> tuple:
        """Calendar positions of every observation."""
        if self.frequency == MONTHLY:
            return tuple(self.start.plus(i) for i in range(len(self)))
        return tuple(self.start + dt.timedelta(days=7 * i) for i in range(len(self)))

    @property
    def end(self):
        if self.frequency == MONTHLY:
            return self.start.plus(len(self) - 1)
        return self.start + dt.timedelta(days=7 * (len(self) - 1))

    def rename(self, label: str) -> "TimeSeries":
        return TimeSeries(label, self.frequency, self.start, self.values)


@dataclass(frozen=True, eq=False)
class Panel:
    """Named monthly series on one shared, contiguous month index."""

    index: tuple
    labels: tuple
    values: np.ndarray  # shape (T, N), column j is labels[j]

    def __post_init__(self):
        object.__setattr__(self, "index", tuple(self.index))
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "values", _freeze(self.values))
        t, n = self.values.shape
        if len(self.index) != t:
            raise DataError("index length does not match row count")
        if len(self.labels) != n:
            raise DataError("label count does not match column count")
        if len(set(self.labels)) != n:
            raise DataError("column labels must be unique")
        for i in range(1, t):
            if self.index[i] != self.index[i - 1].plus(1):
                raise DataError("panel index must be consecutive months")
        if not np.all(np.isfinite(self.values)):
            raise DataError("panel contains non-finite values")

    @property
    def n_rows(self) -> int:
        return self.values.shape[0]

    @property
    def n_cols(self) -> int:
        return self.values.shape[1]

    @property
    def start(self) -> MonthIndex:
        return self.index[0]

    @property
    def end(self) -> MonthIndex:
        return self.index[-1]

    def column(self, label: str) -> TimeSeries:
        try:
            j = self.labels.index(label)
        except ValueError:
            raise KeyError(f"no column {label!r} in panel") from None
        return TimeSeries(label, MONTHLY, self.index[0], self.values[:, j])

    def columns(self) -> list:
        return [self.column(lab) for lab in self.labels]

    def select(self, labels: Sequence[str]) -> "Panel":
        idx = [self.labels.index(lab) for lab in labels]
        return Panel(self.index, tuple(labels), self.values[:, idx])


def week_month(week_start: dt.date) -> MonthIndex:
    """Month a week belongs to: the month containing the week's final day."""
    end = week_start + dt.timedelta(days=6)
    return MonthIndex(end.year, end.month)


def week_counts_by_month(weekly: TimeSeries) -> dict:
    """Number of weeks assigned to each month under the boundary rule."""
    if weekly.frequency != WEEKLY:
        raise FrequencyError(f"series {weekly.label!r} is not weekly")
    counts: dict = {}
    for day in weekly.index:
        m = week_month(day)
        counts[m] = counts.get(m, 0) + 1
    return counts


def resample_weekly_to_monthly(weekly: TimeSeries) -> TimeSeries:
    """Collapse a weekly series to monthly means.

    A week is assigned to the month containing its final day, so a week
    straddling a month boundary counts toward the later month. Each month's
    value is the plain mean of the weeks assigned to it.
    """
    if weekly.frequency != WEEKLY:
        raise FrequencyError(f"series {weekly.label!r} is not weekly")
    if len(weekly) < 4:
        raise DataError(
            f"series {weekly.label!r} has {len(weekly)} weeks; need at least 4"
        )
    months = [week_month(day) for day in weekly.index]
    first, last = months[0], months[-1]
    n_months = first.months_until(last) + 1
    sums = np.zeros(n_months)
    counts = np.zeros(n_months, dtype=int)
    for m, value in zip(months, weekly.values):
        pos = first.months_until(m)
        sums[pos] += value
        counts[pos] += 1
    empty = [str(first.plus(i)) for i in range(n_months) if counts[i] == 0]
    if empty:
        raise DataError(
            f"no weeks assigned to month(s) {', '.join(empty)} "
            f"in series {weekly.label!r}"
        )
    return TimeSeries(weekly.label, MONTHLY, first, sums / counts)


def difference(series: TimeSeries, d: int) -> TimeSeries:
    """d-fold first difference; output starts d periods later."""
    if d < 0:
        raise ValueError("difference order must be non-negative")
    if d >= len(series):
        raise DataError(
            f"cannot difference series of length {len(series)} {d} times"
        )
    values = series.values
    for _ in range(d):
        values = np.diff(values)
    if series.frequency == MONTHLY:
        start = series.start.plus(d)
    else:
        start = series.start + dt.timedelta(days=7 * d)
    return TimeSeries(series.label, series.frequency, start, values)


def lag(series: TimeSeries, k: int) -> TimeSeries:
    """Shift a series back by k periods: output at t equals input at t-k.

    The first k positions have no value and are dropped, so the output
    starts k periods later and is k observations shorter.
    """
    if k <= 0:
        raise ValueError("lag must be positive")
    if k >= len(series):
        raise DataError(f"lag {k} >= series length {len(series)}")
    if series.frequency == MONTHLY:
        start = series.start.plus(k)
    else:
        start = series.start + dt.timedelta(days=7 * k)
    return TimeSeries(series.label, series.frequency, start, series.values[:-k])


def align(columns: Iterable[TimeSeries]) -> Panel:
    """Restrict monthly series to their common month range."""
    cols = list(columns)
    if not cols:
        raise AlignmentError("no series to align")
    for col in cols:
        if col.frequency != MONTHLY:
            raise FrequencyError(f"series {col.label!r} is not monthly")
    start = max(col.start for col in cols)
    end = min(col.end for col in cols)
    if start > end:
        ranges = ", ".join(f"{c.label}: {c.start}..{c.end}" for c in cols)
        raise AlignmentError(f"series ranges do not overlap ({ranges})")
    t = start.months_until(end) + 1
    values = np.empty((t, len(cols)))
    for j, col in enumerate(cols):
        offset = col.start.months_until(start)
        values[:, j] = col.values[offset : offset + t]
    index = tuple(start.plus(i) for i in range(t))
    return Panel(index, tuple(c.label for c in cols), values)


def standardize(panel: Panel):
    """Center and scale each column to mean 0, sample sd 1 (T-1 denominator).

    Returns (standardized panel, means, sds). A zero-variance column is an
    error: such columns must be filtered during ingestion.
    """
    means = panel.values.mean(axis=0)
    sds = panel.values.std(axis=0, ddof=1)
    for j, sd in enumerate(sds):
        if sd == 0.0:
            raise DataError(f"column {panel.labels[j]!r} has zero variance")
    z = (panel.values - means) / sds
    return Panel(panel.index, panel.labels, z), means, sds


def unstandardize(panel: Panel, means: np.ndarray, sds: np.ndarray) -> Panel:
    """Inverse of :func:`standardize`."""
    return Panel(panel.index, panel.labels, panel.values * sds + means)
