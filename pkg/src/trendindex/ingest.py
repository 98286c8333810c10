"""CSV ingestion: weekly/monthly topic files and the official index.

Strict parsing: every row must carry a value for every header column, all
values must be finite numbers, and dates must be gapless and ascending
(gaps are rejected, never imputed). Zero-variance topic columns are
dropped with a warning naming them, since they carry no usable signal.
"""

from __future__ import annotations

import csv
import datetime as dt
import warnings
from pathlib import Path

import numpy as np

from .errors import DataError
from .series import MONTHLY, WEEKLY, MonthIndex, Panel, TimeSeries

WEEKLY_TOPICS = "weekly_topics"
MONTHLY_TOPICS = "monthly_topics"
OFFICIAL_INDEX = "official_index"

KINDS = (WEEKLY_TOPICS, MONTHLY_TOPICS, OFFICIAL_INDEX)


def _read_rows(path):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as err:
        raise DataError(f"cannot read {path}: {err}") from None
    rows = list(csv.reader(text.splitlines()))
    rows = [(i + 1, row) for i, row in enumerate(rows) if row and any(row)]
    if len(rows) < 2:
        raise DataError(f"{path}: need a header row and at least one data row")
    return path, rows


def _parse_month(token: str, path, line: int) -> MonthIndex:
    token = token.strip()
    try:
        if len(token) == 7:
            return MonthIndex.parse(token)
        if len(token) == 10:
            day = dt.date.fromisoformat(token)
            if day.day != 1:
                raise ValueError("monthly dates must fall on the first")
            return MonthIndex(day.year, day.month)
        raise ValueError("expected YYYY-MM or YYYY-MM-01")
    except ValueError as err:
        raise DataError(f"{path} line {line}: bad month {token!r} ({err})") from None


def _parse_date(token: str, path, line: int) -> dt.date:
    try:
        return dt.date.fromisoformat(token.strip())
    except ValueError:
        raise DataError(f"{path} line {line}: bad date {token!r}") from None


def _parse_value(token: str, path, line: int, column: str) -> float:
    try:
        value = float(token)
    except ValueError:
        raise DataError(
            f"{path} line {line}: cannot parse {token!r} in column {column!r}"
        ) from None
    if not np.isfinite(value):
        raise DataError(
            f"{path} line {line}: non-finite value in column {column!r}"
        )
    return value


def _parse_table(path, rows):
    header_line, header = rows[0]
    header = [h.strip() for h in header]
    if len(header) < 2:
        raise DataError(f"{path} line {header_line}: need a date column plus data")
    labels = header[1:]
    if len(set(labels)) != len(labels):
        raise DataError(f"{path}: duplicate column names in header")
    keys = []
    values = np.empty((len(rows) - 1, len(labels)))
    for r, (line, row) in enumerate(rows[1:]):
        if len(row) != len(header):
            raise DataError(
                f"{path} line {line}: expected {len(header)} fields, got {len(row)}"
            )
        keys.append((line, row[0]))
        for j, token in enumerate(row[1:]):
            values[r, j] = _parse_value(token, path, line, labels[j])
    return labels, keys, values


def _drop_zero_variance(labels, values):
    keep, dropped = [], []
    for j, label in enumerate(labels):
        if np.all(values[:, j] == values[0, j]):
            dropped.append(label)
        else:
            keep.append(j)
    if dropped:
        warnings.warn(
            "dropping zero-variance column(s): " + ", ".join(dropped),
            stacklevel=3,
        )
    if not keep:
        raise DataError("every column has zero variance")
    return [labels[j] for j in keep], values[:, keep], tuple(dropped)


def _ingest(path, kind: str):
    if kind not in KINDS:
        raise ValueError(f"unknown ingest kind {kind!r}")
    path, rows = _read_rows(path)
    labels, keys, values = _parse_table(path, rows)

    if kind == WEEKLY_TOPICS:
        dates = [_parse_date(tok, path, line) for line, tok in keys]
        for i in range(1, len(dates)):
            gap = (dates[i] - dates[i - 1]).days
            if gap <= 0:
                raise DataError(
                    f"{path} line {keys[i][0]}: dates out of order at {dates[i]}"
                )
            if gap != 7:
                raise DataError(
                    f"{path} line {keys[i][0]}: weekly gap of {gap} days before "
                    f"{dates[i]} (missing weeks are not imputed)"
                )
        labels, values, dropped = _drop_zero_variance(labels, values)
        series = [
            TimeSeries(label, WEEKLY, dates[0], values[:, j])
            for j, label in enumerate(labels)
        ]
        return series, dropped

    months = [_parse_month(tok, path, line) for line, tok in keys]
    for i in range(1, len(months)):
        if months[i] <= months[i - 1]:
            raise DataError(
                f"{path} line {keys[i][0]}: months out of order at {months[i]}"
            )
        if months[i] != months[i - 1].plus(1):
            raise DataError(
                f"{path} line {keys[i][0]}: month gap before {months[i]} "
                "(missing months are not imputed)"
            )

    if kind == OFFICIAL_INDEX:
        if len(labels) != 1:
            raise DataError(
                f"{path}: official index file must have exactly one value column, "
                f"found {len(labels)}"
            )
        return TimeSeries(labels[0], MONTHLY, months[0], values[:, 0]), ()

    labels, values, dropped = _drop_zero_variance(labels, values)
    index = tuple(months)
    return Panel(index, tuple(labels), values), dropped


def ingest_csv(path, kind: str):
    """Parse a CSV of the given kind.

    Returns a list of weekly TimeSeries for ``weekly_topics``, a Panel for
    ``monthly_topics``, or a single monthly TimeSeries for
    ``official_index``.
    """
    data, _ = _ingest(path, kind)
    return data


def ingest_csv_with_info(path, kind: str):
    """Like :func:`ingest_csv` but also returns the dropped column names."""
    return _ingest(path, kind)


def sniff_topics_kind(path) -> str:
    """Guess whether a topics CSV is weekly or monthly from its date column."""
    path, rows = _read_rows(path)
    first_token = rows[1][1][0].strip()
    if len(first_token) == 7:
        return MONTHLY_TOPICS
    if len(first_token) == 10:
        day = dt.date.fromisoformat(first_token)
        if len(rows) >= 3:
            nxt = dt.date.fromisoformat(rows[2][1][0].strip())
            if (nxt - day).days == 7:
                return WEEKLY_TOPICS
        if day.day == 1:
            return MONTHLY_TOPICS
        return WEEKLY_TOPICS
    raise DataError(f"{path}: cannot infer frequency from {first_token!r}")
