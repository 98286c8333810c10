"""Augmented Dickey-Fuller testing, integration-order classification,
the pairwise-sum transform for stationary components, and the
residual-based cointegration check.
"""

from __future__ import annotations

import datetime as dt
import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from ._mackinnon import LEVEL_KEYS, mackinnon_crit, mackinnon_pvalue
from .errors import ConfigError, DataError
from .ols import ols_fit
from .series import TimeSeries, difference

AUTO = "auto"

_CASE_BY_DETERMINISTIC = {
    "none": "nc",
    "constant": "c",
    "constant+trend": "ct",
}


@dataclass(frozen=True)
class AdfSpec:
    """Deterministic terms and lag-order policy for the ADF regression."""

    deterministic: str = "constant"
    lag_order: int | str = AUTO  # non-negative int, or "auto" (AIC)
    auto_criterion: str = "aic"

    def __post_init__(self):
        if self.deterministic not in _CASE_BY_DETERMINISTIC:
            raise ConfigError(
                f"deterministic must be one of {sorted(_CASE_BY_DETERMINISTIC)}, "
                f"got {self.deterministic!r}"
            )
        if self.lag_order != AUTO:
            if not isinstance(self.lag_order, int) or self.lag_order < 0:
                raise ConfigError("lag_order must be 'auto' or a non-negative int")
        if self.auto_criterion != "aic":
            raise ConfigError("only AIC lag selection is supported")

    @property
    def case(self) -> str:
        return _CASE_BY_DETERMINISTIC[self.deterministic]


@dataclass(frozen=True, eq=False)
class AdfResult:
    """ADF outcome: t statistic of the lagged level, with MacKinnon
    p-value and finite-sample critical values."""

    statistic: float
    p_value: float
    critical_values: dict
    lags_used: int
    nobs: int
    deterministic: str
    reject_unit_root_at: float | None = None


@dataclass(frozen=True, eq=False)
class IntegrationOrder:
    """Integration verdict with the per-difference-level test evidence."""

    order: str  # "I0", "I1", or "I2plus"
    evidence: dict = field(repr=False)  # differencing level -> AdfResult


@dataclass(frozen=True, eq=False)
class CointegrationResult:
    """Residual unit-root test plus the cointegration verdict."""

    statistic: float
    p_value: float
    critical_values: dict
    lags_used: int
    nobs: int
    cointegrated: bool


def _det_columns(nobs: int, case: str):
    cols, labels = [], []
    if case in ("c", "ct"):
        cols.append(np.ones(nobs))
        labels.append("const")
    if case == "ct":
        cols.append(np.arange(1.0, nobs + 1.0))
        labels.append("trend")
    return cols, labels


def _n_det(case: str) -> int:
    return {"nc": 0, "c": 1, "ct": 2}[case]


def _adf_regression(values: np.ndarray, case: str, lags: int):
    # Rows t = lags..T-2 of dy: regress dy[t] on y[t], dy[t-1..t-lags], det.
    dy = np.diff(values)
    nobs = len(dy) - lags
    y_short = dy[lags:]
    cols = [values[lags:-1]]
    labels = ["level"]
    for j in range(1, lags + 1):
        cols.append(dy[lags - j : len(dy) - j])
        labels.append(f"d.lag{j}")
    det_cols, det_labels = _det_columns(nobs, case)
    cols.extend(det_cols)
    labels.extend(det_labels)
    x = np.column_stack(cols)
    fit = ols_fit(y_short, x, labels, intercept=False)
    return fit, nobs


def _default_maxlag(t: int, case: str) -> int:
    maxlag = int(math.ceil(12.0 * (t / 100.0) ** 0.25))
    # keep the trimmed regression comfortably overdetermined
    cap = (t - 4 - _n_det(case)) // 2
    return max(0, min(maxlag, cap))


def _reject_level(stat: float, crit: dict) -> float | None:
    for level in (0.01, 0.05, 0.10):
        if stat < crit[LEVEL_KEYS[level]]:
            return level
    return None


def adf_test(series, spec: AdfSpec = AdfSpec()) -> AdfResult:
    """Augmented Dickey-Fuller unit-root test.

    When ``spec.lag_order`` is "auto", the lag length minimizing the AIC
    over 0..floor(12*(T/100)^(1/4)) is chosen on a common trimmed sample,
    then the reported regression is refit at that lag on the full usable
    sample (so results match a fixed-lag run at the chosen order).
    """
    values = series.values if isinstance(series, TimeSeries) else np.asarray(
        series, dtype=float
    )
    t = len(values)
    case = spec.case
    if np.std(values) == 0.0:
        raise DataError("series is constant: unit-root test undefined")

    if spec.lag_order == AUTO:
        maxlag = _default_maxlag(t, case)
        if t - 1 - maxlag < maxlag + 2 + _n_det(case) + 1:
            raise DataError(f"series too short for an ADF test (T={t})")
        best_lag, best_aic = 0, math.inf
        dy = np.diff(values)
        nobs_trim = len(dy) - maxlag
        y_trim = dy[maxlag:]
        full_cols = [values[maxlag:-1]]
        for j in range(1, maxlag + 1):
            full_cols.append(dy[maxlag - j : len(dy) - j])
        det_cols, _ = _det_columns(nobs_trim, case)
        for lag_try in range(maxlag + 1):
            x = np.column_stack(full_cols[: lag_try + 1] + det_cols)
            # candidate fits only need the residual sum, not inference
            _, _, _, rss = kernels.ols_core(x, y_trim)
            k = x.shape[1]
            aic = nobs_trim * math.log(rss / nobs_trim) + 2 * k
            if aic < best_aic:
                best_aic, best_lag = aic, lag_try
        lags = best_lag
    else:
        lags = spec.lag_order
        if t - lags - 2 <= lags + 1 + _n_det(case):
            raise DataError(
                f"series too short for ADF with {lags} lags (T={t})"
            )

    fit, nobs = _adf_regression(values, case, lags)
    stat = float(fit.t_values[0])
    crit = mackinnon_crit(case, nobs)
    return AdfResult(
        statistic=stat,
        p_value=mackinnon_pvalue(stat, case),
        critical_values=crit,
        lags_used=lags,
        nobs=nobs,
        deterministic=spec.deterministic,
        reject_unit_root_at=_reject_level(stat, crit),
    )


def integration_order(
    series: TimeSeries,
    spec: AdfSpec = AdfSpec(),
    level: float = 0.01,
    max_d: int = 2,
) -> IntegrationOrder:
    """Classify a series as I(0), I(1), or I(2+) by repeated differencing."""
    if max_d < 1:
        raise ValueError("max_d must be at least 1")
    evidence = {}
    result = adf_test(series, spec)
    evidence[0] = result
    if result.p_value <= level:
        return IntegrationOrder("I0", evidence)
    for d in range(1, max_d + 1):
        result = adf_test(difference(series, d), spec)
        evidence[d] = result
        if result.p_value <= level:
            return IntegrationOrder("I1" if d == 1 else "I2plus", evidence)
    return IntegrationOrder("I2plus", evidence)


def a_transform(series: TimeSeries) -> TimeSeries:
    """Pairwise sum: output at t is input at t plus input at t-1.

    Output starts one period later and is one observation shorter. Note a
    two-term moving sum does not change a series' integration order; the
    cumulative alternative that does is :func:`running_sum`.
    """
    if len(series) < 2:
        raise DataError(f"series {series.label!r} too short for pairwise sum")
    values = series.values[1:] + series.values[:-1]
    if series.frequency == "monthly":
        start = series.start.plus(1)
    else:
        start = series.start + dt.timedelta(days=7)
    return TimeSeries(series.label, series.frequency, start, values)


def running_sum(series: TimeSeries) -> TimeSeries:
    """Cumulative sum of a series (raises the integration order by one)."""
    return TimeSeries(
        series.label, series.frequency, series.start, np.cumsum(series.values)
    )


def engle_granger(residuals, lags: int = 0) -> CointegrationResult:
    """Residual-based cointegration test on fitted levels-regression
    residuals.

    The unit-root regression carries no deterministic terms: residuals of
    a levels regression with an intercept are mean zero by construction,
    so the constant-case null distribution remains the relevant reference
    and its response surface supplies the p-value and critical values.
    The verdict is "cointegrated" when the statistic falls below the 1%
    critical value.
    """
    values = np.asarray(residuals, dtype=float)
    if np.std(values) == 0.0:
        raise DataError("residuals are constant")
    t = len(values)
    if t - 1 - lags <= lags + 1:
        raise DataError(f"residual series too short (T={t})")
    fit, nobs = _adf_regression(values, "nc", lags)
    stat = float(fit.t_values[0])
    crit = mackinnon_crit("c", nobs)
    return CointegrationResult(
        statistic=stat,
        p_value=mackinnon_pvalue(stat, "c"),
        critical_values=crit,
        lags_used=lags,
        nobs=nobs,
        cointegrated=stat < crit["1%"],
    )
