"""Ordinary least squares with full inference output.

The normal equations are solved by Cholesky on the column-scaled X'X
(see the kernel layer); conditioning beyond ~1e12 is reported as rank
deficiency, naming the offending column.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import kernels
from .dist import student_t_two_sided, student_t_upper_quantile
from .errors import DataError, RankDeficiencyError

INTERCEPT_LABEL = "const"


@dataclass(frozen=True, eq=False)
class OlsFit:
    """Fitted least-squares regression and its inference summary."""

    coefficients: np.ndarray
    standard_errors: np.ndarray
    t_values: np.ndarray
    p_values: np.ndarray
    confidence_intervals_95: tuple
    residuals: np.ndarray
    r_squared: float
    adjusted_r_squared: float
    residual_sum_sq: float
    root_residual: float  # regression standard error, sqrt(RSS / (n - k))
    n: int
    k: int
    term_labels: tuple
    design: np.ndarray = field(repr=False)
    xtx_inv: np.ndarray = field(repr=False)
    has_intercept: bool = True

    @property
    def sigma2(self) -> float:
        return self.residual_sum_sq / (self.n - self.k)

    @property
    def fitted(self) -> np.ndarray:
        return self.design @ self.coefficients

    def coefficient(self, label: str) -> float:
        return float(self.coefficients[self.term_labels.index(label)])

    def p_value(self, label: str) -> float:
        return float(self.p_values[self.term_labels.index(label)])

    def summary_rows(self) -> list:
        """(label, coef, std err, t, p, ci_low, ci_high) per term."""
        rows = []
        for j, label in enumerate(self.term_labels):
            lo, hi = self.confidence_intervals_95[j]
            rows.append(
                (
                    label,
                    float(self.coefficients[j]),
                    float(self.standard_errors[j]),
                    float(self.t_values[j]),
                    float(self.p_values[j]),
                    lo,
                    hi,
                )
            )
        return rows


def ols_fit(
    y,
    x,
    labels: Sequence[str] | None = None,
    intercept: bool = True,
) -> OlsFit:
    """Fit y on the columns of x (optionally prepending an intercept).

    Inference uses n - k residual degrees of freedom, two-sided Student-t
    p-values, and 95% confidence intervals.
    """
    y = np.ascontiguousarray(y, dtype=float)
    x = np.ascontiguousarray(x, dtype=float)
    if x.ndim != 2:
        raise ValueError("design matrix must be 2-D")
    n, m = x.shape
    if len(y) != n:
        raise ValueError(f"y has {len(y)} rows but design has {n}")
    if labels is None:
        labels = [f"x{j + 1}" for j in range(m)]
    labels = list(labels)
    if len(labels) != m:
        raise ValueError("label count does not match design columns")
    if intercept:
        x = np.hstack([np.ones((n, 1)), x])
        labels = [INTERCEPT_LABEL] + labels
    k = x.shape[1]
    if n <= k:
        raise DataError(f"need more observations than regressors (n={n}, k={k})")

    try:
        beta, xtx_inv, resid, rss = kernels.ols_core(x, y)
    except RankDeficiencyError as err:
        col = err.column
        label = labels[col] if col is not None and col < len(labels) else "?"
        raise RankDeficiencyError(
            f"design is rank deficient at column {label!r}", column=col
        ) from None

    df_resid = n - k
    sigma2 = rss / df_resid
    se = np.sqrt(np.maximum(sigma2 * np.diag(xtx_inv), 0.0))

    t_vals = np.empty(k)
    p_vals = np.empty(k)
    for j in range(k):
        if se[j] > 0.0:
            t_vals[j] = beta[j] / se[j]
            p_vals[j] = student_t_two_sided(t_vals[j], df_resid)
        else:
            t_vals[j] = 0.0 if beta[j] == 0.0 else np.inf * np.sign(beta[j])
            p_vals[j] = 1.0 if beta[j] == 0.0 else 0.0

    t_crit = student_t_upper_quantile(0.025, df_resid)
    ci = tuple(
        (float(beta[j] - t_crit * se[j]), float(beta[j] + t_crit * se[j]))
        for j in range(k)
    )

    if intercept:
        tss = float(np.sum((y - y.mean()) ** 2))
    else:
        tss = float(y @ y)
    if tss > 0.0:
        r2 = 1.0 - rss / tss
    else:
        r2 = 1.0 if rss == 0.0 else 0.0
    if intercept:
        adj = 1.0 - (1.0 - r2) * (n - 1) / df_resid
    else:
        adj = 1.0 - (1.0 - r2) * n / df_resid

    return OlsFit(
        coefficients=beta,
        standard_errors=se,
        t_values=t_vals,
        p_values=p_vals,
        confidence_intervals_95=ci,
        residuals=resid,
        r_squared=float(r2),
        adjusted_r_squared=float(adj),
        residual_sum_sq=float(rss),
        root_residual=float(np.sqrt(sigma2)),
        n=n,
        k=k,
        term_labels=tuple(labels),
        design=x,
        xtx_inv=xtx_inv,
        has_intercept=intercept,
    )
