"""Vector autoregression and Granger exclusion tests.

Each equation is estimated by OLS on an intercept plus ``lag_order`` lags
of every variable. Exclusion tests are Wald statistics built from the
per-equation homoskedastic covariance, chi-square distributed with one
degree of freedom per excluded lag coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import kernels
from .dist import chi_square, tail_probability
from .errors import DataError
from .ols import OlsFit, ols_fit
from .series import Panel

ALL = "ALL"


@dataclass(frozen=True, eq=False)
class VarFit:
    """Per-equation OLS fits on the shared lagged design."""

    variables: tuple
    lag_order: int
    equations: dict = field(repr=False)  # variable -> OlsFit
    nobs: int

    def equation(self, variable: str) -> OlsFit:
        return self.equations[variable]

    def coefficient(self, equation: str, variable: str, lag: int) -> float:
        fit = self.equations[equation]
        return fit.coefficient(f"L{lag}.{variable}")

    def table_rows(self) -> list:
        """(equation, term, coef, std err, z, p) rows; p from the normal."""
        rows = []
        for eq in self.variables:
            fit = self.equations[eq]
            for j, term in enumerate(fit.term_labels):
                coef = float(fit.coefficients[j])
                se = float(fit.standard_errors[j])
                if se > 0.0:
                    z = coef / se
                    p = 2.0 * kernels.normal_sf(abs(z))
                else:
                    z = 0.0 if coef == 0.0 else float(np.inf * np.sign(coef))
                    p = 1.0 if coef == 0.0 else 0.0
                rows.append((eq, term, coef, se, z, p))
        return rows


@dataclass(frozen=True)
class GrangerResult:
    """Wald exclusion test of one variable (or ALL others) from an
    equation."""

    equation: str
    excluded: str
    chi2: float
    df: int
    p_value: float


def var_fit(panel: Panel, lag_order: int = 2) -> VarFit:
    """Estimate a VAR(lag_order) over every panel column."""
    if lag_order < 1:
        raise ValueError("lag_order must be at least 1")
    t, n = panel.n_rows, panel.n_cols
    k = 1 + lag_order * n
    if t - lag_order <= k:
        raise DataError(
            f"not enough observations for VAR({lag_order}) over {n} variables "
            f"(T={t}, need > {k + lag_order})"
        )
    values = panel.values
    cols = []
    labels = []
    for lag in range(1, lag_order + 1):
        for j, var in enumerate(panel.labels):
            cols.append(values[lag_order - lag : t - lag, j])
            labels.append(f"L{lag}.{var}")
    x = np.column_stack(cols)
    equations = {}
    for j, var in enumerate(panel.labels):
        y = values[lag_order:, j]
        equations[var] = ols_fit(y, x, labels, intercept=True)
    return VarFit(
        variables=panel.labels,
        lag_order=lag_order,
        equations=equations,
        nobs=t - lag_order,
    )


def granger_exclusion(
    fit: VarFit, target_equation: str, excluded: str | Sequence[str]
) -> GrangerResult:
    """Test whether lags of the excluded variable(s) enter the target
    equation."""
    if target_equation not in fit.variables:
        raise KeyError(f"unknown equation {target_equation!r}")
    if isinstance(excluded, str):
        if excluded == ALL:
            excluded_vars = [v for v in fit.variables if v != target_equation]
        else:
            excluded_vars = [excluded]
        excluded_name = excluded
    else:
        excluded_vars = list(excluded)
        excluded_name = "+".join(excluded_vars)
    for var in excluded_vars:
        if var not in fit.variables:
            raise KeyError(f"unknown variable {var!r}")
        if var == target_equation:
            raise ValueError("cannot exclude the equation's own variable")

    eq = fit.equations[target_equation]
    idx = [
        eq.term_labels.index(f"L{lag}.{var}")
        for var in excluded_vars
        for lag in range(1, fit.lag_order + 1)
    ]
    gamma = eq.coefficients[idx]
    cov = eq.sigma2 * eq.xtx_inv[np.ix_(idx, idx)]
    wald = float(gamma @ kernels.spd_solve(cov, gamma))
    df = len(idx)
    return GrangerResult(
        equation=target_equation,
        excluded=excluded_name,
        chi2=wald,
        df=df,
        p_value=tail_probability(chi_square(df), wald),
    )
