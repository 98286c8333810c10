"""Independent oracles used across the test suite.

Deliberately naive implementations (pure-Python loops, cofactor
inversion, brute-force bucketing) that share no code with the library
paths they check.
"""

from __future__ import annotations

import datetime as dt


def det_cofactor(a):
    """Determinant by cofactor (Laplace) expansion; a is a list of lists."""
    n = len(a)
    if n == 1:
        return a[0][0]
    total = 0.0
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in a[1:]]
        total += ((-1.0) ** j) * a[0][j] * det_cofactor(minor)
    return total


def inverse_cofactor(a):
    """Matrix inverse via the adjugate over the determinant."""
    n = len(a)
    d = det_cofactor(a)
    if d == 0.0:
        raise ZeroDivisionError("singular matrix")
    inv = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1 :] for r, row in enumerate(a) if r != i]
            inv[j][i] = ((-1.0) ** (i + j)) * det_cofactor(minor) / d
    return inv


def ols_oracle(y, x_rows):
    """Normal-equations OLS with explicit cofactor inversion.

    ``x_rows`` is the full design as a list of row lists (intercept column
    included by the caller). Returns (beta, std_errors, residuals, rss).
    """
    n = len(x_rows)
    k = len(x_rows[0])
    xtx = [[sum(x_rows[t][i] * x_rows[t][j] for t in range(n)) for j in range(k)]
           for i in range(k)]
    xty = [sum(x_rows[t][i] * y[t] for t in range(n)) for i in range(k)]
    inv = inverse_cofactor(xtx)
    beta = [sum(inv[i][j] * xty[j] for j in range(k)) for i in range(k)]
    resid = [y[t] - sum(x_rows[t][j] * beta[j] for j in range(k)) for t in range(n)]
    rss = sum(e * e for e in resid)
    sigma2 = rss / (n - k)
    se = [(sigma2 * inv[j][j]) ** 0.5 for j in range(k)]
    return beta, se, resid, rss


def week_bucket_oracle(start: dt.date, values):
    """Brute-force week-to-month bucketing by each week's end date.

    Returns {(year, month): mean of assigned weeks} in calendar order.
    """
    buckets: dict = {}
    for i, value in enumerate(values):
        end = start + dt.timedelta(days=7 * i + 6)
        buckets.setdefault((end.year, end.month), []).append(value)
    return {key: sum(vs) / len(vs) for key, vs in sorted(buckets.items())}


def correlation_oracle(columns):
    """Pearson correlation matrix from raw column lists (T-1 denominator)."""
    n_cols = len(columns)
    t = len(columns[0])
    means = [sum(col) / t for col in columns]
    sds = [
        (sum((v - means[j]) ** 2 for v in col) / (t - 1)) ** 0.5
        for j, col in enumerate(columns)
    ]
    corr = [[0.0] * n_cols for _ in range(n_cols)]
    for i in range(n_cols):
        for j in range(n_cols):
            cov = sum(
                (columns[i][s] - means[i]) * (columns[j][s] - means[j])
                for s in range(t)
            ) / (t - 1)
            corr[i][j] = cov / (sds[i] * sds[j])
    return corr


def kmo_oracle(columns):
    """KMO via the inverse correlation matrix computed by cofactors."""
    corr = correlation_oracle(columns)
    inv = inverse_cofactor(corr)
    n = len(corr)
    r2 = 0.0
    q2 = 0.0
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            r2 += corr[i][j] ** 2
            partial = -inv[i][j] / (inv[i][i] * inv[j][j]) ** 0.5
            q2 += partial**2
    return r2 / (r2 + q2)
