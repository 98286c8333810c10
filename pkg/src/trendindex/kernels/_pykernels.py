"""Pure-Python/NumPy kernels: the fallback backend.

Mirrors the algorithms of the compiled extension exactly (same iteration
schemes, same guards), so the two backends agree to floating-point noise.
The hot callers are the Monte Carlo test batteries and the PCA fit, which
evaluate these kernels tens of thousands of times per run.
"""

import math

import numpy as np

from ..errors import ConvergenceError, RankDeficiencyError

BACKEND_NAME = "pure"

_EPS = 1e-15
_FPMIN = 1e-300
_ITMAX = 500

# Cholesky pivot guard on the unit-diagonal scaled normal matrix; pivots
# below this mark the system as conditioned beyond ~1e12.
_COND_GUARD = 1e-12


def gammaln(x: float) -> float:
    return math.lgamma(x)


def _gamma_series(a: float, x: float) -> float:
    # Lower regularized gamma by power series, valid for x < a + 1.
    ap = a
    total = 1.0 / a
    term = total
    for _ in range(_ITMAX):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _EPS:
            return total * math.exp(-x + a * math.log(x) - math.lgamma(a))
    raise ConvergenceError(
        f"incomplete gamma series did not converge (a={a}, x={x})",
        iterations=_ITMAX,
    )


def _gamma_cf(a: float, x: float) -> float:
    # Upper regularized gamma by modified Lentz continued fraction,
    # valid for x >= a + 1.
    b = x + 1.0 - a
    c = 1.0 / _FPMIN
    d = 1.0 / b
    h = d
    for i in range(1, _ITMAX + 1):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = b + an / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return math.exp(-x + a * math.log(x) - math.lgamma(a)) * h
    raise ConvergenceError(
        f"incomplete gamma continued fraction did not converge (a={a}, x={x})",
        iterations=_ITMAX,
    )


def reg_gamma_p(a: float, x: float) -> float:
    """Lower regularized incomplete gamma P(a, x)."""
    if a <= 0.0:
        raise ValueError("shape parameter must be positive")
    if x < 0.0:
        raise ValueError("argument must be non-negative")
    if x == 0.0:
        return 0.0
    if x < a + 1.0:
        return _gamma_series(a, x)
    return 1.0 - _gamma_cf(a, x)


def reg_gamma_q(a: float, x: float) -> float:
    """Upper regularized incomplete gamma Q(a, x) = 1 - P(a, x)."""
    if a <= 0.0:
        raise ValueError("shape parameter must be positive")
    if x < 0.0:
        raise ValueError("argument must be non-negative")
    if x == 0.0:
        return 1.0
    if x < a + 1.0:
        return 1.0 - _gamma_series(a, x)
    return _gamma_cf(a, x)


def _beta_cf(a: float, b: float, x: float) -> float:
    # Continued fraction for the incomplete beta, modified Lentz scheme.
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _FPMIN:
        d = _FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, _ITMAX + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h
    raise ConvergenceError(
        f"incomplete beta continued fraction did not converge (a={a}, b={b}, x={x})",
        iterations=_ITMAX,
    )


def reg_beta(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta I_x(a, b)."""
    if a <= 0.0 or b <= 0.0:
        raise ValueError("shape parameters must be positive")
    if x < 0.0 or x > 1.0:
        raise ValueError("argument must lie in [0, 1]")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    front = math.exp(
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log(1.0 - x)
    )
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_cf(a, b, x) / a
    return 1.0 - front * _beta_cf(b, a, 1.0 - x) / b


def normal_sf(z: float) -> float:
    """Standard normal upper tail P(Z >= z), via the incomplete gamma."""
    if z == 0.0:
        return 0.5
    half_tail = 0.5 * reg_gamma_q(0.5, 0.5 * z * z)
    return half_tail if z > 0.0 else 1.0 - half_tail


def normal_cdf(z: float) -> float:
    """Standard normal lower tail P(Z <= z)."""
    return 1.0 - normal_sf(z)


def jacobi_eigh(a_in, tol: float = 1e-12, max_sweeps: int = 100):
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Returns (eigenvalues descending, eigenvector columns in matching order).
    Convergence: Frobenius norm of the off-diagonal part falls below
    ``tol`` times the Frobenius norm of the input.
    """
    a = np.array(a_in, dtype=float)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    v = np.eye(n)
    scale = math.sqrt(float(np.sum(a * a)))
    if scale == 0.0 or n == 1:
        order = np.argsort(-np.diag(a), kind="stable")
        return np.diag(a)[order].copy(), v[:, order].copy()

    off_mask = ~np.eye(n, dtype=bool)
    for _ in range(max_sweeps):
        # off-diagonal norm computed directly (a difference of totals
        # cancels catastrophically and stalls convergence)
        off = math.sqrt(float(np.sum(a[off_mask] ** 2)))
        if off <= tol * scale:
            w = np.diag(a).copy()
            order = np.argsort(-w, kind="stable")
            return w[order].copy(), v[:, order].copy()
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = float(a[p, q])
                if apq == 0.0:
                    continue
                theta = (float(a[q, q]) - float(a[p, p])) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                vec_p = v[:, p].copy()
                vec_q = v[:, q].copy()
                v[:, p] = c * vec_p - s * vec_q
                v[:, q] = s * vec_p + c * vec_q
    raise ConvergenceError(
        f"Jacobi eigensolver did not converge within {max_sweeps} sweeps",
        iterations=max_sweeps,
    )


def _scaled_cholesky(a):
    # Cholesky of D^-1 A D^-1 (unit diagonal) with the condition guard.
    # Returns (L, d) with A = D L L' D, D = diag(d).
    k = a.shape[0]
    d = np.empty(k)
    for j in range(k):
        if a[j, j] <= 0.0:
            raise RankDeficiencyError(
                f"normal matrix has non-positive diagonal at column {j}", column=j
            )
        d[j] = math.sqrt(a[j, j])
    s = a / np.outer(d, d)
    low = np.zeros((k, k))
    for j in range(k):
        pivot = s[j, j] - float(low[j, :j] @ low[j, :j])
        if pivot <= _COND_GUARD:
            raise RankDeficiencyError(
                f"column {j} is linearly dependent on earlier columns "
                "(condition guard)",
                column=j,
            )
        low[j, j] = math.sqrt(pivot)
        if j + 1 < k:
            low[j + 1 :, j] = (s[j + 1 :, j] - low[j + 1 :, :j] @ low[j, :j]) / low[
                j, j
            ]
    return low, d


def _chol_solve(low, rhs):
    # Solve (L L') x = rhs for lower-triangular L; rhs 1-D or 2-D.
    k = low.shape[0]
    w = np.array(rhs, dtype=float)
    for j in range(k):
        w[j] = (w[j] - low[j, :j] @ w[:j]) / low[j, j]
    for j in range(k - 1, -1, -1):
        w[j] = (w[j] - low[j + 1 :, j] @ w[j + 1 :]) / low[j, j]
    return w


def spd_solve(a, b):
    """Solve A x = b for symmetric positive-definite A (condition-guarded)."""
    a = np.asarray(a, dtype=float)
    low, d = _scaled_cholesky(a)
    rhs = np.asarray(b, dtype=float)
    if rhs.ndim == 1:
        return _chol_solve(low, rhs / d) / d
    return _chol_solve(low, rhs / d[:, None]) / d[:, None]


def spd_inverse(a):
    """Inverse of a symmetric positive-definite matrix (condition-guarded)."""
    a = np.asarray(a, dtype=float)
    return spd_solve(a, np.eye(a.shape[0]))


def ols_core(x, y):
    """Least-squares core: returns (beta, (X'X)^-1, residuals, rss).

    Solves the normal equations by Cholesky on the column-scaled X'X;
    a pivot falling under the condition guard raises RankDeficiencyError
    with the offending column index.
    """
    x = np.ascontiguousarray(x, dtype=float)
    y = np.ascontiguousarray(y, dtype=float)
    xtx = x.T @ x
    xty = x.T @ y
    low, d = _scaled_cholesky(xtx)
    beta = _chol_solve(low, xty / d) / d
    inv = _chol_solve(low, np.eye(xtx.shape[0]) / d[:, None]) / d[:, None]
    resid = y - x @ beta
    rss = float(resid @ resid)
    return beta, inv, resid, rss
