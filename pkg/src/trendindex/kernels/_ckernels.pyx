# cython: language_level=3
"""Compiled kernels: the fast backend.

Same algorithms and guards as ``_pykernels`` (the import-time fallback);
kept in lockstep so the backends agree to floating-point noise.
"""

from libc.math cimport exp, fabs, lgamma as c_lgamma, log, sqrt

import numpy as np

from ..errors import ConvergenceError, RankDeficiencyError

BACKEND_NAME = "cython"

cdef double _EPS = 1e-15
cdef double _FPMIN = 1e-300
cdef int _ITMAX = 500
cdef double _COND_GUARD = 1e-12


def gammaln(double x):
    return c_lgamma(x)


cdef double _gamma_series(double a, double x) except *:
    cdef double ap = a
    cdef double total = 1.0 / a
    cdef double term = total
    cdef int i
    for i in range(_ITMAX):
        ap += 1.0
        term *= x / ap
        total += term
        if fabs(term) < fabs(total) * _EPS:
            return total * exp(-x + a * log(x) - c_lgamma(a))
    raise ConvergenceError(
        f"incomplete gamma series did not converge (a={a}, x={x})",
        iterations=_ITMAX,
    )


cdef double _gamma_cf(double a, double x) except *:
    cdef double b = x + 1.0 - a
    cdef double c = 1.0 / _FPMIN
    cdef double d = 1.0 / b
    cdef double h = d
    cdef double an, delta
    cdef int i
    for i in range(1, _ITMAX + 1):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if fabs(d) < _FPMIN:
            d = _FPMIN
        c = b + an / c
        if fabs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if fabs(delta - 1.0) < _EPS:
            return exp(-x + a * log(x) - c_lgamma(a)) * h
    raise ConvergenceError(
        f"incomplete gamma continued fraction did not converge (a={a}, x={x})",
        iterations=_ITMAX,
    )


def reg_gamma_p(double a, double x):
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


def reg_gamma_q(double a, double x):
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


cdef double _beta_cf(double a, double b, double x) except *:
    cdef double qab = a + b
    cdef double qap = a + 1.0
    cdef double qam = a - 1.0
    cdef double c = 1.0
    cdef double d = 1.0 - qab * x / qap
    cdef double h, aa, delta
    cdef int m, m2
    if fabs(d) < _FPMIN:
        d = _FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, _ITMAX + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if fabs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if fabs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if fabs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if fabs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if fabs(delta - 1.0) < _EPS:
            return h
    raise ConvergenceError(
        f"incomplete beta continued fraction did not converge (a={a}, b={b}, x={x})",
        iterations=_ITMAX,
    )


def reg_beta(double a, double b, double x):
    """Regularized incomplete beta I_x(a, b)."""
    cdef double front
    if a <= 0.0 or b <= 0.0:
        raise ValueError("shape parameters must be positive")
    if x < 0.0 or x > 1.0:
        raise ValueError("argument must lie in [0, 1]")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    front = exp(
        c_lgamma(a + b)
        - c_lgamma(a)
        - c_lgamma(b)
        + a * log(x)
        + b * log(1.0 - x)
    )
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_cf(a, b, x) / a
    return 1.0 - front * _beta_cf(b, a, 1.0 - x) / b


def normal_sf(double z):
    """Standard normal upper tail P(Z >= z), via the incomplete gamma."""
    cdef double half_tail
    if z == 0.0:
        return 0.5
    half_tail = 0.5 * reg_gamma_q(0.5, 0.5 * z * z)
    return half_tail if z > 0.0 else 1.0 - half_tail


def normal_cdf(double z):
    """Standard normal lower tail P(Z <= z)."""
    return 1.0 - normal_sf(z)


def jacobi_eigh(a_in, double tol=1e-12, int max_sweeps=100):
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Returns (eigenvalues descending, eigenvector columns in matching order).
    """
    a_arr = np.array(a_in, dtype=float)
    cdef Py_ssize_t n = a_arr.shape[0]
    if a_arr.ndim != 2 or a_arr.shape[1] != n:
        raise ValueError("matrix must be square")
    v_arr = np.eye(n)
    cdef double[:, ::1] a = a_arr
    cdef double[:, ::1] v = v_arr
    cdef double scale = 0.0, off, theta, t, c, s, apq, tp, tq
    cdef Py_ssize_t i, j, p, q, sweep

    for i in range(n):
        for j in range(n):
            scale += a[i, j] * a[i, j]
    scale = sqrt(scale)
    if scale == 0.0 or n == 1:
        order = np.argsort(-np.diag(a_arr), kind="stable")
        return np.diag(a_arr)[order].copy(), v_arr[:, order].copy()

    for sweep in range(max_sweeps):
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += a[i, j] * a[i, j]
        off = sqrt(off)
        if off <= tol * scale:
            w = np.diag(a_arr).copy()
            order = np.argsort(-w, kind="stable")
            return w[order].copy(), v_arr[:, order].copy()
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if fabs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (fabs(theta) + sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                for i in range(n):
                    tp = a[i, p]
                    tq = a[i, q]
                    a[i, p] = c * tp - s * tq
                    a[i, q] = s * tp + c * tq
                for i in range(n):
                    tp = a[p, i]
                    tq = a[q, i]
                    a[p, i] = c * tp - s * tq
                    a[q, i] = s * tp + c * tq
                for i in range(n):
                    tp = v[i, p]
                    tq = v[i, q]
                    v[i, p] = c * tp - s * tq
                    v[i, q] = s * tp + c * tq
    raise ConvergenceError(
        f"Jacobi eigensolver did not converge within {max_sweeps} sweeps",
        iterations=max_sweeps,
    )


cdef int _scaled_cholesky_mv(const double[:, ::1] a, double[:, ::1] low,
                             double[::1] d) except -1:
    # Cholesky of D^-1 A D^-1 (unit diagonal) with the condition guard.
    cdef Py_ssize_t k = a.shape[0]
    cdef Py_ssize_t i, j, m
    cdef double pivot, acc
    for j in range(k):
        if a[j, j] <= 0.0:
            raise RankDeficiencyError(
                f"normal matrix has non-positive diagonal at column {j}", column=j
            )
        d[j] = sqrt(a[j, j])
    for j in range(k):
        acc = 0.0
        for m in range(j):
            acc += low[j, m] * low[j, m]
        pivot = a[j, j] / (d[j] * d[j]) - acc
        if pivot <= _COND_GUARD:
            raise RankDeficiencyError(
                f"column {j} is linearly dependent on earlier columns "
                "(condition guard)",
                column=j,
            )
        low[j, j] = sqrt(pivot)
        for i in range(j + 1, k):
            acc = 0.0
            for m in range(j):
                acc += low[i, m] * low[j, m]
            low[i, j] = (a[i, j] / (d[i] * d[j]) - acc) / low[j, j]
    return 0


cdef void _chol_solve_vec(double[:, ::1] low, double[::1] w):
    cdef Py_ssize_t k = low.shape[0]
    cdef Py_ssize_t i, j
    cdef double acc
    for j in range(k):
        acc = 0.0
        for i in range(j):
            acc += low[j, i] * w[i]
        w[j] = (w[j] - acc) / low[j, j]
    for j in range(k - 1, -1, -1):
        acc = 0.0
        for i in range(j + 1, k):
            acc += low[i, j] * w[i]
        w[j] = (w[j] - acc) / low[j, j]


def spd_solve(a, b):
    """Solve A x = b for symmetric positive-definite A (condition-guarded)."""
    a_arr = np.ascontiguousarray(a, dtype=float)
    cdef Py_ssize_t k = a_arr.shape[0]
    low_arr = np.zeros((k, k))
    d_arr = np.empty(k)
    cdef const double[:, ::1] a_mv = a_arr
    cdef double[:, ::1] low = low_arr
    cdef double[::1] d = d_arr
    _scaled_cholesky_mv(a_mv, low, d)
    b_arr = np.asarray(b, dtype=float)
    cdef Py_ssize_t col
    if b_arr.ndim == 1:
        w = np.ascontiguousarray(b_arr / d_arr)
        _chol_solve_vec(low, w)
        return w / d_arr
    out = np.empty_like(b_arr)
    for col in range(b_arr.shape[1]):
        w = np.ascontiguousarray(b_arr[:, col] / d_arr)
        _chol_solve_vec(low, w)
        out[:, col] = w / d_arr
    return out


def spd_inverse(a):
    """Inverse of a symmetric positive-definite matrix (condition-guarded)."""
    a_arr = np.ascontiguousarray(a, dtype=float)
    return spd_solve(a_arr, np.eye(a_arr.shape[0]))


def ols_core(x, y):
    """Least-squares core: returns (beta, (X'X)^-1, residuals, rss).

    Normal equations by Cholesky on the column-scaled X'X; a pivot under
    the condition guard raises RankDeficiencyError with the column index.
    """
    x_arr = np.ascontiguousarray(x, dtype=float)
    y_arr = np.ascontiguousarray(y, dtype=float)
    cdef Py_ssize_t n = x_arr.shape[0]
    cdef Py_ssize_t k = x_arr.shape[1]
    xtx_arr = np.empty((k, k))
    xty_arr = np.empty(k)
    cdef const double[:, ::1] xmv = x_arr
    cdef const double[::1] ymv = y_arr
    cdef double[:, ::1] xtx = xtx_arr
    cdef double[::1] xty = xty_arr
    cdef Py_ssize_t i, j, t
    cdef double acc

    for i in range(k):
        for j in range(i, k):
            acc = 0.0
            for t in range(n):
                acc += xmv[t, i] * xmv[t, j]
            xtx[i, j] = acc
            xtx[j, i] = acc
        acc = 0.0
        for t in range(n):
            acc += xmv[t, i] * ymv[t]
        xty[i] = acc

    low_arr = np.zeros((k, k))
    d_arr = np.empty(k)
    cdef double[:, ::1] low = low_arr
    cdef double[::1] d = d_arr
    _scaled_cholesky_mv(xtx, low, d)

    beta = np.ascontiguousarray(xty_arr / d_arr)
    _chol_solve_vec(low, beta)
    beta = beta / d_arr

    inv = np.empty((k, k))
    for j in range(k):
        col = np.ascontiguousarray(np.eye(k)[:, j] / d_arr)
        _chol_solve_vec(low, col)
        inv[:, j] = col / d_arr

    resid_arr = np.empty(n)
    cdef double[::1] resid = resid_arr
    cdef const double[::1] bmv = beta
    cdef double rss = 0.0
    for t in range(n):
        acc = ymv[t]
        for j in range(k):
            acc -= xmv[t, j] * bmv[j]
        resid[t] = acc
        rss += acc * acc
    return beta, inv, resid_arr, rss
