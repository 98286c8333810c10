"""MacKinnon response-surface constants for Dickey-Fuller distributions.

P-value approximation coefficients follow MacKinnon (1994), "Approximate
asymptotic distribution functions for unit-root and cointegration tests",
J. Business & Economic Statistics 12, 167-176. Critical-value surfaces
follow MacKinnon (2010), "Critical values for cointegration tests",
Queen's Economics Dept WP 1227, as polynomials in 1/T.

Only the single-series (N=1) tables are embedded: deterministic cases
"nc" (no terms), "c" (constant), "ct" (constant + trend).
"""

from __future__ import annotations

import math

from . import kernels
from .errors import ConfigError

CASES = ("nc", "c", "ct")

# P-value surface: p = Phi(poly(stat)). "small" coefficients apply for
# stat <= tau_star (left region), "large" above, with hard clamps outside
# [tau_min, tau_max].
_TAU_STAR = {"nc": -1.04, "c": -1.61, "ct": -2.89}
_TAU_MIN = {"nc": -19.04, "c": -18.83, "ct": -16.18}
_TAU_MAX = {"nc": math.inf, "c": 2.74, "ct": 0.70}

_SMALLP = {
    "nc": (0.6344, 1.2378, 3.2496e-2),
    "c": (2.1659, 1.4412, 3.8269e-2),
    "ct": (3.2512, 1.6047, 4.9588e-2),
}
_LARGEP = {
    "nc": (0.4797, 9.3557e-1, -0.6999e-1, 3.3066e-2),
    "c": (1.7339, 9.3202e-1, -1.2745e-1, -1.0368e-2),
    "ct": (2.5261, 6.1654e-1, -3.7956e-1, -6.0285e-2),
}

# Critical-value surface: cv(level) = b0 + b1/T + b2/T^2 + b3/T^3.
_CRIT = {
    "nc": {
        0.01: (-2.56574, -2.2358, -3.627, 0.0),
        0.05: (-1.94100, -0.2686, -3.365, 31.223),
        0.10: (-1.61682, 0.2656, -2.714, 25.364),
    },
    "c": {
        0.01: (-3.43035, -6.5393, -16.786, -79.433),
        0.05: (-2.86154, -2.8903, -4.234, -40.040),
        0.10: (-2.56677, -1.5384, -2.809, 0.0),
    },
    "ct": {
        0.01: (-3.95877, -9.0531, -28.428, -134.155),
        0.05: (-3.41049, -4.3904, -9.036, -45.374),
        0.10: (-3.12705, -2.5856, -3.925, -22.380),
    },
}

LEVEL_KEYS = {0.01: "1%", 0.05: "5%", 0.10: "10%"}


def _check_case(case: str) -> None:
    if case not in CASES:
        raise ConfigError(f"unknown deterministic case {case!r}")


def mackinnon_pvalue(stat: float, case: str) -> float:
    """Approximate p-value of a Dickey-Fuller t statistic."""
    _check_case(case)
    if stat > _TAU_MAX[case]:
        return 1.0
    if stat < _TAU_MIN[case]:
        return 0.0
    coeffs = _SMALLP[case] if stat <= _TAU_STAR[case] else _LARGEP[case]
    poly = 0.0
    for b in reversed(coeffs):
        poly = poly * stat + b
    return kernels.normal_cdf(poly)


def mackinnon_crit(case: str, nobs: float = math.inf) -> dict:
    """Finite-sample critical values at the 1%/5%/10% levels."""
    _check_case(case)
    out = {}
    for level, key in LEVEL_KEYS.items():
        b = _CRIT[case][level]
        if math.isinf(nobs):
            out[key] = b[0]
        else:
            inv_t = 1.0 / nobs
            out[key] = b[0] + inv_t * (b[1] + inv_t * (b[2] + inv_t * b[3]))
    return out
