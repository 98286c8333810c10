"""Tail probabilities for the normal, Student-t, chi-square, and F families.

All tails flow through the regularized incomplete gamma/beta kernels
(continued-fraction evaluation); there are no closed-form shortcuts here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import kernels

STUDENT_T = "student_t"
CHI_SQUARE = "chi_square"
F_DIST = "f"
NORMAL = "normal"

_FAMILIES = (STUDENT_T, CHI_SQUARE, F_DIST, NORMAL)


@dataclass(frozen=True)
class DistSpec:
    """A reference distribution for a test statistic."""

    family: str
    df1: float | None = None
    df2: float | None = None

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.family in (STUDENT_T, CHI_SQUARE, F_DIST):
            if self.df1 is None or self.df1 <= 0:
                raise ValueError(f"{self.family} requires positive df1")
        if self.family == F_DIST and (self.df2 is None or self.df2 <= 0):
            raise ValueError("f requires positive df2")


def normal() -> DistSpec:
    return DistSpec(NORMAL)


def student_t(df: float) -> DistSpec:
    return DistSpec(STUDENT_T, df1=df)


def chi_square(df: float) -> DistSpec:
    return DistSpec(CHI_SQUARE, df1=df)


def f_dist(df1: float, df2: float) -> DistSpec:
    return DistSpec(F_DIST, df1=df1, df2=df2)


def tail_probability(dist: DistSpec, statistic: float) -> float:
    """Upper-tail probability P(D >= statistic)."""
    if not math.isfinite(statistic):
        raise ValueError(f"statistic must be finite, got {statistic}")
    if dist.family == NORMAL:
        return kernels.normal_sf(statistic)
    if dist.family == CHI_SQUARE:
        if statistic <= 0.0:
            return 1.0
        return kernels.reg_gamma_q(dist.df1 / 2.0, statistic / 2.0)
    if dist.family == STUDENT_T:
        if statistic == 0.0:
            return 0.5
        df = dist.df1
        half = 0.5 * kernels.reg_beta(df / 2.0, 0.5, df / (df + statistic * statistic))
        return half if statistic > 0.0 else 1.0 - half
    # F
    if statistic <= 0.0:
        return 1.0
    d1, d2 = dist.df1, dist.df2
    return kernels.reg_beta(d2 / 2.0, d1 / 2.0, d2 / (d2 + d1 * statistic))


def student_t_two_sided(statistic: float, df: float) -> float:
    """Two-sided p-value P(|T| >= |statistic|) for a Student-t variate."""
    return 2.0 * tail_probability(student_t(df), abs(statistic))


def student_t_upper_quantile(prob: float, df: float) -> float:
    """The t value whose upper-tail probability is ``prob`` (bisection)."""
    if not 0.0 < prob < 1.0:
        raise ValueError("probability must lie strictly in (0, 1)")
    if prob == 0.5:
        return 0.0
    target = min(prob, 1.0 - prob)
    spec = student_t(df)
    hi = 1.0
    while tail_probability(spec, hi) > target:
        hi *= 2.0
        if hi > 1e12:
            raise ArithmeticError("t quantile search failed to bracket")
    lo = 0.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if tail_probability(spec, mid) > target:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-13 * max(1.0, hi):
            break
    value = 0.5 * (lo + hi)
    return value if prob < 0.5 else -value
