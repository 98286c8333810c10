"""Minimal deterministic SVG line/bar plots.

Hand-rolled rather than delegating to a plotting library so that emitted
plot files are byte-identical across runs and environments: every number
is formatted with a fixed precision and elements are written in a fixed
order.
"""

from __future__ import annotations

import math

_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b")

_W, _H = 880, 430
_ML, _MR, _MT, _MB = 64, 16, 34, 46


def _fmt(value: float) -> str:
    return f"{value:.2f}"


def _ticks(lo: float, hi: float, n: int = 5):
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / n
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 2.5, 5.0, 10.0):
        if raw <= mult * mag:
            step = mult * mag
            break
    first = math.ceil(lo / step) * step
    ticks = []
    v = first
    while v <= hi + 1e-9 * step:
        ticks.append(0.0 if abs(v) < 1e-12 else v)
        v += step
    return ticks


class _Scale:
    def __init__(self, lo, hi, out_lo, out_hi):
        if hi <= lo:
            hi = lo + 1.0
        self.lo, self.hi = lo, hi
        self.out_lo, self.out_hi = out_lo, out_hi

    def __call__(self, v: float) -> float:
        frac = (v - self.lo) / (self.hi - self.lo)
        return self.out_lo + frac * (self.out_hi - self.out_lo)


def _frame(title: str, xscale, yscale, x_tick_labels, parts):
    head = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
        f'<text x="{_W / 2:.0f}" y="20" font-family="sans-serif" font-size="15" '
        f'text-anchor="middle">{title}</text>',
    ]
    axes = []
    for tick in _ticks(yscale.lo, yscale.hi):
        y = yscale(tick)
        axes.append(
            f'<line x1="{_ML}" y1="{_fmt(y)}" x2="{_W - _MR}" y2="{_fmt(y)}" '
            f'stroke="#dddddd" stroke-width="1"/>'
        )
        axes.append(
            f'<text x="{_ML - 6}" y="{_fmt(y + 4)}" font-family="sans-serif" '
            f'font-size="11" text-anchor="end">{tick:.4g}</text>'
        )
    for pos, label in x_tick_labels:
        x = xscale(pos)
        axes.append(
            f'<line x1="{_fmt(x)}" y1="{_H - _MB}" x2="{_fmt(x)}" '
            f'y2="{_H - _MB + 4}" stroke="#333333" stroke-width="1"/>'
        )
        axes.append(
            f'<text x="{_fmt(x)}" y="{_H - _MB + 18}" font-family="sans-serif" '
            f'font-size="11" text-anchor="middle">{label}</text>'
        )
    axes.append(
        f'<rect x="{_ML}" y="{_MT}" width="{_W - _ML - _MR}" '
        f'height="{_H - _MT - _MB}" fill="none" stroke="#333333"/>'
    )
    return "\n".join(head + axes + parts + ["</svg>"]) + "\n"


def line_plot(series, title: str, x_tick_labels=()) -> str:
    """Polyline plot. ``series`` is a list of (label, xs, ys) triples."""
    all_x = [x for _, xs, _ in series for x in xs]
    all_y = [y for _, _, ys in series for y in ys]
    xscale = _Scale(min(all_x), max(all_x), _ML, _W - _MR)
    pad = 0.05 * (max(all_y) - min(all_y) or 1.0)
    yscale = _Scale(max(all_y) + pad, min(all_y) - pad, _MT, _H - _MB)
    parts = []
    for i, (label, xs, ys) in enumerate(series):
        color = _COLORS[i % len(_COLORS)]
        points = " ".join(f"{_fmt(xscale(x))},{_fmt(yscale(y))}" for x, y in zip(xs, ys))
        parts.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.5" '
            f'points="{points}"/>'
        )
        parts.append(
            f'<text x="{_W - _MR - 8}" y="{_MT + 16 + 15 * i}" '
            f'font-family="sans-serif" font-size="12" text-anchor="end" '
            f'fill="{color}">{label}</text>'
        )
    return _frame(title, xscale, yscale, list(x_tick_labels), parts)


def scree_plot(eigenvalues, title: str) -> str:
    """Eigenvalue scree: line with circular markers."""
    xs = list(range(1, len(eigenvalues) + 1))
    ys = list(eigenvalues)
    xscale = _Scale(1, max(xs), _ML, _W - _MR)
    yscale = _Scale(max(ys) * 1.05, 0.0, _MT, _H - _MB)
    parts = []
    points = " ".join(f"{_fmt(xscale(x))},{_fmt(yscale(y))}" for x, y in zip(xs, ys))
    parts.append(
        f'<polyline fill="none" stroke="{_COLORS[0]}" stroke-width="1.5" '
        f'points="{points}"/>'
    )
    for x, y in zip(xs, ys):
        parts.append(
            f'<circle cx="{_fmt(xscale(x))}" cy="{_fmt(yscale(y))}" r="3" '
            f'fill="{_COLORS[0]}"/>'
        )
    ticks = [(x, str(x)) for x in xs if x == 1 or x % 5 == 0]
    return _frame(title, xscale, yscale, ticks, parts)


def acf_plot(rows, title: str) -> str:
    """Autocorrelations as bars with stepped +/- band lines.

    ``rows`` holds (lag, acf, band, within) tuples.
    """
    lags = [r[0] for r in rows]
    acfs = [r[1] for r in rows]
    bands = [r[2] for r in rows]
    ymax = max(1.0, max(bands) * 1.1, max(abs(a) for a in acfs) * 1.1)
    xscale = _Scale(0, max(lags) + 1, _ML, _W - _MR)
    yscale = _Scale(ymax, -ymax, _MT, _H - _MB)
    parts = [
        f'<line x1="{_ML}" y1="{_fmt(yscale(0.0))}" x2="{_W - _MR}" '
        f'y2="{_fmt(yscale(0.0))}" stroke="#333333" stroke-width="1"/>'
    ]
    for sign in (1.0, -1.0):
        points = " ".join(
            f"{_fmt(xscale(lag))},{_fmt(yscale(sign * band))}"
            for lag, band in zip(lags, bands)
        )
        parts.append(
            f'<polyline fill="none" stroke="{_COLORS[1]}" stroke-width="1" '
            f'stroke-dasharray="4 3" points="{points}"/>'
        )
    for lag, acf in zip(lags, acfs):
        x = xscale(lag)
        parts.append(
            f'<line x1="{_fmt(x)}" y1="{_fmt(yscale(0.0))}" x2="{_fmt(x)}" '
            f'y2="{_fmt(yscale(acf))}" stroke="{_COLORS[0]}" stroke-width="3"/>'
        )
    ticks = [(lag, str(lag)) for lag in lags if lag % 5 == 0 or lag == 1]
    return _frame(title, xscale, yscale, ticks, parts)
