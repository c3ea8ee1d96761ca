"""Minimal self-contained SVG charts (no external assets, no plotting library).

Every plotted data element carries ``data-*`` attributes with the value it
encodes, and each plot area records its pixel scale, so charts can be read
back and checked numerically.
"""

from __future__ import annotations

import math
from typing import Sequence
from xml.sax.saxutils import escape

WIDTH, HEIGHT = 720, 420
MARGIN = dict(left=80, right=160, top=40, bottom=70)
PALETTE = ("#7b3294", "#1b9e77", "#d95f02", "#386cb0", "#e7298a", "#666666")


def _num(x: float) -> str:
    return f"{x:.12g}"


def nice_max(x: float) -> float:
    if x <= 0:
        return 1.0
    mag = 10 ** math.floor(math.log10(x))
    for step in (1, 2, 2.5, 5, 10):
        if step * mag >= x:
            return step * mag
    return 10 * mag


def _ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if hi <= lo:
        return [lo]
    return [lo + (hi - lo) * i / count for i in range(count + 1)]


class _Canvas:
    def __init__(self, title: str, xlabel: str, ylabel: str):
        self.parts: list[str] = []
        self.x0 = MARGIN["left"]
        self.x1 = WIDTH - MARGIN["right"]
        self.y0 = HEIGHT - MARGIN["bottom"]  # baseline
        self.y1 = MARGIN["top"]
        self.title, self.xlabel, self.ylabel = title, xlabel, ylabel

    def add(self, s: str) -> None:
        self.parts.append(s)

    def frame(self, xticks: Sequence[tuple[float, str]], yticks: Sequence[tuple[float, str]]) -> None:
        a = self.add
        a(f'<line x1="{self.x0}" y1="{self.y0}" x2="{self.x1}" y2="{self.y0}" stroke="black"/>')
        a(f'<line x1="{self.x0}" y1="{self.y0}" x2="{self.x0}" y2="{self.y1}" stroke="black"/>')
        for px, label in xticks:
            a(f'<line x1="{_num(px)}" y1="{self.y0}" x2="{_num(px)}" y2="{self.y0 + 5}" stroke="black"/>')
            a(f'<text x="{_num(px)}" y="{self.y0 + 18}" font-size="11" text-anchor="middle">{escape(label)}</text>')
        for py, label in yticks:
            a(f'<line x1="{self.x0 - 5}" y1="{_num(py)}" x2="{self.x0}" y2="{_num(py)}" stroke="black"/>')
            a(f'<text x="{self.x0 - 8}" y="{_num(py + 4)}" font-size="11" text-anchor="end">{escape(label)}</text>')
        a(f'<text x="{WIDTH / 2}" y="22" font-size="15" text-anchor="middle">{escape(self.title)}</text>')
        a(f'<text x="{(self.x0 + self.x1) / 2}" y="{HEIGHT - 20}" font-size="12" text-anchor="middle">{escape(self.xlabel)}</text>')
        cy = (self.y0 + self.y1) / 2
        a(f'<text x="18" y="{cy}" font-size="12" text-anchor="middle" transform="rotate(-90 18 {cy})">{escape(self.ylabel)}</text>')

    def legend(self, names: Sequence[str]) -> None:
        for i, name in enumerate(names):
            y = self.y1 + 10 + 20 * i
            color = PALETTE[i % len(PALETTE)]
            self.add(f'<rect x="{self.x1 + 15}" y="{y}" width="12" height="12" fill="{color}"/>')
            self.add(f'<text x="{self.x1 + 33}" y="{y + 10}" font-size="12">{escape(name)}</text>')

    def render(self) -> str:
        body = "\n".join(self.parts)
        return (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
            f'viewBox="0 0 {WIDTH} {HEIGHT}">\n'
            f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>\n{body}\n</svg>\n'
        )


def bar_chart(
    groups: Sequence[str],
    series: Sequence[str],
    means: dict[tuple[str, str], float],
    errors: dict[tuple[str, str], float],
    *,
    title: str = "",
    ylabel: str = "",
) -> str:
    """Grouped bars (one group per x category) with symmetric error whiskers."""
    c = _Canvas(title, "", ylabel)
    top = nice_max(max((means[k] + errors.get(k, 0.0) for k in means), default=1.0))
    scale = (c.y0 - c.y1) / top
    slot = (c.x1 - c.x0) / max(1, len(groups))
    bar_w = slot * 0.8 / max(1, len(series))
    yt = [(c.y0 - v * scale, f"{v:g}") for v in _ticks(0, top)]
    xt = [(c.x0 + slot * (i + 0.5), g) for i, g in enumerate(groups)]
    c.frame(xt, yt)
    c.add(f'<g id="bars" data-scale="{_num(scale)}" data-baseline="{c.y0}">')
    for gi, g in enumerate(groups):
        for si, s in enumerate(series):
            if (g, s) not in means:
                continue
            m = means[(g, s)]
            h = m * scale
            x = c.x0 + slot * gi + slot * 0.1 + bar_w * si
            color = PALETTE[si % len(PALETTE)]
            c.add(
                f'<rect class="bar" data-group="{escape(g)}" data-series="{escape(s)}" '
                f'data-mean="{_num(m)}" x="{_num(x)}" y="{_num(c.y0 - h)}" '
                f'width="{_num(bar_w)}" height="{_num(h)}" fill="{color}"/>'
            )
            e = errors.get((g, s), 0.0)
            if e > 0:
                cx = x + bar_w / 2
                ylo, yhi = c.y0 - max(0.0, m - e) * scale, c.y0 - (m + e) * scale
                c.add(
                    f'<path class="whisker" data-sd="{_num(e)}" d="M{_num(cx)},{_num(ylo)} V{_num(yhi)} '
                    f'M{_num(cx - 4)},{_num(yhi)} H{_num(cx + 4)} M{_num(cx - 4)},{_num(ylo)} H{_num(cx + 4)}" '
                    f'stroke="black" fill="none"/>'
                )
    c.add("</g>")
    c.legend(series)
    return c.render()


def ecdf_chart(curves: dict[str, Sequence[tuple[float, float]]], *, title: str = "", xlabel: str = "") -> str:
    """Overlaid empirical CDF step curves."""
    c = _Canvas(title, xlabel, "cumulative fraction")
    xmax = nice_max(max((pts[-1][0] for pts in curves.values() if pts), default=1.0))
    sx = (c.x1 - c.x0) / xmax
    sy = c.y0 - c.y1
    c.frame(
        [(c.x0 + v * sx, f"{v:g}") for v in _ticks(0, xmax)],
        [(c.y0 - f * sy, f"{f:.1f}") for f in _ticks(0, 1)],
    )
    c.add(f'<g id="ecdf" data-xscale="{_num(sx)}" data-yscale="{_num(sy)}">')
    for i, (name, pts) in enumerate(curves.items()):
        # each step rises at its value, then runs to the next value
        d = [f"M{_num(c.x0 + pts[0][0] * sx)},{c.y0}"]
        prev_f = 0.0
        for x, f in pts:
            px = c.x0 + x * sx
            d.append(f"H{_num(px)} V{_num(c.y0 - f * sy)}")
            prev_f = f
        d.append(f"H{c.x1}")
        c.add(
            f'<path class="ecdf" data-series="{escape(name)}" data-final="{_num(prev_f)}" '
            f'd="{" ".join(d)}" stroke="{PALETTE[i % len(PALETTE)]}" stroke-width="2" fill="none"/>'
        )
    c.add("</g>")
    c.legend(list(curves))
    return c.render()


def scatter_fit_chart(
    points: dict[str, Sequence[tuple[float, float]]],
    fits: dict[str, object],
    *,
    title: str = "",
    xlabel: str = "",
    ylabel: str = "",
) -> str:
    """Scatter per series, with fitted line and shaded 95% band when a fit is given."""
    c = _Canvas(title, xlabel, ylabel)
    xs = [x for pts in points.values() for x, _ in pts]
    ys = [y for pts in points.values() for _, y in pts]
    xmin, xmax = min(xs), max(xs)
    pad = (xmax - xmin) * 0.05 or 1.0
    xlo, xhi = max(0.0, xmin - pad), xmax + pad
    yhi = nice_max(max(ys))
    sx = (c.x1 - c.x0) / (xhi - xlo)
    sy = (c.y0 - c.y1) / yhi

    def px(x):
        return c.x0 + (x - xlo) * sx

    def py(y):
        return c.y0 - max(0.0, min(yhi, y)) * sy

    c.frame(
        [(px(v), f"{v:.0f}") for v in _ticks(xlo, xhi)],
        [(py(v), f"{v:g}") for v in _ticks(0, yhi)],
    )
    c.add(f'<g id="scatter" data-xscale="{_num(sx)}" data-yscale="{_num(sy)}" data-xmin="{_num(xlo)}">')
    for i, (name, pts) in enumerate(points.items()):
        color = PALETTE[i % len(PALETTE)]
        fit = fits.get(name)
        if fit is not None:
            grid = [xmin + (xmax - xmin) * j / 40 for j in range(41)]
            lo = [fit.mean_ci95(x)[0] for x in grid]
            hi = [fit.mean_ci95(x)[1] for x in grid]
            poly = [f"{_num(px(x))},{_num(py(y))}" for x, y in zip(grid, hi)]
            poly += [f"{_num(px(x))},{_num(py(y))}" for x, y in zip(reversed(grid), reversed(lo))]
            c.add(f'<polygon class="band" data-series="{escape(name)}" points="{" ".join(poly)}" fill="{color}" fill-opacity="0.2" stroke="none"/>')
            c.add(
                f'<line class="fit" data-series="{escape(name)}" data-slope="{_num(fit.slope)}" '
                f'data-intercept="{_num(fit.intercept)}" x1="{_num(px(xmin))}" y1="{_num(py(fit.predict(xmin)))}" '
                f'x2="{_num(px(xmax))}" y2="{_num(py(fit.predict(xmax)))}" stroke="{color}" stroke-width="2"/>'
            )
        for x, y in pts:
            c.add(f'<circle class="pt" data-series="{escape(name)}" cx="{_num(px(x))}" cy="{_num(py(y))}" r="2" fill="{color}" fill-opacity="0.5"/>')
    c.add("</g>")
    c.legend(list(points))
    return c.render()
