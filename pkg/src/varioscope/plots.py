"""Deterministic SVG emission for the CLI and the plot bundles.

Hand-rolled rather than a plotting library so identical inputs yield
byte-identical files, which the tests diff directly.
"""

from __future__ import annotations

import numpy as np

from .dataio import MissingnessReport
from .distances import DistanceSummary
from .empvar import EmpiricalVariogram
from .expfit import ExpModelFit, eval_exponential

WIDTH, HEIGHT = 640, 480
MARGIN = 60


def _fmt(v: float) -> str:
    return f"{v:.4f}".rstrip("0").rstrip(".")


class _Svg:
    def __init__(self, title: str):
        self.parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" '
            f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
            f'<text x="{WIDTH / 2}" y="24" text-anchor="middle" '
            f'font-size="16">{title}</text>',
        ]

    def add(self, element: str):
        self.parts.append(element)

    def axes(self):
        self.add(
            f'<rect x="{MARGIN}" y="{MARGIN}" width="{WIDTH - 2 * MARGIN}" '
            f'height="{HEIGHT - 2 * MARGIN}" fill="none" stroke="black"/>'
        )

    def render(self) -> str:
        return "\n".join(self.parts + ["</svg>"]) + "\n"


def _scaler(lo: float, hi: float, out_lo: float, out_hi: float):
    span = hi - lo if hi > lo else 1.0

    def f(v):
        return out_lo + (v - lo) / span * (out_hi - out_lo)

    return f


def coords_plot_svg(report: MissingnessReport, title: str = "Coordinates") -> str:
    """Observed outcomes as filled circles, missing ones as crosses."""
    all_pts = report.observed_points + report.missing_points
    xs = [p[0] for p in all_pts] or [0.0]
    ys = [p[1] for p in all_pts] or [0.0]
    sx = _scaler(min(xs), max(xs), MARGIN, WIDTH - MARGIN)
    sy = _scaler(min(ys), max(ys), HEIGHT - MARGIN, MARGIN)
    svg = _Svg(title)
    svg.axes()
    for x, y in report.observed_points:
        svg.add(
            f'<circle cx="{_fmt(sx(x))}" cy="{_fmt(sy(y))}" r="2.5" fill="black"/>'
        )
    for x, y in report.missing_points:
        cx, cy = sx(x), sy(y)
        for dx1, dy1, dx2, dy2 in ((-3, -3, 3, 3), (-3, 3, 3, -3)):
            svg.add(
                f'<line x1="{_fmt(cx + dx1)}" y1="{_fmt(cy + dy1)}" '
                f'x2="{_fmt(cx + dx2)}" y2="{_fmt(cy + dy2)}" '
                f'stroke="red" stroke-width="1.5"/>'
            )
    return svg.render()


def distance_histogram_svg(
    summary: DistanceSummary, title: str = "Pairwise distances"
) -> str:
    hist = summary.histogram
    max_count = max((c for _, _, c in hist), default=1) or 1
    sx = _scaler(hist[0][0], hist[-1][1], MARGIN, WIDTH - MARGIN)
    sy = _scaler(0, max_count, HEIGHT - MARGIN, MARGIN)
    svg = _Svg(title)
    svg.axes()
    for lo, hi, count in hist:
        x0, x1 = sx(lo), sx(hi)
        y0, y1 = sy(0), sy(count)
        svg.add(
            f'<rect x="{_fmt(x0)}" y="{_fmt(y1)}" width="{_fmt(x1 - x0)}" '
            f'height="{_fmt(y0 - y1)}" fill="steelblue" stroke="black" '
            f'stroke-width="0.5"/>'
        )
    return svg.render()


def variogram_plot_svg(
    ev: EmpiricalVariogram,
    fit: ExpModelFit | None = None,
    title: str = "Semi-variogram",
    n_curve: int = 200,
) -> str:
    """Empirical points as circles with optional fitted-curve overlay."""
    dists = [b.mean_dist for b in ev.bins]
    gammas = [b.gamma_hat for b in ev.bins]
    gmax = max(gammas) if gammas else 1.0
    if fit is not None:
        gmax = max(gmax, fit.params.total_variance)
    sx = _scaler(0.0, ev.max_dist, MARGIN, WIDTH - MARGIN)
    sy = _scaler(0.0, gmax * 1.05, HEIGHT - MARGIN, MARGIN)
    svg = _Svg(title)
    svg.axes()
    if fit is not None:
        hs = np.linspace(ev.max_dist / n_curve, ev.max_dist, n_curve)
        gs = eval_exponential(fit.params, hs)
        pts = " ".join(f"{_fmt(sx(h))},{_fmt(sy(g))}" for h, g in zip(hs, gs))
        svg.add(f'<polyline points="{pts}" fill="none" stroke="blue"/>')
    for h, g in zip(dists, gammas):
        svg.add(
            f'<circle cx="{_fmt(sx(h))}" cy="{_fmt(sy(g))}" r="4" '
            f'fill="none" stroke="black"/>'
        )
    return svg.render()
