"""Minimal deterministic SVG line and scatter plots for experiment output."""
from __future__ import annotations

import math
from xml.sax.saxutils import escape

from .errors import InvalidInputError

WIDTH, HEIGHT = 640, 400
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 60, 20, 30, 50
PALETTE = ["#1f4e9c", "#c0392b", "#27864a", "#8e44ad", "#d68910"]


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _range(values):
    finite = [v for v in values if math.isfinite(v)]
    if not finite:
        raise InvalidInputError("no finite values to plot")
    lo, hi = min(finite), max(finite)
    if lo == hi:
        lo, hi = lo - 0.5, hi + 0.5
    pad = 0.05 * (hi - lo)
    return lo - pad, hi + pad


def emit_svg(x, series: dict, kind: str = "line", title: str = "", xlabel: str = "",
             ylabel: str = "") -> str:
    """Render ``series`` (name -> y values aligned with ``x``) as an SVG string.

    ``kind="line"`` draws one polyline per series, ``kind="scatter"`` one
    circle per point. Non-finite points are skipped. Output is a pure
    function of the input.
    """
    x = [float(v) for v in x]
    if not x or not series or any(len(ys) != len(x) for ys in series.values()):
        raise InvalidInputError("empty or misaligned plot data")
    if kind not in ("line", "scatter"):
        raise InvalidInputError(f"unknown plot kind {kind!r}")
    x0, x1 = _range(x)
    y0, y1 = _range([float(v) for ys in series.values() for v in ys])
    pw = WIDTH - MARGIN_L - MARGIN_R
    ph = HEIGHT - MARGIN_T - MARGIN_B

    def sx(v):
        return MARGIN_L + (v - x0) / (x1 - x0) * pw

    def sy(v):
        return MARGIN_T + ph - (v - y0) / (y1 - y0) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<rect x="{MARGIN_L}" y="{MARGIN_T}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for i in range(5):
        xv = x0 + (x1 - x0) * i / 4
        yv = y0 + (y1 - y0) * i / 4
        out.append(f'<text x="{_fmt(sx(xv))}" y="{HEIGHT - MARGIN_B + 16}" text-anchor="middle">{xv:.4g}</text>')
        out.append(f'<text x="{MARGIN_L - 6}" y="{_fmt(sy(yv) + 4)}" text-anchor="end">{yv:.4g}</text>')
    if title:
        out.append(f'<text x="{WIDTH / 2:.2f}" y="18" text-anchor="middle">{escape(title)}</text>')
    if xlabel:
        out.append(f'<text x="{MARGIN_L + pw / 2:.2f}" y="{HEIGHT - 10}" text-anchor="middle">{escape(xlabel)}</text>')
    if ylabel:
        out.append(f'<text x="14" y="{MARGIN_T + ph / 2:.2f}" text-anchor="middle" '
                   f'transform="rotate(-90 14 {MARGIN_T + ph / 2:.2f})">{escape(ylabel)}</text>')

    for idx, (name, ys) in enumerate(series.items()):
        color = PALETTE[idx % len(PALETTE)]
        pts = [(sx(a), sy(float(b))) for a, b in zip(x, ys) if math.isfinite(float(b))]
        if kind == "line":
            coords = " ".join(f"{_fmt(px)},{_fmt(py)}" for px, py in pts)
            out.append(f'<polyline class="series" data-name="{escape(name)}" fill="none" '
                       f'stroke="{color}" stroke-width="1.5" points="{coords}"/>')
        else:
            out.append(f'<g class="series" data-name="{escape(name)}" fill="{color}">')
            out.extend(f'<circle cx="{_fmt(px)}" cy="{_fmt(py)}" r="2"/>' for px, py in pts)
            out.append("</g>")
        ly = MARGIN_T + 14 + 16 * idx
        lx = WIDTH - MARGIN_R - 150
        out.append(f'<g class="legend"><rect x="{lx}" y="{ly - 9}" width="10" height="10" fill="{color}"/>'
                   f'<text x="{lx + 16}" y="{ly}">{escape(name)}</text></g>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
