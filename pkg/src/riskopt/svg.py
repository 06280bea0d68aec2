"""Plain-markup SVG plots of ceded loss functions.

Output depends only on the inputs: fixed canvas, fixed palette, numbers
printed with two decimals.
"""

from __future__ import annotations

from typing import Sequence

from .contracts import CededLossFunction

WIDTH, HEIGHT = 480, 360
LEFT, RIGHT, TOP, BOTTOM = 56, 20, 20, 44
PALETTE = ("#1f4e9c", "#b03a2e", "#1e8449", "#7d3c98", "#b9770e")
N_TICKS = 5


def _fmt(v: float) -> str:
    s = f"{v:.2f}"
    return "0.00" if s == "-0.00" else s


def _label(v: float) -> str:
    return f"{round(v, 6):g}"


def render_contracts(contracts: Sequence[CededLossFunction], x_max: float, d: float | None = None,
                     labels: Sequence[str] | None = None) -> str:
    """Solid polylines for the contracts, a dashed ``(x - d)_+`` when ``d`` is given."""
    if x_max <= 0:
        raise ValueError("x_max must be positive")
    labels = list(labels) if labels is not None else [f"f{i + 1}" for i in range(len(contracts))]
    series = [f.breakpoints(x_max) for f in contracts]
    overlay = None
    if d is not None:
        overlay = [(0.0, 0.0)] + ([(d, 0.0)] if 0 < d < x_max else []) + [(x_max, max(x_max - d, 0.0))]
    y_top = max([y for pts in series for _, y in pts] + ([y for _, y in overlay] if overlay else []) + [0.0])
    if y_top <= 0:
        y_top = 1.0
    pw, ph = WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM

    def sx(x):
        return LEFT + pw * x / x_max

    def sy(y):
        return TOP + ph * (1.0 - y / y_top)

    def poly(pts):
        return " ".join(f"{_fmt(sx(x))},{_fmt(sy(y))}" for x, y in pts)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" '
        f'width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="11">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<line x1="{LEFT}" y1="{_fmt(sy(0))}" x2="{LEFT + pw}" y2="{_fmt(sy(0))}" stroke="black"/>',
        f'<line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{_fmt(sy(0))}" stroke="black"/>',
    ]
    for k in range(N_TICKS + 1):
        xv, yv = x_max * k / N_TICKS, y_top * k / N_TICKS
        out.append(f'<line x1="{_fmt(sx(xv))}" y1="{_fmt(sy(0))}" x2="{_fmt(sx(xv))}" '
                   f'y2="{_fmt(sy(0) + 4)}" stroke="black"/>')
        out.append(f'<text x="{_fmt(sx(xv))}" y="{_fmt(sy(0) + 16)}" text-anchor="middle">{_label(xv)}</text>')
        out.append(f'<line x1="{LEFT - 4}" y1="{_fmt(sy(yv))}" x2="{LEFT}" y2="{_fmt(sy(yv))}" stroke="black"/>')
        out.append(f'<text x="{LEFT - 7}" y="{_fmt(sy(yv) + 4)}" text-anchor="end">{_label(yv)}</text>')
    out.append(f'<text x="{_fmt(LEFT + pw / 2)}" y="{HEIGHT - 8}" text-anchor="middle">x</text>')
    out.append(f'<text x="14" y="{_fmt(TOP + ph / 2)}" text-anchor="middle" '
               f'transform="rotate(-90 14 {_fmt(TOP + ph / 2)})">f(x)</text>')
    if overlay:
        out.append(f'<polyline points="{poly(overlay)}" fill="none" stroke="gray" '
                   f'stroke-width="1.5" stroke-dasharray="6 4"/>')
    for i, (pts, name) in enumerate(zip(series, labels)):
        color = PALETTE[i % len(PALETTE)]
        out.append(f'<polyline points="{poly(pts)}" fill="none" stroke="{color}" stroke-width="2"/>')
        ly = TOP + 12 + 14 * i
        out.append(f'<line x1="{LEFT + 10}" y1="{ly - 4}" x2="{LEFT + 30}" y2="{ly - 4}" '
                   f'stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{LEFT + 36}" y="{ly}">{_escape(name)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
