"""Self-contained SVG plot of a directional entropy profile."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

import numpy as np

from .directional import PiecewiseProfile

WIDTH, HEIGHT = 720, 420
MARGIN = dict(left=70, right=20, top=40, bottom=50)
PI_TICKS = [(0.0, "0"), (math.pi / 4, "π/4"), (math.pi / 2, "π/2"), (3 * math.pi / 4, "3π/4"), (math.pi, "π")]


def _nice_ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if hi - lo < 1e-12:
        lo, hi = lo - 1.0, hi + 1.0
    raw = (hi - lo) / count
    mag = 10 ** math.floor(math.log10(raw))
    step = min((s * mag for s in (1, 2, 2.5, 5, 10) if s * mag >= raw), default=raw)
    start = math.ceil(lo / step) * step
    return [start + i * step for i in range(int((hi - start) / step + 1e-9) + 1)]


def render_svg(profile: PiecewiseProfile, samples: int = 360, title: str = "") -> str:
    grid = np.linspace(0.0, math.pi, samples)
    curves = []
    for piece in profile:
        t0, t1 = piece.start.radians, piece.end.radians
        ts = [t0, *(float(t) for t in grid if t0 < t < t1), t1]
        curves.append([(t, piece.value(t)) for t in ts])
    values = [v for c in curves for _, v in c]
    ticks = _nice_ticks(min(values + [0.0]), max(values + [0.0]))
    y_lo, y_hi = min(ticks[0], min(values)), max(ticks[-1], max(values))
    if y_hi - y_lo < 1e-12:
        y_lo, y_hi = y_lo - 1.0, y_hi + 1.0

    pw = WIDTH - MARGIN["left"] - MARGIN["right"]
    ph = HEIGHT - MARGIN["top"] - MARGIN["bottom"]

    def sx(t):
        return MARGIN["left"] + pw * t / math.pi

    def sy(v):
        return MARGIN["top"] + ph * (y_hi - v) / (y_hi - y_lo)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="{WIDTH / 2:.1f}" y="22" text-anchor="middle" font-size="14">{escape(title)}</text>')
    x0, x1 = sx(0.0), sx(math.pi)
    out.append('<g class="axes" stroke="black" stroke-width="1">')
    out.append(f'<line x1="{x0:.2f}" y1="{sy(y_lo):.2f}" x2="{x1:.2f}" y2="{sy(y_lo):.2f}"/>')
    out.append(f'<line x1="{x0:.2f}" y1="{sy(y_lo):.2f}" x2="{x0:.2f}" y2="{sy(y_hi):.2f}"/>')
    if y_lo < 0 < y_hi:
        out.append(f'<line x1="{x0:.2f}" y1="{sy(0):.2f}" x2="{x1:.2f}" y2="{sy(0):.2f}" stroke="#999"/>')
    out.append("</g>")
    for t, label in PI_TICKS:
        out.append(
            f'<text class="xtick" x="{sx(t):.2f}" y="{sy(y_lo) + 18:.2f}" text-anchor="middle">{label}</text>'
        )
    for v in ticks:
        out.append(
            f'<text class="ytick" x="{x0 - 6:.2f}" y="{sy(v) + 4:.2f}" text-anchor="end">{v:g}</text>'
        )
    out.append(
        f'<text x="{(x0 + x1) / 2:.2f}" y="{HEIGHT - 10}" text-anchor="middle">θ (radians)</text>'
    )
    out.append(
        f'<text x="16" y="{MARGIN["top"] + ph / 2:.2f}" text-anchor="middle" '
        f'transform="rotate(-90 16 {MARGIN["top"] + ph / 2:.2f})">h(θ) (nats)</text>'
    )
    for bp in profile.breakpoints:
        x = sx(bp.radians)
        out.append(
            f'<line class="breakpoint" data-angle="{escape(str(bp))}" x1="{x:.2f}" y1="{sy(y_hi):.2f}" '
            f'x2="{x:.2f}" y2="{sy(y_lo):.2f}" stroke="#c33" stroke-dasharray="4 3"/>'
        )
    for curve in curves:
        pts = " ".join(f"{sx(t):.2f},{sy(v):.2f}" for t, v in curve)
        out.append(f'<polyline class="piece" fill="none" stroke="#1f5fbf" stroke-width="2" points="{pts}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
