"""SVG rendering of point sets and solutions."""

from __future__ import annotations

import colorsys
import math
from typing import Optional, Sequence

from .geometry import PointSet, convex_hull

SIZE = 1000
MARGIN = 40
UNUSED = "#9a9a9a"
PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
    "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#393b79",
)


def set_color(i: int) -> str:
    if i < len(PALETTE):
        return PALETTE[i]
    # golden-ratio hue walk for anything beyond the palette
    h = (i * 0.618033988749895) % 1.0
    r, g, b = colorsys.hls_to_rgb(h, 0.45, 0.7)
    return "#%02x%02x%02x" % (round(r * 255), round(g * 255), round(b * 255))


def _compress(v: float) -> float:
    return math.copysign(math.log10(1.0 + abs(v)), v)


def project(s: PointSet, log_y: bool = False) -> list[tuple[float, float]]:
    """Viewport coordinates in [MARGIN, SIZE - MARGIN], y growing upwards on screen."""
    if len(s) == 0:
        return []
    xs = [float(p.x) for p in s]
    ys = [_compress(float(p.y)) if log_y else float(p.y) for p in s]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    span = SIZE - 2 * MARGIN

    def scale(v, lo, hi):
        return span / 2 if hi == lo else (v - lo) / (hi - lo) * span

    return [(MARGIN + scale(x, x0, x1), SIZE - MARGIN - scale(y, y0, y1)) for x, y in zip(xs, ys)]


def _f(v: float) -> str:
    return f"{v:.3f}"


def render(s: PointSet, sets: Optional[Sequence[Sequence[int]]] = None, log_y: bool = False,
           radius: float = 4.0) -> str:
    pos = project(s, log_y)
    owner = {}
    for si, members in enumerate(sets or ()):
        for i in members:
            owner[i] = si
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>',
    ]
    for si, members in enumerate(sets or ()):
        hull = convex_hull(s, members) if members else []
        if len(hull) < 2:
            continue
        pts = " ".join(f"{_f(pos[i][0])},{_f(pos[i][1])}" for i in hull)
        out.append(f'<polygon class="hull" data-set="{si}" points="{pts}" fill="none" '
                   f'stroke="{set_color(si)}" stroke-width="2"/>')
    for i, (x, y) in enumerate(pos):
        color = set_color(owner[i]) if i in owner else UNUSED
        out.append(f'<circle class="point" data-index="{i}" cx="{_f(x)}" cy="{_f(y)}" '
                   f'r="{radius}" fill="{color}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
