"""Minimal SVG rendering for 2-D region and bound polygons.

The one place decimal approximation is allowed: plot coordinates carry 12
significant digits.  All data exports stay exact elsewhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

WIDTH = 460
HEIGHT = 460
MARGIN = 50

PALETTE = ["#4472c4", "#9ea7ad", "#58c1d8", "#c44444", "#7c4fc4"]


def _approx(x: Fraction) -> str:
    return f"{float(x):.12g}"


def _ccw(points):
    cx = sum(p[0] for p in points) / len(points)
    cy = sum(p[1] for p in points) / len(points)
    import math
    return sorted(points, key=lambda p: math.atan2(float(p[1] - cy), float(p[0] - cx)))


def render_polygons(layers: Sequence[tuple[str, Sequence[tuple[Fraction, Fraction]]]],
                    x_label: str = "lambda_1", y_label: str = "lambda_2") -> str:
    """Layered filled polygons with axes; layers listed outermost first."""
    span = Fraction(1)
    for _, points in layers:
        for x, y in points:
            span = max(span, x, y)
    scale = Fraction(WIDTH - 2 * MARGIN) / span

    def sx(x):
        return _approx(MARGIN + x * scale)

    def sy(y):
        return _approx(HEIGHT - MARGIN - y * scale)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<line x1="{MARGIN}" y1="{HEIGHT - MARGIN}" x2="{WIDTH - 10}" '
        f'y2="{HEIGHT - MARGIN}" stroke="black"/>',
        f'<line x1="{MARGIN}" y1="{HEIGHT - MARGIN}" x2="{MARGIN}" y2="10" '
        f'stroke="black"/>',
        f'<text x="{WIDTH - 60}" y="{HEIGHT - MARGIN + 30}" font-size="14">'
        f'{x_label}</text>',
        f'<text x="{MARGIN - 38}" y="24" font-size="14">{y_label}</text>',
    ]
    for idx, (name, points) in enumerate(layers):
        if len(points) < 3:
            continue
        ring = _ccw(list(points))
        coords = " ".join(f"{sx(x)},{sy(y)}" for x, y in ring)
        color = PALETTE[idx % len(PALETTE)]
        parts.append(f'<polygon points="{coords}" fill="{color}" fill-opacity="0.45" '
                     f'stroke="{color}" stroke-width="1.5"><title>{name}</title>'
                     f'</polygon>')
    # Tick labels at the layer maxima on each axis.
    for idx, (name, points) in enumerate(layers):
        xs = max((p[0] for p in points), default=Fraction(0))
        ys = max((p[1] for p in points), default=Fraction(0))
        parts.append(f'<text x="{sx(xs)}" y="{HEIGHT - MARGIN + 16}" '
                     f'font-size="11">{_approx(xs)}</text>')
        parts.append(f'<text x="{MARGIN - 40}" y="{sy(ys)}" font-size="11">'
                     f'{_approx(ys)}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
