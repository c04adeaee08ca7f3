"""SVG cross-sections of rank-2 and rank-3 fans.

Rank 3 fans are cut by the affine plane <a, x> = 1; only cones whose rays
all meet the plane on the positive side are drawn.  Positions are exact
rationals until the final conversion to viewport units, and every number
is printed with two decimals, so equal inputs give equal bytes.
"""
from __future__ import annotations

from fractions import Fraction
from math import sqrt
from typing import Optional, Sequence
from xml.sax.saxutils import escape

from .errors import DegeneratePlane, UnsupportedRank
from .exactlin import dot, integer_kernel_basis
from .fan import Fan

SIZE = 800
MARGIN = 60


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def plane_coordinates(fan: Fan, plane: Optional[Sequence[int]]) -> dict[int, tuple[float, float]]:
    """2D positions of the rays that are drawn, keyed by ray index."""
    d = fan.ambient_dim
    if d == 2:
        out = {}
        for i, u in enumerate(fan.rays):
            norm = sqrt(u[0] ** 2 + u[1] ** 2)
            out[i] = (u[0] / norm, u[1] / norm)
        return out
    if d != 3:
        raise UnsupportedRank(f"cannot render a rank-{d} fan")
    if plane is None or len(plane) != 3 or not any(plane):
        raise DegeneratePlane("rank-3 rendering needs a nonzero plane normal a,b,c")
    a = tuple(int(x) for x in plane)
    if any(dot(a, u) == 0 for u in fan.rays):
        bad = [i for i, u in enumerate(fan.rays) if dot(a, u) == 0]
        raise DegeneratePlane(f"rays {bad} are parallel to the plane")
    b1 = integer_kernel_basis([a]).column(0)
    b2 = _cross(a, b1)
    n1, n2 = sqrt(dot(b1, b1)), sqrt(dot(b2, b2))
    out = {}
    for i, u in enumerate(fan.rays):
        h = dot(a, u)
        if h <= 0:
            continue
        p = [Fraction(x, h) for x in u]
        out[i] = (float(dot(b1, p)) / n1, float(dot(b2, p)) / n2)
    return out


def render_svg(fan: Fan, labels: Sequence[str], plane: Optional[Sequence[int]] = None, title: str = "") -> str:
    pts = plane_coordinates(fan, plane)
    origin = fan.ambient_dim == 2
    xs = [p[0] for p in pts.values()] + ([0.0] if origin else [])
    ys = [p[1] for p in pts.values()] + ([0.0] if origin else [])
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    span = max(x1 - x0, y1 - y0) or 1.0
    scale = (SIZE - 2 * MARGIN) / span

    def place(p):
        return (MARGIN + (p[0] - x0) * scale, SIZE - MARGIN - (p[1] - y0) * scale)

    screen = {i: place(p) for i, p in pts.items()}
    o = place((0.0, 0.0)) if origin else None
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="{MARGIN}" y="30" font-family="sans-serif" font-size="18">{escape(title)}</text>')
    out.append('<g stroke="black" stroke-width="2" fill="none">')
    if origin:
        for K, c in fan.all_cones.items():
            if c.dim == 2 and len(K) == 2:
                i, j = sorted(K)
                out.append(
                    f'<polygon points="{o[0]:.2f},{o[1]:.2f} {screen[i][0]:.2f},{screen[i][1]:.2f} '
                    f'{screen[j][0]:.2f},{screen[j][1]:.2f}" fill="#dde8f4" stroke="none"/>'
                )
        for i in sorted(screen):
            out.append(f'<line x1="{o[0]:.2f}" y1="{o[1]:.2f}" x2="{screen[i][0]:.2f}" y2="{screen[i][1]:.2f}"/>')
    else:
        for K, c in fan.all_cones.items():
            if c.dim == 2 and len(K) == 2 and K <= screen.keys():
                i, j = sorted(K)
                out.append(
                    f'<line x1="{screen[i][0]:.2f}" y1="{screen[i][1]:.2f}" '
                    f'x2="{screen[j][0]:.2f}" y2="{screen[j][1]:.2f}"/>'
                )
    out.append("</g>")
    out.append('<g font-family="sans-serif" font-size="16">')
    for i in sorted(screen):
        x, y = screen[i]
        out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="4" fill="black"/>')
        out.append(f'<text x="{x + 8:.2f}" y="{y - 8:.2f}">{escape(labels[i])}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def drawn_segments(fan: Fan, plane: Optional[Sequence[int]] = None) -> set[frozenset]:
    """The ray pairs drawn as segments (rank 3) or wedges (rank 2)."""
    pts = plane_coordinates(fan, plane)
    return {K for K, c in fan.all_cones.items() if c.dim == 2 and len(K) == 2 and K <= pts.keys()}
