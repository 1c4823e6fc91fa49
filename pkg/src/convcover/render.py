"""SVG drawings of instances, solutions and uncovered regions."""

from __future__ import annotations

import colorsys
from typing import Sequence

from .geom import ConvexPolygon, PolygonWithHoles


def _fmt(v) -> str:
    return f"{float(v):.6g}"


def _subpath(ring) -> str:
    pts = " L ".join(f"{_fmt(p[0])} {_fmt(p[1])}" for p in ring)
    return f"M {pts} Z"


def palette(i: int) -> str:
    h = (i * 0.618033988749895) % 1.0
    r, g, b = colorsys.hsv_to_rgb(h, 0.55, 0.9)
    return f"#{int(r * 255):02x}{int(g * 255):02x}{int(b * 255):02x}"


def render_svg(P: PolygonWithHoles, polygons: Sequence[ConvexPolygon] = (),
               uncovered: Sequence[PolygonWithHoles] = (), stroke_width: float = 1.0,
               fill_opacity: float = 0.35, size: int = 800) -> str:
    """One path per ring of P, one per polygon, one per uncovered component (hatched)."""
    x0, y0, x1, y1 = (float(v) for v in P.bbox)
    w, h = max(x1 - x0, 1e-9), max(y1 - y0, 1e-9)
    pad = 0.03 * max(w, h)
    scale = size / (max(w, h) + 2 * pad)
    sw = stroke_width / scale
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt((w + 2 * pad) * scale)}" '
        f'height="{_fmt((h + 2 * pad) * scale)}" '
        f'viewBox="{_fmt(x0 - pad)} {_fmt(-(y1 + pad))} {_fmt(w + 2 * pad)} {_fmt(h + 2 * pad)}">',
        "<defs>",
        f'<pattern id="hatch" patternUnits="userSpaceOnUse" width="{_fmt(8 / scale)}" height="{_fmt(8 / scale)}" '
        'patternTransform="rotate(45)">',
        f'<rect width="{_fmt(4 / scale)}" height="{_fmt(8 / scale)}" fill="#d62728"/>',
        "</pattern>",
        "</defs>",
        '<g transform="scale(1,-1)">',
    ]
    out.append(f'<path class="ring outer" d="{_subpath(P.outer)}" fill="#f4f4f4" stroke="#000" '
               f'stroke-width="{_fmt(sw)}"/>')
    for hole in P.holes:
        out.append(f'<path class="ring hole" d="{_subpath(hole)}" fill="#ffffff" stroke="#000" '
                   f'stroke-width="{_fmt(sw)}"/>')
    for i, C in enumerate(polygons):
        out.append(f'<path class="poly" d="{_subpath(C.vertices)}" fill="{palette(i)}" '
                   f'fill-opacity="{fill_opacity}" stroke="{palette(i)}" stroke-width="{_fmt(sw)}"/>')
    for U in uncovered:
        d = " ".join(_subpath(r) for r in U.rings)
        out.append(f'<path class="uncovered" d="{d}" fill="url(#hatch)" fill-rule="evenodd" stroke="#d62728" '
                   f'stroke-width="{_fmt(sw)}"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
