"""Plain SVG 1.1 drawings of embedded graphs.

Output depends only on the graph, so the same input gives the same bytes.
"""

from __future__ import annotations

from .graph import EmbeddedPlanarGraph, color, edge_key

SCALE = 20
MARGIN = 15
WHITE_FILL = "#ffffff"
BLACK_FILL = "#222222"
EDGE = "#555555"
MATCHED = "#d62728"


def render_svg(g: EmbeddedPlanarGraph, matching=None, scale: int = SCALE) -> str:
    """Vertices as dots (white class hollow, black class filled), edges as
    segments.  Edges of weight other than 1 are dashed; edges in ``matching``
    are drawn thick and red."""
    matched = {edge_key(*e) for e in (matching or ())}
    verts = g.sorted_vertices()
    if verts:
        xs = [x for x, _ in verts]
        ys = [y for _, y in verts]
        x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    else:
        x0 = x1 = y0 = y1 = 0
    width = (x1 - x0) * scale + 2 * MARGIN
    height = (y1 - y0) * scale + 2 * MARGIN

    def px(p):
        # flip y so the picture is oriented like the coordinates
        return MARGIN + (p[0] - x0) * scale, MARGIN + (y1 - p[1]) * scale

    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        '<!DOCTYPE svg PUBLIC "-//W3C//DTD SVG 1.1//EN" "http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd">',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<g stroke="{EDGE}" stroke-width="2">',
    ]
    for u, v in sorted(g.weights):
        (ax, ay), (bx, by) = px(u), px(v)
        attrs = ""
        if g.weight(u, v) != 1:
            attrs += ' stroke-dasharray="4,3"'
        if (u, v) in matched:
            attrs += f' stroke="{MATCHED}" stroke-width="5"'
        out.append(f'<line x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}"{attrs}/>')
    out.append("</g>")
    out.append('<g stroke="#000000" stroke-width="1.5">')
    r = max(2, scale // 5)
    for p in verts:
        cx, cy = px(p)
        fill = WHITE_FILL if color(p) == 0 else BLACK_FILL
        out.append(f'<circle cx="{cx}" cy="{cy}" r="{r}" fill="{fill}"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
