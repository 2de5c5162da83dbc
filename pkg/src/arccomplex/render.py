"""SVG drawings of coloured polygons with a set of arcs."""

from __future__ import annotations

import math

from .polygon import Arc, Colour, PolygonSpec, span

SIZE = 400
RADIUS = 160
PUNCTURE_RADIUS = 5
FILL = {Colour.RED: "#d62728", Colour.BLUE: "#1f77b4"}


def _point(theta: float, r: float) -> tuple[float, float]:
    return SIZE / 2 + r * math.cos(theta), SIZE / 2 - r * math.sin(theta)


def _angle(spec: PolygonSpec, v: float) -> float:
    return math.pi / 2 + 2 * math.pi * v / spec.m


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _arc_path(spec: PolygonSpec, a: Arc, samples: int = 48) -> str:
    if not spec.punctured:
        (x0, y0), (x1, y1) = _point(_angle(spec, a.i), RADIUS), _point(_angle(spec, a.j), RADIUS)
        return f"M {_fmt(x0)} {_fmt(y0)} L {_fmt(x1)} {_fmt(y1)}"
    t = span(spec, a)
    # longer arcs dip closer to the puncture so nested arcs stay nested
    depth = 0.15 + 0.75 * t / spec.m
    points = []
    for k in range(samples + 1):
        s = k / samples
        r = RADIUS * (1 - depth * math.sin(math.pi * s) ** 0.5)
        points.append(_point(_angle(spec, a.i + s * t), r))
    head, *rest = points
    return f"M {_fmt(head[0])} {_fmt(head[1])} " + " ".join(f"L {_fmt(x)} {_fmt(y)}" for x, y in rest)


def render_svg(spec: PolygonSpec, arcs) -> str:
    arcs = sorted(arcs)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        f"  <title>{spec}</title>",
        '  <g fill="none" stroke="#333" stroke-width="2">',
    ]
    for v in range(spec.m):
        x0, y0 = _point(_angle(spec, v), RADIUS)
        x1, y1 = _point(_angle(spec, v + 1), RADIUS)
        if spec.punctured:
            d = f"M {_fmt(x0)} {_fmt(y0)} A {RADIUS} {RADIUS} 0 0 0 {_fmt(x1)} {_fmt(y1)}"
        else:
            d = f"M {_fmt(x0)} {_fmt(y0)} L {_fmt(x1)} {_fmt(y1)}"
        out.append(f'    <path class="edge" d="{d}"/>')
    out.append("  </g>")
    out.append('  <g fill="none" stroke="#555" stroke-width="1.5">')
    for a in arcs:
        out.append(f'    <path class="arc" data-arc="{a}" d="{_arc_path(spec, a)}"/>')
    out.append("  </g>")
    if spec.punctured:
        out.append(f'  <circle class="puncture" cx="{SIZE // 2}" cy="{SIZE // 2}" r="{PUNCTURE_RADIUS}" fill="#000"/>')
    for v in range(spec.m):
        x, y = _point(_angle(spec, v), RADIUS)
        lx, ly = _point(_angle(spec, v), RADIUS + 18)
        out.append(f'  <circle class="vertex" cx="{_fmt(x)}" cy="{_fmt(y)}" r="7" fill="{FILL[spec.colour(v)]}"/>')
        out.append(
            f'  <text x="{_fmt(lx)}" y="{_fmt(ly)}" font-size="12" text-anchor="middle" dominant-baseline="middle">{v}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
