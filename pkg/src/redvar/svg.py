"""Minimal SVG pictures of 1-D and 2-D subdivisions (display only)."""
from __future__ import annotations

import math
from typing import Any

from .polytope import LatticePolytope

SIZE = 400
PAD = 20


def _cells(result: Any) -> list[LatticePolytope]:
    if hasattr(result, "cells") and isinstance(result.cells, list):
        return [c for c in result.cells if isinstance(c, LatticePolytope)]
    if hasattr(result, "polytope"):
        return [result.polytope]
    if hasattr(result, "records"):
        cx = result.records[0].type.complex if result.records else None
        return [cx.cells[c] for c in cx.maximal_cells()] if cx else []
    return []


def _ordered(P: LatticePolytope) -> list[tuple]:
    """Vertices of a polygon in cyclic order."""
    vs = [tuple(float(x) for x in v) for v in P.vertices]
    cx = sum(v[0] for v in vs) / len(vs)
    cy = sum(v[1] for v in vs) / len(vs)
    return sorted(vs, key=lambda v: math.atan2(v[1] - cy, v[0] - cx))


def render(result: Any) -> str:
    cells = [c for c in _cells(result) if c.ambient_dim in (1, 2)]
    if not cells:
        return f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}"/>'
    pts = [tuple(float(x) for x in v) + (0.0,) for c in cells for v in c.vertices]
    xs, ys = [p[0] for p in pts], [p[1] for p in pts]
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1.0)
    scale = (SIZE - 2 * PAD) / span

    def at(x, y=0.0):
        return PAD + (x - min(xs)) * scale, SIZE - PAD - (y - min(ys)) * scale

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}">']
    for c in cells:
        if c.dim == 2:
            path = " ".join("%.2f,%.2f" % at(*v) for v in _ordered(c))
            parts.append(f'<polygon points="{path}" fill="#dde" stroke="black"/>')
        elif c.dim == 1:
            (x0, y0), (x1, y1) = (at(*[float(t) for t in v]) for v in c.vertices)
            parts.append(f'<line x1="{x0:.2f}" y1="{y0:.2f}" x2="{x1:.2f}" y2="{y1:.2f}" stroke="black"/>')
        for v in c.vertices:
            x, y = at(*[float(t) for t in v])
            parts.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3"/>')
    parts.append("</svg>")
    return "\n".join(parts)
