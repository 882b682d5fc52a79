"""Deterministic SVG drawings of plabic tilings, plabic graphs and stacked sections of zonotopal tilings."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional
from xml.sax.saxutils import escape

import numpy as np

from . import separation as sep
from .geometry import point2
from .plabic_graph import PlabicGraph
from .plabic_tiling import BLACK, PlabicTiling, TriangulatedPlabicTiling, ccw
from .zonotope import ZonotopalTiling, sections

TARGETS = ("tiling", "graph", "layered-3d")
EMBEDDINGS = ("regular-ngon", "moment-curve-projection")


@dataclass(frozen=True)
class RenderSpec:
    target: str = "tiling"
    embedding: str = "regular-ngon"
    width: int = 420
    height: int = 420
    margin: int = 36
    labels: bool = True
    stroke: str = "#000000"
    black_fill: str = "#9a9a9a"
    white_fill: str = "none"
    font_size: int = 11

    def __post_init__(self):
        if self.target not in TARGETS:
            raise ValueError(f"unknown render target {self.target!r}")
        if self.embedding not in EMBEDDINGS:
            raise ValueError(f"unknown embedding {self.embedding!r}")


def _num(v: float) -> str:
    s = f"{v:.2f}"
    return "0.00" if s == "-0.00" else s


def embed(mask: int, n: int, embedding: str) -> tuple[float, float]:
    if embedding == "moment-curve-projection":
        x, y = point2(mask)
        return float(x), float(y)
    x = y = 0.0
    for i in sep.elements(mask):
        angle = 2 * math.pi * i / n
        x += math.cos(angle)
        y += math.sin(angle)
    return x, y


class _Frame:
    """Maps model coordinates to an SVG box, flipping y so counterclockwise stays counterclockwise."""

    def __init__(self, points, x0: float, y0: float, w: float, h: float):
        xs = [p[0] for p in points] or [0.0]
        ys = [p[1] for p in points] or [0.0]
        self.cx = (min(xs) + max(xs)) / 2
        self.cy = (min(ys) + max(ys)) / 2
        span = max(max(xs) - min(xs), max(ys) - min(ys), 1e-9)
        self.scale = min(w, h) / span
        self.ox = x0 + w / 2
        self.oy = y0 + h / 2

    def __call__(self, p) -> tuple[str, str]:
        return _num(self.ox + (p[0] - self.cx) * self.scale), _num(self.oy - (p[1] - self.cy) * self.scale)


def _polygon(points, fill: str, stroke: str) -> str:
    pts = " ".join(f"{x},{y}" for x, y in points)
    return f'<polygon points="{pts}" fill="{fill}" stroke="{stroke}" stroke-width="1"/>'


def _tiling_body(t, spec: RenderSpec, x0: float, y0: float, w: float, h: float) -> list[str]:
    n = t.n
    pos = {s: embed(s, n, spec.embedding) for s in t.vertices}
    frame = _Frame(list(pos.values()), x0, y0, w, h)
    out = []
    if isinstance(t, TriangulatedPlabicTiling):
        polys = [(tri.color, ccw(tri.labels)) for tri in sorted(t.triangles)]
    else:
        polys = [(f.color, f.vertices) for f in t.faces]
    # white first so shaded faces sit on top of shared strokes
    for color, verts in sorted(polys, key=lambda item: item[0] == BLACK):
        fill = spec.black_fill if color == BLACK else spec.white_fill
        out.append(_polygon([frame(pos[s]) for s in verts], fill, spec.stroke))
    if len(t.vertices) == 2:
        (a, b) = [frame(pos[s]) for s in sorted(t.vertices)]
        out.append(f'<line x1="{a[0]}" y1="{a[1]}" x2="{b[0]}" y2="{b[1]}" stroke="{spec.stroke}"/>')
    for s in sorted(t.vertices):
        x, y = frame(pos[s])
        out.append(f'<circle cx="{x}" cy="{y}" r="2.5" fill="{spec.stroke}"/>')
        if spec.labels:
            out.append(
                f'<text x="{x}" y="{y}" dx="4" dy="-4" font-size="{spec.font_size}" '
                f'font-family="sans-serif">{escape(sep.fmt(s))}</text>'
            )
    return out


def tutte_layout(g: PlabicGraph) -> dict:
    """Boundary on the unit circle, each internal vertex at the mean of its neighbours."""
    n = g.n
    pos = {}
    for m, b in enumerate(g.boundary, start=1):
        angle = 2 * math.pi * (m - 0.5) / n
        pos[b] = (math.cos(angle), math.sin(angle))
    inner = sorted(g.colors)
    if inner:
        idx = {v: j for j, v in enumerate(inner)}
        a = np.zeros((len(inner), len(inner)))
        rhs = np.zeros((len(inner), 2))
        for v in inner:
            row = idx[v]
            for e in g.rotation[v]:
                w = g.head((e, v))
                a[row, row] += 1
                if w in idx:
                    a[row, idx[w]] -= 1
                else:
                    rhs[row] += pos[w]
        sol = np.linalg.lstsq(a, rhs, rcond=None)[0]
        for v in inner:
            pos[v] = (float(sol[idx[v], 0]), float(sol[idx[v], 1]))
    return pos


def _graph_body(g: PlabicGraph, spec: RenderSpec) -> list[str]:
    pos = tutte_layout(g)
    frame = _Frame(list(pos.values()), spec.margin, spec.margin, spec.width - 2 * spec.margin, spec.height - 2 * spec.margin)
    out = []
    cx, cy = frame((0.0, 0.0))
    r = _num(frame.scale)
    out.append(f'<circle cx="{cx}" cy="{cy}" r="{r}" fill="none" stroke="#bbbbbb"/>')
    for e in sorted(g.edges):
        u, v = g.edges[e]
        (x1, y1), (x2, y2) = frame(pos[u]), frame(pos[v])
        out.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{spec.stroke}" stroke-width="1.5"/>')
    for v in sorted(g.colors):
        x, y = frame(pos[v])
        fill = "#000000" if g.colors[v] == BLACK else "#ffffff"
        out.append(f'<circle cx="{x}" cy="{y}" r="5" fill="{fill}" stroke="{spec.stroke}"/>')
    for m, b in enumerate(g.boundary, start=1):
        x, y = frame(pos[b])
        out.append(f'<circle cx="{x}" cy="{y}" r="2" fill="{spec.stroke}"/>')
        if spec.labels:
            out.append(
                f'<text x="{x}" y="{y}" dx="5" dy="-5" font-size="{spec.font_size}" '
                f'font-family="sans-serif">b{m}</text>'
            )
    return out


def _wrap(body: list[str], width: float, height: float) -> str:
    head = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_num(width)}" height="{_num(height)}" '
        f'viewBox="0 0 {_num(width)} {_num(height)}">'
    )
    return "\n".join([head, '<rect width="100%" height="100%" fill="#ffffff"/>'] + body + ["</svg>", ""])


def render_svg(obj, spec: Optional[RenderSpec] = None) -> str:
    spec = spec or RenderSpec(target=_default_target(obj))
    if spec.target == "graph":
        if not isinstance(obj, PlabicGraph):
            raise TypeError("graph rendering needs a PlabicGraph")
        return _wrap(_graph_body(obj, spec), spec.width, spec.height)
    if spec.target == "tiling":
        if not isinstance(obj, (PlabicTiling, TriangulatedPlabicTiling)):
            raise TypeError("tiling rendering needs a plabic tiling")
        body = [
            f'<g class="level" data-level="{obj.level}">',
            *_tiling_body(obj, spec, spec.margin, spec.margin, spec.width - 2 * spec.margin, spec.height - 2 * spec.margin),
            "</g>",
        ]
        return _wrap(body, spec.width, spec.height)
    if not isinstance(obj, ZonotopalTiling):
        raise TypeError("layered rendering needs a ZonotopalTiling")
    cell = min(spec.width, spec.height)
    body = []
    levels = sections(obj)
    for t in levels:
        x0 = t.level * cell
        body.append(f'<g class="level" data-level="{t.level}">')
        body.append(
            f'<text x="{_num(x0 + spec.margin)}" y="{_num(spec.margin / 2 + spec.font_size / 2)}" '
            f'font-size="{spec.font_size}" font-family="sans-serif">level {t.level}</text>'
        )
        body += _tiling_body(t, spec, x0 + spec.margin, spec.margin, cell - 2 * spec.margin, cell - 2 * spec.margin)
        body.append("</g>")
    return _wrap(body, cell * len(levels), cell)


def _default_target(obj) -> str:
    if isinstance(obj, PlabicGraph):
        return "graph"
    if isinstance(obj, ZonotopalTiling):
        return "layered-3d"
    return "tiling"
