"""Exact integer geometry on the moment curve ``v_i = (1, x_i, x_i^2)``."""

from __future__ import annotations

from typing import Optional, Sequence

from .separation import elements


def default_params(n: int) -> tuple[int, ...]:
    return tuple(range(1, n + 1))


def vector(i: int, x: Sequence[int]) -> tuple[int, int, int]:
    xi = x[i - 1]
    return 1, xi, xi * xi


def point3(mask: int, x: Sequence[int]) -> tuple[int, int, int]:
    """``v_S``: the sum of ``v_i`` over ``i`` in ``S``; the first coordinate is ``|S|``."""
    h = a = b = 0
    for i in elements(mask):
        xi = x[i - 1]
        h += 1
        a += xi
        b += xi * xi
    return h, a, b


def point2(mask: int, x: Optional[Sequence[int]] = None) -> tuple[int, int]:
    """Planar coordinates of ``v_S`` inside its horizontal section."""
    a = b = 0
    i = 1
    while mask:
        if mask & 1:
            xi = i if x is None else x[i - 1]
            a += xi
            b += xi * xi
        mask >>= 1
        i += 1
    return a, b


def orient(p, q, r) -> int:
    """Twice the signed area of triangle ``pqr`` (positive iff counterclockwise)."""
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def polygon_area2(points: Sequence[tuple[int, int]]) -> int:
    """Twice the signed shoelace area."""
    total = 0
    for (x0, y0), (x1, y1) in zip(points, list(points[1:]) + [points[0]]):
        total += x0 * y1 - x1 * y0
    return total


def is_strictly_convex_ccw(points: Sequence[tuple[int, int]]) -> bool:
    r = len(points)
    if r < 3:
        return False
    for j in range(r):
        if orient(points[j], points[(j + 1) % r], points[(j + 2) % r]) <= 0:
            return False
    # a strictly convex turn sequence can still wind more than once
    return polygon_area2(points) > 0 and _winding_once(points)


def _winding_once(points) -> bool:
    # the edge directions of a simple convex polygon turn through exactly 360 degrees;
    # count how often the direction crosses the positive x-axis direction
    r = len(points)
    dirs = [(points[(j + 1) % r][0] - points[j][0], points[(j + 1) % r][1] - points[j][1]) for j in range(r)]
    crossings = 0
    for (ax, ay), (bx, by) in zip(dirs, dirs[1:] + dirs[:1]):
        if ay < 0 <= by and ax * by - ay * bx > 0:
            crossings += 1
    return crossings == 1


def det3(u, v, w) -> int:
    return (
        u[0] * (v[1] * w[2] - v[2] * w[1])
        - u[1] * (v[0] * w[2] - v[2] * w[0])
        + u[2] * (v[0] * w[1] - v[1] * w[0])
    )
