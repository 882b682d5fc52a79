"""Slow, direct reimplementations used only to cross-check the package."""

from __future__ import annotations

from itertools import combinations

import networkx as nx


def elems(mask):
    return [i + 1 for i in range(mask.bit_length()) if mask >> i & 1]


def surrounds_brute(s, t):
    outer = [i for i in elems(t) if not s >> (i - 1) & 1]
    inner = [j for j in elems(s) if not t >> (j - 1) & 1]
    return not any(i < j < k for i in outer for j in inner for k in outer)


def chord_brute(s, t):
    a = elems(s & ~t)
    b = elems(t & ~s)
    for x, y in ((a, b), (b, a)):
        for p, r in combinations(x, 2):
            for q, u in combinations(y, 2):
                if p < q < r < u:
                    return False
    return True


def weak_brute(s, t):
    ss, st = bin(s).count("1"), bin(t).count("1")
    return (ss <= st and surrounds_brute(s, t)) or (st <= ss and surrounds_brute(t, s))


def maximal_collections_by_cliques(n):
    """Maximal chord separated collections are the maximal cliques of the compatibility graph."""
    g = nx.Graph()
    g.add_nodes_from(range(1 << n))
    for s, t in combinations(range(1 << n), 2):
        if chord_brute(s, t):
            g.add_edge(s, t)
    return {frozenset(c) for c in nx.find_cliques(g)}


def polygon_area2(points):
    total = 0
    for (x0, y0), (x1, y1) in zip(points, points[1:] + points[:1]):
        total += x0 * y1 - x1 * y0
    return total


def level_point(mask):
    xs = elems(mask)
    return sum(xs), sum(x * x for x in xs)
