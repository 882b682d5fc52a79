"""Plabic graphs stored as rotation systems: strands, faces, face labels, reducedness and local moves.

Vertices are integers.  ``boundary[m-1]`` is the vertex ``b_m``; boundary
vertices sit counterclockwise on the disc and have degree one.  Internal
vertices carry a color.  Edges have integer ids (parallel edges allowed) and
``rotation[v]`` lists the edges at ``v`` in counterclockwise order.

A dart is ``(edge_id, tail)``.  Strands turn to the next edge
counterclockwise at white vertices and clockwise at black ones; a strand
entering an internal leaf comes straight back.  With this rule the dual of
a level-``k`` tiling has strand permutation ``i -> i + k`` and the faces
whose label contains ``j`` are those on the right of the strand ending at
``b_j``.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Optional

from . import separation as sep
from .collection import SeparatedCollection
from .plabic_tiling import BLACK, WHITE, TriangulatedPlabicTiling, boundary_cycle, ccw, edge, make_triangle

BOUNDARY = "boundary"


@dataclass(frozen=True, eq=False)
class PlabicGraph:
    n: int
    boundary: tuple
    colors: dict  # internal vertex -> color
    edges: dict  # edge id -> (u, v)
    rotation: dict  # vertex -> counterclockwise tuple of edge ids

    def __post_init__(self):
        problems = structure_failures(self)
        if problems:
            raise ValueError("malformed plabic graph: " + "; ".join(problems[:5]))

    def __eq__(self, other):
        if not isinstance(other, PlabicGraph):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def key(self):
        return (
            self.n,
            self.boundary,
            tuple(sorted(self.colors.items())),
            tuple(sorted(self.edges.items())),
            tuple(sorted(self.rotation.items())),
        )

    @property
    def vertices(self) -> list[int]:
        return sorted(self.rotation)

    def color(self, v: int) -> str:
        return self.colors.get(v, BOUNDARY)

    def is_boundary(self, v: int) -> bool:
        return v not in self.colors

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def head(self, dart) -> int:
        e, tail = dart
        u, v = self.edges[e]
        return v if tail == u else u

    def reverse(self, dart):
        return dart[0], self.head(dart)

    @cached_property
    def boundary_index(self) -> dict:
        return {b: m for m, b in enumerate(self.boundary, start=1)}

    def is_leaf_edge(self, e: int) -> bool:
        return any(not self.is_boundary(v) and self.degree(v) == 1 for v in self.edges[e])

    def to_json(self) -> dict:
        return {
            "type": "plabic_graph",
            "n": self.n,
            "boundary": list(self.boundary),
            "vertices": [
                {"id": v, "color": self.color(v), "rotation": list(self.rotation[v])} for v in self.vertices
            ],
            "edges": [{"id": e, "ends": list(self.edges[e])} for e in sorted(self.edges)],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "PlabicGraph":
        colors = {}
        rotation = {}
        for item in doc["vertices"]:
            v = int(item["id"])
            rotation[v] = tuple(int(e) for e in item["rotation"])
            if item.get("color", BOUNDARY) != BOUNDARY:
                colors[v] = item["color"]
        edges = {int(item["id"]): tuple(int(v) for v in item["ends"]) for item in doc["edges"]}
        return cls(int(doc["n"]), tuple(int(b) for b in doc["boundary"]), colors, edges, rotation)


def structure_failures(g: PlabicGraph) -> list[str]:
    out = []
    if g.n < 2:
        out.append("need at least two boundary vertices")
    if len(g.boundary) != g.n or len(set(g.boundary)) != g.n:
        out.append("boundary must list n distinct vertices")
    for v, c in g.colors.items():
        if c not in (WHITE, BLACK):
            out.append(f"vertex {v} has unknown color {c!r}")
        if v in g.boundary:
            out.append(f"boundary vertex {v} cannot be colored")
    if set(g.rotation) != set(g.colors) | set(g.boundary):
        out.append("rotation system must cover exactly the boundary and internal vertices")
        return out
    seen = Counter()
    for v, rot in g.rotation.items():
        if len(set(rot)) != len(rot):
            out.append(f"vertex {v} repeats an edge in its rotation")
        for e in rot:
            if e not in g.edges:
                out.append(f"vertex {v} lists unknown edge {e}")
            elif v not in g.edges[e]:
                out.append(f"edge {e} is not incident to vertex {v}")
            seen[e] += 1
    for e, ends in g.edges.items():
        if len(ends) != 2 or ends[0] == ends[1]:
            out.append(f"edge {e} must join two distinct vertices")
        elif seen[e] != 2:
            out.append(f"edge {e} appears {seen[e]} times in rotations, expected 2")
    for b in g.boundary:
        if b in g.rotation and len(g.rotation[b]) != 1:
            out.append(f"boundary vertex {b} has degree {len(g.rotation[b])}, expected 1")
    return out


def degree_failures(g: PlabicGraph) -> list[str]:
    """Internal vertices of degree 0 or 2 are not allowed."""
    return [f"internal vertex {v} has degree {g.degree(v)}" for v in sorted(g.colors) if g.degree(v) in (0, 2)]


# faces --------------------------------------------------------------------


def _arc(m: int, n: int) -> int:
    """Virtual boundary arc from ``b_m`` to ``b_{m+1}`` (1-based ``m``)."""
    return -m


def _extended(g: PlabicGraph):
    """Rotation and ends including the virtual boundary arcs."""
    n = g.n
    rot = dict(g.rotation)
    ends = dict(g.edges)
    for m in range(1, n + 1):
        ends[_arc(m, n)] = (g.boundary[m - 1], g.boundary[m % n])
    for m in range(1, n + 1):
        prev = (m - 2) % n + 1
        b = g.boundary[m - 1]
        rot[b] = (_arc(m, n),) + tuple(g.rotation[b]) + (_arc(prev, n),)
    return rot, ends


@dataclass(frozen=True)
class FaceStructure:
    darts: dict  # dart -> face id (outer face is -1)
    faces: tuple  # face id -> tuple of darts, interior faces only

    def left(self, dart) -> int:
        return self.darts[dart]


def face_structure(g: PlabicGraph) -> FaceStructure:
    """Trace faces: the face left of ``u -> v`` continues with the edge clockwise after it at ``v``."""
    rot, ends = _extended(g)

    def head(dart):
        e, tail = dart
        u, v = ends[e]
        return v if tail == u else u

    def succ(dart):
        v = head(dart)
        r = rot[v]
        return r[(r.index(dart[0]) - 1) % len(r)], v

    order = []
    for e in sorted(g.edges):
        u, v = g.edges[e]
        order += [(e, u), (e, v)]
    for m in range(1, g.n + 1):
        a, b = ends[_arc(m, g.n)]
        order += [(_arc(m, g.n), a), (_arc(m, g.n), b)]
    outer_dart = (_arc(1, g.n), ends[_arc(1, g.n)][1])
    assigned = {}
    outer = []
    d = outer_dart
    while d not in assigned:
        assigned[d] = -1
        outer.append(d)
        d = succ(d)
    faces = []
    for start in order:
        if start in assigned:
            continue
        cycle = []
        d = start
        while d not in assigned:
            assigned[d] = len(faces)
            cycle.append(d)
            d = succ(d)
        faces.append(tuple(cycle))
    return FaceStructure(assigned, tuple(faces))


def faces(g: PlabicGraph) -> tuple:
    """Interior faces as dart cycles (virtual boundary arcs have negative ids)."""
    return face_structure(g).faces


def euler_ok(g: PlabicGraph) -> bool:
    fs = face_structure(g)
    v = len(g.rotation)
    e = len(g.edges) + g.n
    return v - e + len(fs.faces) + 1 == 2


def face_vertices(g: PlabicGraph, face_id: int) -> list[int]:
    return [tail for _, tail in faces(g)[face_id]]


# strands ------------------------------------------------------------------


@dataclass(frozen=True)
class Strand:
    start: Optional[int]  # boundary index i, None for a closed strand
    end: Optional[int]
    darts: tuple

    @property
    def closed(self) -> bool:
        return self.start is None


def _next_dart(g: PlabicGraph, dart):
    v = g.head(dart)
    if g.is_boundary(v):
        return None
    rot = g.rotation[v]
    if len(rot) == 1:
        return dart[0], v
    j = rot.index(dart[0])
    step = 1 if g.colors[v] == WHITE else -1
    return rot[(j + step) % len(rot)], v


@dataclass(frozen=True)
class StrandSystem:
    open: tuple  # strand starting at b_i is open[i-1]
    closed: tuple

    def permutation(self) -> tuple:
        return tuple(s.end for s in self.open)


def strands(g: PlabicGraph) -> StrandSystem:
    limit = 2 * len(g.edges) + 1
    used = set()
    opened = []
    for i, b in enumerate(g.boundary, start=1):
        d = (g.rotation[b][0], b)
        path = []
        while d is not None:
            if len(path) > limit or d in used:
                raise ValueError(f"strand from b_{i} does not terminate; malformed rotation system")
            used.add(d)
            path.append(d)
            last = d
            d = _next_dart(g, d)
        opened.append(Strand(i, g.boundary_index[g.head(last)], tuple(path)))
    closed = []
    for e in sorted(g.edges):
        for tail in g.edges[e]:
            d0 = (e, tail)
            if d0 in used:
                continue
            path = []
            d = d0
            while d not in used:
                used.add(d)
                path.append(d)
                d = _next_dart(g, d)
                if d is None:
                    raise ValueError("strand walk reached the boundary from inside a closed strand")
            closed.append(Strand(None, None, tuple(path)))
    return StrandSystem(tuple(opened), tuple(closed))


def strand_permutation(g: PlabicGraph) -> tuple:
    """``pi[i-1] = j`` when the strand from ``b_i`` ends at ``b_j``."""
    return strands(g).permutation()


def sigma(k: int, n: int) -> tuple:
    return tuple((i - 1 + k) % n + 1 for i in range(1, n + 1))


@dataclass(frozen=True)
class ReducednessReport:
    closed_strand: Optional[tuple] = None
    essential_self_intersection: Optional[tuple] = None  # (strand start, edge)
    bad_double_crossing: Optional[tuple] = None  # (start i, start j, e1, e2)
    fixed_point_without_leaf: Optional[int] = None

    @property
    def is_reduced(self) -> bool:
        return (
            self.closed_strand is None
            and self.essential_self_intersection is None
            and self.bad_double_crossing is None
            and self.fixed_point_without_leaf is None
        )

    def to_json(self) -> dict:
        return {
            "closed_strand": None if self.closed_strand is None else [list(d) for d in self.closed_strand],
            "essential_self_intersection": None
            if self.essential_self_intersection is None
            else list(self.essential_self_intersection),
            "bad_double_crossing": None if self.bad_double_crossing is None else list(self.bad_double_crossing),
            "fixed_point_without_leaf": self.fixed_point_without_leaf,
            "is_reduced": self.is_reduced,
        }


def is_reduced(g: PlabicGraph) -> ReducednessReport:
    system = strands(g)
    closed = system.closed[0].darts if system.closed else None
    essential = {}
    self_hit = None
    for s in system.open:
        order = {}
        for pos, (e, _) in enumerate(s.darts):
            if g.is_leaf_edge(e):
                continue
            if e in order:
                if self_hit is None:
                    self_hit = (s.start, e)
            else:
                order[e] = pos
        essential[s.start] = order
    bad = None
    starts = sorted(essential)
    for i, j in combinations(starts, 2):
        common = sorted(set(essential[i]) & set(essential[j]), key=essential[i].get)
        if len(common) < 2:
            continue
        for e1, e2 in combinations(common, 2):
            # e1 comes before e2 along strand i; bad if also along strand j
            if essential[j][e1] < essential[j][e2]:
                bad = (i, j, e1, e2)
                break
        if bad:
            break
    fixed = None
    for s in system.open:
        if s.start == s.end:
            b = g.boundary[s.start - 1]
            (e,) = g.rotation[b]
            if not g.is_leaf_edge(e):
                fixed = s.start
                break
    return ReducednessReport(closed, self_hit, bad, fixed)


def labelled_faces(g: PlabicGraph, check: bool = True) -> dict:
    """Face id -> label mask; ``j`` is in the label of every face right of the strand ending at ``b_j``.

    At a boundary leaf the strand is a fixed point with the same face on
    both sides; ``j`` is then in every label when the leaf is black and in
    none when it is white.
    """
    if check:
        report = is_reduced(g)
        if not report.is_reduced:
            raise ValueError(f"face labels need a reduced graph: {report.to_json()}")
    fs = face_structure(g)
    system = strands(g)
    labels = [0] * len(fs.faces)
    for s in system.open:
        j = s.end
        if s.start == s.end and len(s.darts) == 2:
            leaf = g.head(s.darts[0])
            if g.colors.get(leaf) == BLACK:
                for f in range(len(labels)):
                    labels[f] |= 1 << (j - 1)
            continue
        on_strand = {e for e, _ in s.darts}
        seeds = {fs.left(g.reverse(d)) for d in s.darts} - {-1}
        reached = set(seeds)
        queue = deque(seeds)
        while queue:
            f = queue.popleft()
            for e, _ in fs.faces[f]:
                if e < 0 or e in on_strand:
                    continue
                for tail in g.edges[e]:
                    other = fs.left((e, tail))
                    if other != -1 and other not in reached:
                        reached.add(other)
                        queue.append(other)
        for f in reached:
            labels[f] |= 1 << (j - 1)
    return dict(enumerate(labels))


def face_labels(g: PlabicGraph) -> SeparatedCollection:
    labels = labelled_faces(g)
    if len(set(labels.values())) != len(labels):
        raise ValueError("two faces received the same label")
    return SeparatedCollection(g.n, frozenset(labels.values()), "weak")


def signature(g: PlabicGraph) -> tuple:
    """Sorted ``(color, labels of faces around v)`` over internal vertices; equal for isomorphic labelled graphs."""
    fs = face_structure(g)
    labels = labelled_faces(g, check=False)
    rot, _ = _extended(g)
    out = []
    for v, c in g.colors.items():
        around = frozenset(labels[fs.left((e, v))] for e in g.rotation[v] if fs.left((e, v)) != -1)
        out.append((c, tuple(sorted(around))))
    return tuple(sorted(out))


def triangles_of(g: PlabicGraph) -> frozenset:
    """For trivalent graphs: one triangle per internal vertex, labelled by its three faces."""
    out = set()
    for c, around in signature(g):
        if len(around) != 3:
            raise ValueError("triangles are only defined for trivalent internal vertices")
        out.add(make_triangle(c, around))
    return frozenset(out)


# duality ------------------------------------------------------------------


def dualize(t: TriangulatedPlabicTiling) -> PlabicGraph:
    """One internal vertex per triangle, one edge per tiling edge; ``b_m`` on the boundary edge ``I_m I_{m+1}``."""
    n, k = t.n, t.level
    if not 0 < k < n:
        raise ValueError(f"degenerate level {k} has no dual plabic graph")
    ring = boundary_cycle(n, k)
    boundary = tuple(range(n))
    if not t.triangles:
        # n = 2: the section is a segment and the graph a single chord b_1 b_2
        return PlabicGraph(n, boundary, {}, {0: (0, 1)}, {0: (0,), 1: (0,)})
    tris = sorted(t.triangles)
    vid = {tri: n + j for j, tri in enumerate(tris)}
    sides = {}
    for tri in tris:
        a, b, c = ccw(tri.labels)
        for s in (edge(a, b), edge(b, c), edge(c, a)):
            sides.setdefault(s, []).append(tri)
    where = {edge(ring[m], ring[(m + 1) % n]): m for m in range(n)}
    eid = {}
    edges = {}
    for j, s in enumerate(sorted(sides)):
        owners = sides[s]
        eid[s] = j
        if len(owners) == 2:
            edges[j] = (vid[owners[0]], vid[owners[1]])
        elif s in where:
            edges[j] = (boundary[where[s]], vid[owners[0]])
        else:
            raise ValueError(f"edge {sep.fmt(s[0])}-{sep.fmt(s[1])} has one triangle but is not on the boundary")
    rotation = {}
    for tri in tris:
        a, b, c = ccw(tri.labels)
        rotation[vid[tri]] = (eid[edge(a, b)], eid[edge(b, c)], eid[edge(c, a)])
    for m in range(n):
        rotation[boundary[m]] = (eid[edge(ring[m], ring[(m + 1) % n])],)
    colors = {vid[tri]: tri.color for tri in tris}
    return PlabicGraph(n, boundary, colors, edges, rotation)


def lollipops(n: int, color: str) -> PlabicGraph:
    """Every ``b_m`` attached to a leaf of the given color (white: all labels empty, black: all ``[n]``)."""
    boundary = tuple(range(n))
    colors = {n + m: color for m in range(n)}
    edges = {m: (m, n + m) for m in range(n)}
    rotation = {v: (v % n,) for v in range(2 * n)}
    return PlabicGraph(n, boundary, colors, edges, rotation)


# moves --------------------------------------------------------------------


def _rebuild(g: PlabicGraph, colors=None, edges=None, rotation=None) -> PlabicGraph:
    return PlabicGraph(
        g.n,
        g.boundary,
        dict(g.colors if colors is None else colors),
        dict(g.edges if edges is None else edges),
        dict(g.rotation if rotation is None else rotation),
    )


def square_move(g: PlabicGraph, face_id: int) -> PlabicGraph:
    """Swap the colors around a quadrilateral face with alternating colors and trivalent corners."""
    cycle = faces(g)
    if not 0 <= face_id < len(cycle):
        raise ValueError(f"no interior face F{face_id}")
    darts = cycle[face_id]
    if len(darts) != 4 or any(e < 0 for e, _ in darts):
        raise ValueError(f"face F{face_id} is not an interior quadrilateral")
    corners = [tail for _, tail in darts]
    if len(set(corners)) != 4:
        raise ValueError(f"face F{face_id} repeats a vertex")
    for v in corners:
        if g.is_boundary(v):
            raise ValueError(f"vertex {v} of face F{face_id} is a boundary vertex")
        if g.degree(v) != 3:
            raise ValueError(f"vertex {v} of face F{face_id} has degree {g.degree(v)}, expected 3")
    for u, v in zip(corners, corners[1:] + corners[:1]):
        if g.colors[u] == g.colors[v]:
            raise ValueError(f"face F{face_id} does not alternate colors at vertices {u}, {v}")
    colors = dict(g.colors)
    for v in corners:
        colors[v] = WHITE if colors[v] == BLACK else BLACK
    return _rebuild(g, colors=colors)


def _check_unicolored(g: PlabicGraph, e: int, color: Optional[str]) -> tuple[int, int]:
    if e not in g.edges:
        raise ValueError(f"no edge E{e}")
    u, v = g.edges[e]
    if g.is_boundary(u) or g.is_boundary(v):
        raise ValueError(f"edge E{e} touches the boundary")
    if g.colors[u] != g.colors[v]:
        raise ValueError(f"edge E{e} joins a {g.colors[u]} and a {g.colors[v]} vertex")
    if color is not None and g.colors[u] != color:
        raise ValueError(f"edge E{e} joins {g.colors[u]} vertices, expected {color}")
    if sum(1 for ends in g.edges.values() if set(ends) == {u, v}) > 1:
        raise ValueError(f"edge E{e} has a parallel edge; contracting it would create a loop")
    return u, v


def contract(g: PlabicGraph, e: int, color: Optional[str] = None) -> PlabicGraph:
    """Merge the two same-colored ends of ``e``; the smaller vertex id survives."""
    u, v = sorted(_check_unicolored(g, e, color))
    ru, rv = g.rotation[u], g.rotation[v]
    j = rv.index(e)
    after = rv[j + 1:] + rv[:j]
    i = ru.index(e)
    rotation = dict(g.rotation)
    rotation[u] = ru[:i] + after + ru[i + 1:]
    del rotation[v]
    edges = {}
    for f, (a, b) in g.edges.items():
        if f == e:
            continue
        edges[f] = (u if a == v else a, u if b == v else b)
    colors = dict(g.colors)
    del colors[v]
    return _rebuild(g, colors, edges, rotation)


def uncontract(g: PlabicGraph, v: int, split: int = 0, color: Optional[str] = None) -> PlabicGraph:
    """Split ``v`` into ``v`` holding rotation slots ``split, split+1`` and a new vertex holding the rest."""
    if v not in g.colors:
        raise ValueError(f"vertex {v} is not an internal vertex")
    if color is not None and g.colors[v] != color:
        raise ValueError(f"vertex {v} is {g.colors[v]}, expected {color}")
    rot = g.rotation[v]
    d = len(rot)
    if d < 4:
        raise ValueError(f"vertex {v} has degree {d}; uncontraction needs degree at least 4")
    r = rot[split % d:] + rot[: split % d]
    w = max(g.rotation) + 1
    f = max(g.edges) + 1
    rotation = dict(g.rotation)
    rotation[v] = (r[0], r[1], f)
    rotation[w] = tuple(r[2:]) + (f,)
    edges = dict(g.edges)
    for x in r[2:]:
        a, b = edges[x]
        edges[x] = (w if a == v else a, w if b == v else b)
    edges[f] = (v, w)
    colors = dict(g.colors)
    colors[w] = g.colors[v]
    return _rebuild(g, colors, edges, rotation)


def flip(g: PlabicGraph, e: int, color: Optional[str] = None) -> PlabicGraph:
    """Trivalent move: contract ``e`` and split the 4-valent vertex the other way, keeping all ids."""
    u, v = _check_unicolored(g, e, color)
    if g.degree(u) != 3 or g.degree(v) != 3:
        raise ValueError(f"edge E{e} needs trivalent ends, got degrees {g.degree(u)} and {g.degree(v)}")
    ru, rv = g.rotation[u], g.rotation[v]
    i, j = ru.index(e), rv.index(e)
    x1, x2 = ru[(i + 1) % 3], ru[(i + 2) % 3]
    y1, y2 = rv[(j + 1) % 3], rv[(j + 2) % 3]
    # merged rotation (y1, y2, x1, x2); the other split pairs (x2, y1) and (y2, x1)
    rotation = dict(g.rotation)
    rotation[u] = (x2, y1, e)
    rotation[v] = (y2, x1, e)
    edges = dict(g.edges)
    for x, old, new in ((y1, v, u), (x1, u, v)):
        a, b = edges[x]
        edges[x] = (new if a == old else a, new if b == old else b)
    return _rebuild(g, edges=edges, rotation=rotation)


MODES = ("M1-contract", "M1-uncontract", "M3-contract", "M3-uncontract", "M1", "M3")


def contraction_move(g: PlabicGraph, target: int, mode: str, split: int = 0) -> PlabicGraph:
    """Unicolored moves; M1 is white and M3 black.  Plain ``M1``/``M3`` is the trivalent flip."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    color = WHITE if mode.startswith("M1") else BLACK
    if mode.endswith("-contract"):
        return contract(g, target, color)
    if mode.endswith("-uncontract"):
        return uncontract(g, target, split, color)
    return flip(g, target, color)


def diagonal_edge(g: PlabicGraph, s: int, t: int) -> int:
    """The edge of ``g`` separating the faces labelled ``s`` and ``t``."""
    fs = face_structure(g)
    labels = labelled_faces(g, check=False)
    for e in sorted(g.edges):
        a, b = g.edges[e]
        fa, fb = fs.left((e, a)), fs.left((e, b))
        if -1 in (fa, fb):
            continue
        if {labels[fa], labels[fb]} == {s, t}:
            return e
    raise ValueError(f"no edge separates faces {sep.fmt(s)} and {sep.fmt(t)}")


def face_with_label(g: PlabicGraph, label: int) -> int:
    for f, lab in labelled_faces(g, check=False).items():
        if lab == label:
            return f
    raise ValueError(f"no face labelled {sep.fmt(label)}")
