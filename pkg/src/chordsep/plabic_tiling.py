"""Plabic tilings of one level of a chord separated collection, and their triangulations.

A level-``k`` collection ``D`` embeds in the plane ``z = k`` through
``v_S = sum(v_i for i in S)`` with ``v_i = (1, i, i^2)``; only the last two
coordinates are kept (see :func:`chordsep.geometry.point2`).  White cliques
``W(K) = {S in D : S > K}`` and black cliques ``B(L) = {S in D : S < L}``
with at least three members are the faces.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product
from typing import Iterable, Iterator, NamedTuple, Sequence

from . import separation as sep
from .collection import SeparatedCollection, addable_sets, expected_level_size, is_pairwise_separated
from .geometry import is_strictly_convex_ccw, orient, point2

WHITE = "white"
BLACK = "black"


class Face(NamedTuple):
    color: str
    key: int  # K for a white clique, L for a black clique
    vertices: tuple[int, ...]  # counterclockwise


class Triangle(NamedTuple):
    color: str
    labels: tuple[int, int, int]  # sorted by mask


def edge(s: int, t: int) -> tuple[int, int]:
    return (s, t) if s < t else (t, s)


def make_triangle(color: str, labels: Iterable[int]) -> Triangle:
    labels = tuple(sorted(labels))
    if len(labels) != 3 or len(set(labels)) != 3:
        raise ValueError(f"a triangle needs three distinct labels, got {labels}")
    if color not in (WHITE, BLACK):
        raise ValueError(f"unknown color {color!r}")
    return Triangle(color, labels)


def boundary_cycle(n: int, k: int) -> list[int]:
    """The cyclic intervals ``[m, m+k-1]``, ``m = 1..n``, in counterclockwise order."""
    return [sep.cyclic_interval(m, k, n) for m in range(1, n + 1)]


def ccw(labels: Sequence[int]) -> tuple[int, ...]:
    """Order the three labels of a triangle counterclockwise."""
    a, b, c = labels
    return (a, b, c) if orient(point2(a), point2(b), point2(c)) > 0 else (a, c, b)


def subdivision_failures(n: int, k: int, polygons: Sequence[Sequence[int]], vertices: Iterable[int] = ()) -> list[str]:
    """Check that counterclockwise convex polygons tile the level-``k`` section polygon.

    Every polygon must be strictly convex and counterclockwise in the exact
    embedding, every directed edge may occur once, and the unpaired edges
    must be exactly the boundary cycle of cyclic intervals.  Under these
    conditions the polygons cover the section with multiplicity one.
    """
    failures = []
    if n < 3:
        # the section is a point or a segment; there is nothing to tile
        if polygons:
            failures.append(f"no polygons fit in a degenerate section (n={n})")
        return failures
    directed = Counter()
    used = set()
    for poly in polygons:
        pts = [point2(s) for s in poly]
        if not is_strictly_convex_ccw(pts):
            failures.append(f"polygon {[sep.fmt(s) for s in poly]} is not strictly convex counterclockwise")
        for s, t in zip(poly, list(poly[1:]) + [poly[0]]):
            directed[(s, t)] += 1
        used.update(poly)
    ring = boundary_cycle(n, k)
    expected = {(ring[m], ring[(m + 1) % n]) for m in range(n)}
    for (s, t), count in sorted(directed.items()):
        if count > 1:
            failures.append(f"edge {sep.fmt(s)}->{sep.fmt(t)} is used by {count} polygons")
        if (t, s) not in directed and (s, t) not in expected:
            failures.append(f"edge {sep.fmt(s)}-{sep.fmt(t)} is unpaired but not on the boundary")
    for s, t in sorted(expected):
        if directed[(s, t)] != 1 or (t, s) in directed:
            failures.append(f"boundary edge {sep.fmt(s)}-{sep.fmt(t)} is not covered exactly once")
    for s in vertices:
        if s not in used:
            failures.append(f"vertex {sep.fmt(s)} lies on no polygon")
    return failures


@dataclass(frozen=True)
class PlabicTiling:
    n: int
    level: int
    vertices: frozenset
    white_cliques: dict = field(compare=False)  # non-trivial only: K -> (Ka_1, ..., Ka_r)
    black_cliques: dict = field(compare=False)  # non-trivial only: L -> (L-b_1, ..., L-b_s)
    faces: tuple = field(compare=False)

    @cached_property
    def edges(self) -> frozenset:
        if len(self.vertices) == 2:
            # n = 2, level 1: the section is a segment
            return frozenset([edge(*self.vertices)])
        out = set()
        for face in self.faces:
            vs = face.vertices
            for s, t in zip(vs, vs[1:] + vs[:1]):
                out.add(edge(s, t))
        return frozenset(out)

    def sorted_vertices(self) -> list[int]:
        return sorted(self.vertices)

    def to_json(self) -> dict:
        order = self.sorted_vertices()
        index = {s: j for j, s in enumerate(order)}
        return {
            "type": "plabic_tiling",
            "n": self.n,
            "level": self.level,
            "vertices": [sep.elements(s) for s in order],
            "faces": [{"color": f.color, "vertices": [index[s] for s in f.vertices]} for f in self.faces],
        }


def cliques(vertices: Iterable[int], n: int) -> tuple[dict, dict]:
    """All white and black cliques (any size) keyed by ``K`` and ``L``, members in clique order."""
    white = defaultdict(list)
    black = defaultdict(list)
    for s in vertices:
        for i in range(n):
            bit = 1 << i
            if s & bit:
                white[s & ~bit].append((i, s))
            else:
                black[s | bit].append((i, s))
    white = {k: tuple(s for _, s in sorted(v)) for k, v in white.items()}
    black = {k: tuple(s for _, s in sorted(v)) for k, v in black.items()}
    return white, black


def build_plabic_tiling(dk: SeparatedCollection, check: bool = True) -> PlabicTiling:
    """The polygonal complex of a level collection maximal by inclusion in ``C([n], k)``."""
    n = dk.n
    levels = {sep.size(s) for s in dk.sets}
    if len(levels) != 1:
        raise ValueError("a plabic tiling needs a nonempty collection of equal-size sets")
    (k,) = levels
    if check:
        bad = is_pairwise_separated(SeparatedCollection(n, dk.sets, "chord"))
        if bad is not None:
            raise ValueError(f"not chord separated: {sep.fmt(bad[0])}, {sep.fmt(bad[1])}")
        extra = addable_sets(SeparatedCollection(n, dk.sets, "chord"), level=k)
        if extra:
            raise ValueError(f"level-{k} collection is not maximal: {sep.fmt(extra[0])} can be added")
    if k in (0, n):
        return PlabicTiling(n, k, frozenset(dk.sets), {}, {}, ())
    white, black = cliques(dk.sets, n)
    white = {key: members for key, members in white.items() if len(members) >= 3}
    black = {key: members for key, members in black.items() if len(members) >= 3}
    faces = [Face(WHITE, key, members) for key, members in sorted(white.items())]
    faces += [Face(BLACK, key, members) for key, members in sorted(black.items())]
    tiling = PlabicTiling(n, k, frozenset(dk.sets), white, black, tuple(faces))
    if check:
        failures = subdivision_failures(n, k, [f.vertices for f in faces], dk.sets)
        if failures:
            raise AssertionError("plabic tiling failed geometric validation: " + "; ".join(failures[:5]))
    return tiling


@dataclass(frozen=True)
class TriangulatedPlabicTiling:
    n: int
    level: int
    vertices: frozenset
    triangles: frozenset

    @classmethod
    def from_triangles(cls, n: int, level: int, vertices: Iterable[int], triangles: Iterable) -> "TriangulatedPlabicTiling":
        tris = frozenset(t if isinstance(t, Triangle) else make_triangle(*t) for t in triangles)
        return cls(n, level, frozenset(vertices), tris)

    @cached_property
    def edges(self) -> frozenset:
        if len(self.vertices) == 2:
            return frozenset([edge(*self.vertices)])
        out = set()
        for t in self.triangles:
            a, b, c = t.labels
            out.update((edge(a, b), edge(b, c), edge(a, c)))
        return frozenset(out)

    @cached_property
    def base(self) -> PlabicTiling:
        return build_plabic_tiling(SeparatedCollection(self.n, self.vertices), check=False)

    @cached_property
    def diagonals(self) -> frozenset:
        return self.edges - self.base.edges

    def white_triangles(self) -> list[Triangle]:
        return sorted(t for t in self.triangles if t.color == WHITE)

    def black_triangles(self) -> list[Triangle]:
        return sorted(t for t in self.triangles if t.color == BLACK)

    def collection(self) -> SeparatedCollection:
        return SeparatedCollection(self.n, self.vertices, "chord")

    def key(self):
        return self.n, self.level, tuple(sorted(self.vertices)), tuple(sorted(self.triangles))

    def to_json(self) -> dict:
        order = sorted(self.vertices)
        index = {s: j for j, s in enumerate(order)}
        doc = {
            "type": "triangulated_plabic_tiling",
            "n": self.n,
            "level": self.level,
            "vertices": [sep.elements(s) for s in order],
            "faces": [],
            "diagonals": [],
            "triangles": [
                {"color": t.color, "vertices": [index[s] for s in t.labels]} for t in sorted(self.triangles)
            ],
        }
        if 0 < self.level < self.n:
            doc["faces"] = [{"color": f.color, "vertices": [index[s] for s in f.vertices]} for f in self.base.faces]
            doc["diagonals"] = [[index[s], index[t]] for s, t in sorted(self.diagonals)]
        return doc


def plabic_tiling_from_json(doc: dict):
    """Parse a tiling document; triangles win over diagonals, diagonals over a bare tiling."""
    n, level = doc["n"], doc["level"]
    order = [sep.to_mask(v, n) for v in doc["vertices"]]
    dk = SeparatedCollection(n, frozenset(order))
    if doc.get("triangles") or (level in (0, n) and doc.get("type") == "triangulated_plabic_tiling"):
        tris = [make_triangle(t["color"], (order[j] for j in t["vertices"])) for t in doc.get("triangles", [])]
        result = TriangulatedPlabicTiling.from_triangles(n, level, order, tris)
        failures = triangulation_failures(result)
        if failures:
            raise ValueError("not a triangulated plabic tiling: " + "; ".join(failures[:5]))
        return result
    tiling = build_plabic_tiling(dk)
    if "diagonals" in doc:
        return triangulate_with_diagonals(tiling, [(order[i], order[j]) for i, j in doc["diagonals"]])
    return tiling


def edge_criterion(s: int, t: int, d: SeparatedCollection) -> bool:
    """Both sets on one level, differing in one element, with meet and join in ``d``."""
    if sep.size(s) != sep.size(t) or sep.size(s ^ t) != 2:
        return False
    return (s & t) in d.sets and (s | t) in d.sets


def _triangulate_polygon(polygon: Sequence[int], chords: set) -> list[tuple[int, int, int]]:
    """Triangles of a convex polygon triangulated by ``chords`` (3-cliques of sides plus chords)."""
    r = len(polygon)
    adjacent = {edge(polygon[j], polygon[(j + 1) % r]) for j in range(r)} | chords
    return [
        (a, b, c)
        for a, b, c in combinations(polygon, 3)
        if edge(a, b) in adjacent and edge(b, c) in adjacent and edge(a, c) in adjacent
    ]


def triangulate_with_diagonals(tiling: PlabicTiling, diagonals: Iterable[tuple[int, int]]) -> TriangulatedPlabicTiling:
    """Triangulate every face of ``tiling`` with explicitly chosen diagonals."""
    n, k = tiling.n, tiling.level
    diagonals = {edge(s, t) for s, t in diagonals}
    triangles = []
    consumed = set()
    for face in tiling.faces:
        members = set(face.vertices)
        chords = {e for e in diagonals if e[0] in members and e[1] in members} - tiling.edges
        consumed |= chords
        tris = _triangulate_polygon(face.vertices, chords)
        if len(tris) != len(face.vertices) - 2:
            raise ValueError(
                f"{face.color} face {[sep.fmt(s) for s in face.vertices]} is not triangulated by "
                f"{[(sep.fmt(a), sep.fmt(b)) for a, b in sorted(chords)]}"
            )
        triangles += [make_triangle(face.color, t) for t in tris]
    stray = diagonals - consumed - tiling.edges
    if stray:
        a, b = sorted(stray)[0]
        raise ValueError(f"diagonal {sep.fmt(a)}-{sep.fmt(b)} lies in no face")
    result = TriangulatedPlabicTiling(n, k, tiling.vertices, frozenset(triangles))
    failures = triangulation_failures(result, check_vertices=False)
    if failures:
        raise ValueError("; ".join(failures[:5]))
    return result


def triangulate_level(d: SeparatedCollection, k: int, check: bool = True) -> TriangulatedPlabicTiling:
    """The triangulation of level ``k`` cut out by the edge criterion on a maximal collection ``d``."""
    n = d.n
    if not 0 <= k <= n:
        raise ValueError(f"level {k} outside [0, {n}]")
    dk = [s for s in d.sets if sep.size(s) == k]
    if k in (0, n):
        if len(dk) != 1:
            raise ValueError(f"level {k} must consist of a single set")
        return TriangulatedPlabicTiling(n, k, frozenset(dk), frozenset())
    tiling = build_plabic_tiling(SeparatedCollection(n, frozenset(dk)), check=check)
    criterion_edges = set()
    for s, t in combinations(sorted(dk), 2):
        if edge_criterion(s, t, d):
            criterion_edges.add(edge(s, t))
    missing = tiling.edges - criterion_edges
    if missing:
        a, b = sorted(missing)[0]
        raise ValueError(f"tiling edge {sep.fmt(a)}-{sep.fmt(b)} fails the edge criterion; input is not maximal")
    return triangulate_with_diagonals(tiling, criterion_edges - tiling.edges)


def _polygon_triangulations(polygon: Sequence[int]) -> Iterator[list[tuple[int, int]]]:
    """All triangulations of a convex polygon as lists of diagonals."""
    r = len(polygon)
    if r <= 3:
        yield []
        return
    # the side (p0, p_{r-1}) lies in exactly one triangle (p0, p_j, p_{r-1})
    first, last = polygon[0], polygon[-1]
    for j in range(1, r - 1):
        here = []
        if j > 1:
            here.append(edge(first, polygon[j]))
        if j < r - 2:
            here.append(edge(polygon[j], last))
        for left in _polygon_triangulations(polygon[: j + 1]):
            for right in _polygon_triangulations(polygon[j:]):
                yield here + left + right


def all_triangulations(tiling: PlabicTiling) -> Iterator[TriangulatedPlabicTiling]:
    """Every triangulated plabic tiling on top of ``tiling`` (product over faces)."""
    if tiling.level in (0, tiling.n):
        yield TriangulatedPlabicTiling(tiling.n, tiling.level, tiling.vertices, frozenset())
        return
    per_face = [list(_polygon_triangulations(f.vertices)) for f in tiling.faces]
    for choice in product(*per_face):
        diagonals = [e for chords in choice for e in chords]
        yield triangulate_with_diagonals(tiling, diagonals)


def triangulation_failures(t: TriangulatedPlabicTiling, check_vertices: bool = True) -> list[str]:
    """Everything that keeps ``t`` from being a triangulated plabic tiling (empty list if valid)."""
    n, k = t.n, t.level
    failures = []
    if any(sep.size(s) != k for s in t.vertices):
        failures.append(f"vertex of wrong size on level {k}")
        return failures
    if k in (0, n):
        if len(t.vertices) != 1 or t.triangles:
            failures.append(f"degenerate level {k} must be a single vertex without triangles")
        return failures
    coll = SeparatedCollection(n, t.vertices, "chord")
    if check_vertices:
        if len(t.vertices) != expected_level_size(n, k):
            failures.append(f"{len(t.vertices)} vertices on level {k}, expected {expected_level_size(n, k)}")
        bad = is_pairwise_separated(coll)
        if bad is not None:
            failures.append(f"vertices {sep.fmt(bad[0])}, {sep.fmt(bad[1])} are not chord separated")
        elif addable_sets(coll, level=k):
            failures.append(f"level-{k} vertex set is not maximal")
    for tri in t.triangles:
        a, b, c = tri.labels
        if not {a, b, c} <= t.vertices:
            failures.append(f"triangle {[sep.fmt(s) for s in tri.labels]} uses a foreign vertex")
        if tri.color == WHITE:
            common = a & b & c
            ok = sep.size(common) == k - 1
        else:
            common = a | b | c
            ok = sep.size(common) == k + 1
        if not ok:
            failures.append(f"{tri.color} triangle {[sep.fmt(s) for s in tri.labels]} is not inside a {tri.color} clique")
    if failures:
        return failures
    polygons = [ccw(tri.labels) for tri in sorted(t.triangles)]
    return subdivision_failures(n, k, polygons, t.vertices)


def up_sets(t: TriangulatedPlabicTiling) -> SeparatedCollection:
    return SeparatedCollection(t.n, frozenset(s | u for s, u in t.edges), "chord")


def down_sets(t: TriangulatedPlabicTiling) -> SeparatedCollection:
    return SeparatedCollection(t.n, frozenset(s & u for s, u in t.edges), "chord")


def complement_tiling(t: TriangulatedPlabicTiling) -> TriangulatedPlabicTiling:
    """Relabel by complements: level ``k`` becomes ``n - k`` and colors swap."""
    n = t.n
    swap = {WHITE: BLACK, BLACK: WHITE}
    tris = [make_triangle(swap[tri.color], (sep.complement(s, n) for s in tri.labels)) for tri in t.triangles]
    return TriangulatedPlabicTiling(n, n - t.level, frozenset(sep.complement(s, n) for s in t.vertices), frozenset(tris))


@dataclass(frozen=True)
class ModifiedTilingCounts:
    level: int
    vertices: int
    white: int  # w, number of white triangles
    black: int  # b, number of UP sets
    edges: int  # edges of the modified tiling, built explicitly
    black_faces: int  # black faces of the modified tiling, built explicitly
    euler_ok: bool

    @property
    def euler_terms(self) -> tuple[int, int, int]:
        """``(V, E, F)`` with ``E = 3w + n`` and ``F = w + b + 1``."""
        n_bdry = self.edges - 3 * self.white
        return self.vertices, 3 * self.white + n_bdry, self.white + self.black + 1


def modified_tiling_counts(t: TriangulatedPlabicTiling) -> ModifiedTilingCounts:
    """Counts for the modified tiling: white/white edges become black 2-gons, black/black edges vanish.

    ``euler_ok`` checks ``i(n-i)+1 - (3w+n) + (w+b+1) == 2`` with ``b = |UP|``;
    ``edges`` and ``black_faces`` come from building the modified tiling
    directly and should agree with ``3w + n`` and ``b``.
    """
    n, i = t.n, t.level
    if not 0 < i < n:
        raise ValueError("modified tiling counts need a level strictly between 0 and n")
    sides = defaultdict(list)
    for tri in t.triangles:
        a, b, c = tri.labels
        for e in (edge(a, b), edge(b, c), edge(a, c)):
            sides[e].append(tri)
    edges = 0
    black_faces = 0
    # union-find over black triangles glued along black/black edges
    parent = {tri: tri for tri in t.triangles if tri.color == BLACK}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e, tris in sides.items():
        colors = sorted(tri.color for tri in tris)
        if colors == [WHITE, WHITE]:
            edges += 2
            black_faces += 1
        elif colors == [BLACK, WHITE]:
            edges += 1
        elif colors == [BLACK, BLACK]:
            parent[find(tris[0])] = find(tris[1])
        elif colors == [WHITE]:
            edges += 2
            black_faces += 1
        else:
            edges += 1
    black_faces += len({find(x) for x in parent})
    w = sum(1 for tri in t.triangles if tri.color == WHITE)
    b = len(up_sets(t))
    vertices = len(t.vertices)
    euler_ok = i * (n - i) + 1 - (3 * w + n) + (w + b + 1) == 2 and vertices == i * (n - i) + 1
    return ModifiedTilingCounts(i, vertices, w, b, edges, black_faces, euler_ok)


def is_compatible(ti: TriangulatedPlabicTiling, tj: TriangulatedPlabicTiling) -> bool:
    """Edges below lift to vertices above (by union) and edges above drop to vertices below (by intersection)."""
    if ti.n != tj.n:
        raise ValueError("tilings live on different ground sets")
    if tj.level != ti.level + 1:
        raise ValueError(f"levels {ti.level} and {tj.level} are not consecutive")
    return all(s | u in tj.vertices for s, u in ti.edges) and all(s & u in ti.vertices for s, u in tj.edges)


def union_is_chord_separated(ti: TriangulatedPlabicTiling, tj: TriangulatedPlabicTiling) -> bool:
    coll = SeparatedCollection(ti.n, ti.vertices | tj.vertices, "chord")
    return is_pairwise_separated(coll) is None
