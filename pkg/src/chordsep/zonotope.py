"""Fine zonotopal tilings of Z(n, 3) stored as tile sets, with sections, assembly, mutations and validation.

A tile ``(S, {a, b, c})`` is the parallelepiped ``v_S + [0, v_a] + [0, v_b] + [0, v_c]``.
Geometry is derived on demand from the cyclic configuration.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable, NamedTuple, Optional, Sequence

import numpy as np

from . import separation as sep
from .collection import SeparatedCollection, is_pairwise_separated
from .geometry import det3, point3, vector
from .plabic_tiling import (
    BLACK,
    WHITE,
    TriangulatedPlabicTiling,
    is_compatible,
    make_triangle,
    plabic_tiling_from_json,
    triangulate_level,
    triangulation_failures,
)


@dataclass(frozen=True)
class CyclicConfiguration:
    n: int
    x: tuple = ()

    def __post_init__(self):
        sep.check_ground(self.n)
        x = tuple(self.x) if self.x else tuple(range(1, self.n + 1))
        if len(x) != self.n:
            raise ValueError(f"need {self.n} parameters, got {len(x)}")
        if any(not isinstance(t, int) for t in x):
            raise ValueError("parameters must be integers")
        if x[0] <= 0 or any(a >= b for a, b in zip(x, x[1:])):
            raise ValueError(f"parameters must be positive and strictly increasing, got {x}")
        object.__setattr__(self, "x", x)

    def vector(self, i: int) -> tuple[int, int, int]:
        return vector(i, self.x)

    def point(self, mask: int) -> tuple[int, int, int]:
        return point3(mask, self.x)


@dataclass(frozen=True)
class SignedSubset:
    plus: int
    minus: int

    def __post_init__(self):
        if self.plus & self.minus:
            raise ValueError("plus and minus parts must be disjoint")

    def support(self) -> int:
        return self.plus | self.minus

    def zero(self, n: int) -> int:
        return sep.complement(self.support(), n)


class Tile(NamedTuple):
    S: int
    free: int  # mask of the three free elements

    @classmethod
    def make(cls, S: int, free: Iterable[int] | int) -> "Tile":
        free = free if isinstance(free, int) else sep.to_mask(free)
        if sep.size(free) != 3 or S & free:
            raise ValueError(f"tile needs three free elements outside S, got S={sep.fmt(S)}, free={sep.fmt(free)}")
        return cls(S, free)

    def triple(self) -> tuple[int, int, int]:
        a, b, c = sep.elements(self.free)
        return a, b, c

    def labels(self) -> list[int]:
        a, b, c = (1 << (i - 1) for i in self.triple())
        S = self.S
        return [S, S | a, S | b, S | c, S | a | b, S | a | c, S | b | c, S | a | b | c]

    def signed(self, n: int) -> SignedSubset:
        return SignedSubset(self.S, sep.complement(self.S | self.free, n))

    def white_triangle(self) -> tuple[int, int, int]:
        a, b, c = (1 << (i - 1) for i in self.triple())
        return self.S | a, self.S | b, self.S | c

    def black_triangle(self) -> tuple[int, int, int]:
        a, b, c = (1 << (i - 1) for i in self.triple())
        return self.S | a | b, self.S | b | c, self.S | a | c

    def __str__(self) -> str:
        return f"({sep.fmt(self.S)}; {sep.fmt(self.free)})"


@dataclass(frozen=True)
class ZonotopalTiling:
    config: CyclicConfiguration
    tiles: tuple  # sorted; duplicates are kept so broken inputs can be validated

    def __post_init__(self):
        n = self.config.n
        tiles = []
        for t in self.tiles:
            t = t if isinstance(t, Tile) else Tile.make(*t)
            if (t.S | t.free) >> n:
                raise ValueError(f"tile {t} is not inside [{n}]")
            tiles.append(t)
        object.__setattr__(self, "tiles", tuple(sorted(tiles)))

    @property
    def n(self) -> int:
        return self.config.n

    def key(self) -> tuple:
        return self.tiles

    def tile_set(self) -> frozenset:
        return frozenset(self.tiles)

    def to_json(self) -> dict:
        return {
            "type": "zonotopal_tiling",
            "n": self.n,
            "x": list(self.config.x),
            "tiles": [{"S": sep.elements(t.S), "free": sep.elements(t.free)} for t in self.tiles],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "ZonotopalTiling":
        n = doc["n"]
        config = CyclicConfiguration(n, tuple(doc.get("x") or ()))
        tiles = [Tile.make(sep.to_mask(t["S"], n), sep.to_mask(t["free"], n)) for t in doc["tiles"]]
        return cls(config, tuple(tiles))


def vert(z: ZonotopalTiling) -> SeparatedCollection:
    labels = set()
    for t in z.tiles:
        labels.update(t.labels())
    if z.n < 3:
        # no tiles fit; the zonotope is a segment or a parallelogram with every subset as a vertex
        labels = set(range(1 << z.n))
    return SeparatedCollection(z.n, frozenset(labels), "chord")


def section(z: ZonotopalTiling, i: int) -> TriangulatedPlabicTiling:
    """Horizontal section at height ``i``: white triangles from tiles with ``|S| = i-1``, black from ``|S| = i-2``."""
    n = z.n
    if not 0 <= i <= n:
        raise ValueError(f"section {i} outside [0, {n}]")
    vertices = [s for s in vert(z).sets if sep.size(s) == i]
    triangles = set()
    for t in z.tiles:
        h = sep.size(t.S)
        if h == i - 1:
            triangles.add(make_triangle(WHITE, t.white_triangle()))
        elif h == i - 2:
            triangles.add(make_triangle(BLACK, t.black_triangle()))
    return TriangulatedPlabicTiling(n, i, frozenset(vertices), frozenset(triangles))


def sections(z: ZonotopalTiling) -> list[TriangulatedPlabicTiling]:
    return [section(z, i) for i in range(z.n + 1)]


@dataclass(frozen=True)
class AdmissibleFamily:
    n: int
    tilings: tuple

    def __post_init__(self):
        object.__setattr__(self, "tilings", tuple(self.tilings))
        if len(self.tilings) != self.n + 1:
            raise ValueError(f"a family needs {self.n + 1} levels, got {len(self.tilings)}")
        for i, t in enumerate(self.tilings):
            if t.n != self.n or t.level != i:
                raise ValueError(f"member {i} has n={t.n}, level={t.level}")

    def first_incompatible(self) -> Optional[int]:
        """Smallest ``i`` with levels ``i, i+1`` not compatible, or ``None``."""
        for i in range(self.n):
            if not is_compatible(self.tilings[i], self.tilings[i + 1]):
                return i
        return None

    def failures(self) -> list[str]:
        out = []
        for t in self.tilings:
            out += [f"level {t.level}: {msg}" for msg in triangulation_failures(t)]
        i = self.first_incompatible()
        if i is not None:
            out.append(f"levels {i} and {i + 1} are not compatible")
        return out

    def to_json(self) -> dict:
        return {"type": "admissible_family", "n": self.n, "levels": [t.to_json() for t in self.tilings]}

    @classmethod
    def from_json(cls, doc: dict) -> "AdmissibleFamily":
        levels = [plabic_tiling_from_json(d) for d in doc["levels"]]
        return cls(doc["n"], tuple(levels))


def family_of(z: ZonotopalTiling) -> AdmissibleFamily:
    return AdmissibleFamily(z.n, tuple(sections(z)))


def assemble(f: AdmissibleFamily, config: Optional[CyclicConfiguration] = None, check: bool = True) -> ZonotopalTiling:
    """One tile ``(K, L - K)`` for every white triangle ``{Ka, Kb, Kc}`` on every level."""
    if check:
        i = f.first_incompatible()
        if i is not None:
            raise ValueError(f"family is not admissible: levels {i} and {i + 1} are not compatible")
        bad = [msg for t in f.tilings for msg in triangulation_failures(t)]
        if bad:
            raise ValueError("family member is not a triangulated plabic tiling: " + bad[0])
    tiles = []
    for t in f.tilings:
        for tri in t.triangles:
            if tri.color == WHITE:
                a, b, c = tri.labels
                S = a & b & c
                tiles.append(Tile.make(S, (a | b | c) & ~S))
    return ZonotopalTiling(config or CyclicConfiguration(f.n), tuple(tiles))


def from_collection(d: SeparatedCollection, config: Optional[CyclicConfiguration] = None) -> ZonotopalTiling:
    levels = tuple(triangulate_level(d, i) for i in range(d.n + 1))
    return assemble(AdmissibleFamily(d.n, levels), config, check=False)


# geometry -----------------------------------------------------------------


def tile_volume(config: CyclicConfiguration, tile: Tile) -> int:
    a, b, c = tile.triple()
    return abs(det3(config.vector(a), config.vector(b), config.vector(c)))


def zonotope_volume(config: CyclicConfiguration) -> int:
    """Sum of ``|det(v_a, v_b, v_c)|`` over all triples; equals the volume of Z(n, 3)."""
    return sum(
        abs(det3(config.vector(a), config.vector(b), config.vector(c)))
        for a, b, c in combinations(range(1, config.n + 1), 3)
    )


SAMPLE_DENOMINATOR = 1_000_003


def _det_rows(u, v, w):
    """Row-wise 3x3 determinants of stacked int64 vectors (any of them may be a single vector)."""
    return (
        u[..., 0] * (v[..., 1] * w[..., 2] - v[..., 2] * w[..., 1])
        - u[..., 1] * (v[..., 0] * w[..., 2] - v[..., 2] * w[..., 0])
        + u[..., 2] * (v[..., 0] * w[..., 1] - v[..., 1] * w[..., 0])
    )


def _membership(z: ZonotopalTiling, numer: np.ndarray, q: int):
    """For points ``numer / q``: count of tile interiors containing each, and a flag for boundary hits."""
    counts = np.zeros(len(numer), dtype=np.int64)
    boundary = np.zeros(len(numer), dtype=bool)
    for t in z.tiles:
        a, b, c = (np.array(z.config.vector(i), dtype=np.int64) for i in t.triple())
        base = np.array(z.config.point(t.S), dtype=np.int64)
        r = numer - q * base
        d = int(det3(tuple(a), tuple(b), tuple(c)))
        sign = 1 if d > 0 else -1
        top = q * abs(d)
        coords = [sign * _det_rows(r, b, c), sign * _det_rows(a, r, c), sign * _det_rows(a, b, r)]
        inside = np.ones(len(numer), dtype=bool)
        touch = np.zeros(len(numer), dtype=bool)
        for x in coords:
            inside &= (x > 0) & (x < top)
            touch |= (x == 0) | (x == top)
        closed = np.ones(len(numer), dtype=bool)
        for x in coords:
            closed &= (x >= 0) & (x <= top)
        counts += inside
        boundary |= closed & touch
    return counts, boundary


def sample_points(z: ZonotopalTiling, count: int, rng: np.random.Generator, q: int = SAMPLE_DENOMINATOR) -> np.ndarray:
    """Numerators of rational points ``P / q`` in Z(n, 3): half uniform in the coefficients, half inside random tiles."""
    n = z.n
    vs = np.array([z.config.vector(i) for i in range(1, n + 1)], dtype=np.int64)
    half = count // 2
    coeffs = rng.integers(1, q, size=(half, n), dtype=np.int64)
    spread = coeffs @ vs
    picks = rng.integers(0, len(z.tiles), size=count - half) if z.tiles else np.zeros(0, dtype=np.int64)
    local = []
    for j in picks:
        t = z.tiles[int(j)]
        r = rng.integers(1, q, size=3, dtype=np.int64)
        p = q * np.array(z.config.point(t.S), dtype=np.int64)
        for coef, i in zip(r, t.triple()):
            p = p + coef * vs[i - 1]
        local.append(p)
    local = np.array(local, dtype=np.int64).reshape(-1, 3)
    return np.vstack([spread, local])


@dataclass
class ValidationReport:
    n: int
    tile_count: int
    expected_tiles: int
    family_ok: Optional[bool] = None
    separated_ok: Optional[bool] = None
    volume: Optional[int] = None
    expected_volume: Optional[int] = None
    points_tested: int = 0
    points_bad: int = 0
    failures: list = field(default_factory=list)

    @property
    def volume_ok(self) -> bool:
        return self.volume is not None and self.volume == self.expected_volume

    @property
    def points_ok(self) -> bool:
        return self.points_tested > 0 and self.points_bad == 0

    @property
    def is_valid(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "tile_count": self.tile_count,
            "expected_tiles": self.expected_tiles,
            "family_ok": self.family_ok,
            "separated_ok": self.separated_ok,
            "volume": self.volume,
            "expected_volume": self.expected_volume,
            "points_tested": self.points_tested,
            "points_bad": self.points_bad,
            "failures": list(self.failures),
            "is_valid": self.is_valid,
        }


def validate(z: ZonotopalTiling, samples: int = 10_000, seed: int = 0, layered: bool = False) -> ValidationReport:
    """Combinatorial, volume and point-membership checks.

    With ``layered`` the later (costlier) stages are skipped once an earlier
    one fails; by default every stage runs so the report is complete.
    """
    n = z.n
    rep = ValidationReport(n, len(z.tiles), comb(n, 3))
    if len(z.tiles) != comb(n, 3):
        rep.failures.append(f"{len(z.tiles)} tiles, expected C({n},3) = {comb(n, 3)}")
    dup = [t for t, c in Counter(z.tiles).items() if c > 1]
    if dup:
        rep.failures.append(f"tile {dup[0]} occurs more than once")

    labels = vert(z)
    bad = is_pairwise_separated(labels)
    rep.separated_ok = bad is None
    if bad is not None:
        rep.failures.append(f"vertex labels {sep.fmt(bad[0])} and {sep.fmt(bad[1])} are not chord separated")
    fam = family_of(z)
    fam_fail = fam.failures()
    rep.family_ok = not fam_fail
    rep.failures += [f"sections: {msg}" for msg in fam_fail[:5]]
    if layered and rep.failures:
        return rep

    rep.volume = sum(tile_volume(z.config, t) for t in z.tiles)
    rep.expected_volume = zonotope_volume(z.config)
    if not rep.volume_ok:
        rep.failures.append(f"tile volumes sum to {rep.volume}, zonotope volume is {rep.expected_volume}")
    if layered and rep.failures:
        return rep

    if samples and n >= 3:
        rng = np.random.default_rng(seed)
        todo = samples
        bad_points = 0
        tested = 0
        for _ in range(50):
            if not todo:
                break
            pts = sample_points(z, todo, rng)
            counts, touch = _membership(z, pts, SAMPLE_DENOMINATOR)
            ok = ~touch
            tested += int(ok.sum())
            bad_points += int((counts[ok] != 1).sum())
            todo = int(touch.sum())
        rep.points_tested = tested
        rep.points_bad = bad_points
        if todo:
            rep.failures.append(f"{todo} sample points kept landing on tile boundaries")
        if bad_points:
            rep.failures.append(f"{bad_points} of {tested} sample points are not in exactly one tile")
    return rep


# mutations ----------------------------------------------------------------


def _bits(*elements: int) -> int:
    return sep.to_mask(elements)


def local_configurations(S: int, Q: Sequence[int]) -> tuple[frozenset, frozenset]:
    """The two fine tilings of ``v_S + Z(v_a, v_b, v_c, v_d)``: the one with vertex ``Sbd`` and the one with ``Sac``."""
    a, b, c, d = sorted(Q)
    with_bd = frozenset(
        [
            Tile(S, _bits(a, b, d)),
            Tile(S, _bits(b, c, d)),
            Tile(S | _bits(b), _bits(a, c, d)),
            Tile(S | _bits(d), _bits(a, b, c)),
        ]
    )
    with_ac = frozenset(
        [
            Tile(S, _bits(a, b, c)),
            Tile(S, _bits(a, c, d)),
            Tile(S | _bits(a), _bits(b, c, d)),
            Tile(S | _bits(c), _bits(a, b, d)),
        ]
    )
    return with_bd, with_ac


def mutable_quadruples(z: ZonotopalTiling) -> list[tuple[int, int]]:
    """All ``(S, Q)`` (masks) where one of the two local configurations sits in ``z``."""
    tiles = z.tile_set()
    found = set()
    for t in tiles:
        for d in range(1, z.n + 1):
            bit = 1 << (d - 1)
            if (t.S | t.free) & bit:
                continue
            Q = t.free | bit
            if (t.S, Q) in found:
                continue
            left, right = local_configurations(t.S, sep.elements(Q))
            if left <= tiles or right <= tiles:
                found.add((t.S, Q))
    return sorted(found)


def mutate(z: ZonotopalTiling, S: int, Q: Iterable[int] | int) -> ZonotopalTiling:
    """Swap the local configuration on ``v_S + Z(Q)``; ``Q`` may come in any order."""
    Q = sep.elements(Q) if isinstance(Q, int) else sorted(Q)
    if len(Q) != 4 or len(set(Q)) != 4 or S & sep.to_mask(Q):
        raise ValueError("mutation needs four distinct indices outside S")
    left, right = local_configurations(S, Q)
    tiles = z.tile_set()
    if left <= tiles:
        new = (tiles - left) | right
    elif right <= tiles:
        new = (tiles - right) | left
    else:
        raise ValueError(f"(S={sep.fmt(S)}, Q={''.join(map(str, Q))}) is not a mutable quadruple")
    return ZonotopalTiling(z.config, tuple(new))


def ziegler_status(z: ZonotopalTiling) -> dict:
    """Quadruple mask -> 'in' (only an ac-witness), 'out' (no ac-witness) or 'conflict' (ac- and bd-witnesses)."""
    labels = vert(z).sets
    status = {}
    for quad in combinations(range(1, z.n + 1), 4):
        a, b, c, d = quad
        ac, bd = _bits(a, c), _bits(b, d)
        has_ac = any(u & ac == ac and not u & bd for u in labels)
        has_bd = any(u & bd == bd and not u & ac for u in labels)
        status[sep.to_mask(quad)] = "conflict" if has_ac and has_bd else ("in" if has_ac else "out")
    return status


def ziegler_map(z: ZonotopalTiling) -> frozenset:
    status = ziegler_status(z)
    conflicts = [q for q, s in status.items() if s == "conflict"]
    if conflicts:
        raise ValueError(f"conflicting witnesses for quadruple {sep.fmt(conflicts[0])}; the tiling is invalid")
    return frozenset(q for q, s in status.items() if s == "in")
