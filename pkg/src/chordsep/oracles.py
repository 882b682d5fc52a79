"""Brute-force enumerations used to cross-check the bijection between tilings and collections."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from . import separation as sep
from .collection import SeparatedCollection, complete_to_maximal
from .zonotope import CyclicConfiguration, ZonotopalTiling, from_collection, mutable_quadruples, mutate, vert

MAX_COLLECTION_N = 6
MAX_TILING_N = 6


@dataclass(frozen=True)
class EnumerationResult:
    n: int
    items: tuple  # canonical forms, sorted
    method: str
    flips: tuple = ()  # index pairs into items (mutation closure only)

    @property
    def count(self) -> int:
        return len(self.items)

    def collections(self) -> list[SeparatedCollection]:
        if self.method != "exhaustive-search":
            raise ValueError("items are tilings, not collections")
        return [SeparatedCollection(self.n, frozenset(key)) for key in self.items]

    def tilings(self) -> list[ZonotopalTiling]:
        if self.method != "mutation-closure":
            raise ValueError("items are collections, not tilings")
        config = CyclicConfiguration(self.n)
        return [ZonotopalTiling(config, key) for key in self.items]


def _collection_key(sets) -> tuple:
    return tuple(sorted(sets, key=sep.sort_key))


def enumerate_maximal_collections(n: int) -> EnumerationResult:
    """Every chord separated collection in 2^[n] that is maximal by inclusion.

    Backtracking over the sets that conflict with something, in (size, mask)
    order.  A set that is left out while still compatible with everything
    chosen must later be killed by a chosen set; branches where no remaining
    candidate can do that are cut.
    """
    if not 1 <= n <= MAX_COLLECTION_N:
        raise ValueError(f"exhaustive enumeration is limited to 1 <= n <= {MAX_COLLECTION_N}")
    table = sep.compatibility_table(n, "chord")
    everything = sep.full(1 << n)
    forced = [x for x in range(1 << n) if table[x] == everything]
    free = sorted((x for x in range(1 << n) if table[x] != everything), key=sep.sort_key)
    # later[j]: bitset of the candidates at positions >= j
    later = [0] * (len(free) + 1)
    for j in range(len(free) - 1, -1, -1):
        later[j] = later[j + 1] | (1 << free[j])
    found = []

    def search(j: int, chosen: list, allowed: int, left_out: list):
        alive = []
        for x in left_out:
            if allowed >> x & 1:
                if not allowed & later[j] & ~table[x]:
                    return
                alive.append(x)
        if j == len(free):
            found.append(_collection_key(forced + chosen))
            return
        x = free[j]
        if not allowed >> x & 1:
            search(j + 1, chosen, allowed, alive)
            return
        chosen.append(x)
        search(j + 1, chosen, allowed & table[x], alive)
        chosen.pop()
        search(j + 1, chosen, allowed, alive + [x])

    search(0, [], everything, [])
    return EnumerationResult(n, tuple(sorted(found)), "exhaustive-search")


def _neighbours(args) -> list[tuple]:
    n, key = args
    z = ZonotopalTiling(CyclicConfiguration(n), key)
    return [mutate(z, S, Q).tiles for S, Q in mutable_quadruples(z)]


def enumerate_tilings(n: int, jobs: Optional[int] = None) -> EnumerationResult:
    """Breadth-first mutation closure from the tiling of the greedy (size, mask) completion of the empty collection.

    With ``jobs > 1`` each frontier is expanded by a process pool; the
    parent process alone inserts into the seen set, so results do not depend
    on scheduling.
    """
    if not 1 <= n <= MAX_TILING_N:
        raise ValueError(f"mutation closure is limited to 1 <= n <= {MAX_TILING_N}")
    start = from_collection(complete_to_maximal(SeparatedCollection(n))).tiles
    index = {start: 0}
    order = [start]
    flips = set()
    frontier = [start]
    pool = ProcessPoolExecutor(max_workers=jobs) if jobs and jobs > 1 else None
    try:
        while frontier:
            if pool is not None:
                results = list(pool.map(_neighbours, [(n, key) for key in frontier], chunksize=16))
            else:
                results = [_neighbours((n, key)) for key in frontier]
            nxt = []
            for key, nbrs in zip(frontier, results):
                for other in nbrs:
                    if other not in index:
                        index[other] = len(order)
                        order.append(other)
                        nxt.append(other)
                    a, b = index[key], index[other]
                    flips.add((min(a, b), max(a, b)))
            frontier = nxt
    finally:
        if pool is not None:
            pool.shutdown()
    items = tuple(sorted(order))
    renumber = {key: j for j, key in enumerate(items)}
    edges = tuple(sorted(tuple(sorted((renumber[order[a]], renumber[order[b]]))) for a, b in flips))
    return EnumerationResult(n, items, "mutation-closure", edges)


@dataclass
class BijectionReport:
    n: int
    collections: int
    tilings: int
    problems: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems

    def __bool__(self) -> bool:
        return self.ok


def cross_check_bijection(
    n: int,
    collections: Optional[EnumerationResult] = None,
    tilings: Optional[EnumerationResult] = None,
) -> BijectionReport:
    """``vert`` maps the enumerated tilings one-to-one onto the enumerated collections; ``from_collection`` inverts it."""
    collections = collections or enumerate_maximal_collections(n)
    tilings = tilings or enumerate_tilings(n)
    report = BijectionReport(n, collections.count, tilings.count)
    if collections.count != tilings.count:
        report.problems.append(f"{collections.count} collections but {tilings.count} tilings")
    coll_keys = set(collections.items)
    tile_keys = set(tilings.items)
    images = {}
    for z in tilings.tilings():
        key = _collection_key(vert(z).sets)
        if key in images:
            report.problems.append(f"two tilings share the vertex set {[sep.fmt(s) for s in key]}")
        images[key] = z.tiles
        if key not in coll_keys:
            report.problems.append(f"vertex set of tiling {[str(t) for t in z.tiles]} is not an enumerated collection")
    for d in collections.collections():
        z = from_collection(d)
        if z.tiles not in tile_keys:
            report.problems.append(f"collection {d.labels()} assembles to a tiling outside the closure")
        elif vert(z).sets != d.sets:
            report.problems.append(f"vert(from_collection(D)) != D for {d.labels()}")
    return report


def default_jobs() -> int:
    return max(1, (os.cpu_count() or 1) - 1)
