"""Acceptance checks.  Each prints one PASS/FAIL line; also runnable as ``python tests/test_acceptance.py``."""

from __future__ import annotations

import sys
import time
from collections import defaultdict
from functools import lru_cache
from itertools import product
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from chordsep import separation as sep
from chordsep.collection import SeparatedCollection, complete_to_maximal, level_sizes, level_slice
from chordsep.oracles import cross_check_bijection, enumerate_maximal_collections, enumerate_tilings
from chordsep.plabic_graph import (
    diagonal_edge,
    dualize,
    face_labels,
    face_with_label,
    flip,
    is_reduced,
    sigma,
    signature,
    square_move,
    strand_permutation,
)
from chordsep.plabic_tiling import BLACK, WHITE, down_sets, modified_tiling_counts, triangulate_level, up_sets
from chordsep.zonotope import (
    assemble,
    family_of,
    from_collection,
    mutable_quadruples,
    mutate,
    section,
    sections,
    validate,
    vert,
    ziegler_map,
    ziegler_status,
)

EXAMPLE_LEVEL3 = "123 126 135 136 156 234 235 345 356 456".split()
EXAMPLE_EXTRA = "36 35 1356 2356".split()


@lru_cache(maxsize=None)
def enumerated(n):
    return enumerate_maximal_collections(n), enumerate_tilings(n)


@lru_cache(maxsize=None)
def random_n6(count=100):
    """Distinct tilings of Z(6,3) from random greedy completions."""
    out = {}
    seed = 0
    while len(out) < count:
        z = from_collection(complete_to_maximal(SeparatedCollection(6), seed=seed))
        out.setdefault(z.tiles, z)
        seed += 1
    return tuple(out.values())


def sample_tilings():
    return [z for n in range(1, 6) for z in enumerated(n)[1].tilings()] + list(random_n6())


def c1_purity():
    start = time.perf_counter()
    for n, total in ((4, 15), (5, 26), (6, 42)):
        want = tuple(k * (n - k) + 1 for k in range(n + 1))
        for seed in range(1000):
            d = complete_to_maximal(SeparatedCollection(n), seed=seed)
            if len(d) != total or level_sizes(d) != want:
                return False, f"n={n} seed={seed}: size {len(d)}"
    took = time.perf_counter() - start
    return took < 10, f"3000 completions in {took:.1f}s"


def c2_bijection():
    start = time.perf_counter()
    enumerated.cache_clear()
    for n in range(1, 6):
        colls, tilings = enumerated(n)
        rep = cross_check_bijection(n, colls, tilings)
        if not rep.ok:
            return False, f"n={n}: {rep.problems[0]}"
        for z in tilings.tilings():
            if from_collection(vert(z)) != z:
                return False, f"n={n}: from_collection(vert(Z)) != Z"
        for d in colls.collections():
            if vert(from_collection(d)) != d:
                return False, f"n={n}: vert(from_collection(D)) != D"
    counts = [enumerated(n)[0].count for n in range(1, 6)]
    took = time.perf_counter() - start
    return counts[3] == 2 and took < 60, f"counts n=1..5 {counts} in {took:.1f}s"


def c3_round_trip():
    tilings = sample_tilings()
    for z in tilings:
        f = family_of(z)
        back = assemble(f)
        if back != z or family_of(back).tilings != f.tilings:
            return False, f"round trip failed at n={z.n}"
    return True, f"{len(tilings)} tilings ({len(random_n6())} distinct random at n=6)"


def c4_lifting():
    checked = 0
    for z in sample_tilings():
        n = z.n
        for i in range(1, n):
            t = section(z, i)
            m = modified_tiling_counts(t)
            white = sum(1 for tri in t.triangles if tri.color == WHITE)
            if (
                len(up_sets(t)) != (i + 1) * (n - i - 1) + 1
                or len(down_sets(t)) != (i - 1) * (n - i + 1) + 1
                or white != i * (n - i - 1)
                or not m.euler_ok
            ):
                return False, f"n={n} level {i}"
            checked += 1
    d = complete_to_maximal(SeparatedCollection(6, frozenset(sep.parse_label(x) for x in EXAMPLE_LEVEL3 + EXAMPLE_EXTRA)))
    terms = modified_tiling_counts(triangulate_level(d, 3)).euler_terms
    return terms == (10, 24, 16), f"{checked} levels; worked instance {terms[0]} - {terms[1]} + {terms[2]} = 2"


def c5_duality():
    checked = 0
    for z in sample_tilings():
        d = vert(z)
        n = z.n
        for k in range(1, n):
            g = dualize(section(z, k))
            if not is_reduced(g).is_reduced:
                return False, f"n={n} k={k}: dual not reduced"
            if strand_permutation(g) != sigma(k, n):
                return False, f"n={n} k={k}: permutation {strand_permutation(g)}"
            if face_labels(g).sets != level_slice(d, k).sets:
                return False, f"n={n} k={k}: face labels differ from the level slice"
            checked += 1
    d = complete_to_maximal(SeparatedCollection(6, frozenset(sep.parse_label(x) for x in EXAMPLE_LEVEL3 + EXAMPLE_EXTRA)))
    labels = {sep.fmt(s) for s in face_labels(dualize(triangulate_level(d, 3))).sets}
    return labels == set(EXAMPLE_LEVEL3), f"{checked} sections; example labels reproduced: {labels == set(EXAMPLE_LEVEL3)}"


def _lost_edge(before, after):
    gone = before.edges - after.edges
    return next(iter(gone)) if len(gone) == 1 else None


def c6_moves():
    checked = 0
    for z in enumerated(5)[1].tilings():
        for S, Q in mutable_quadruples(z):
            w = mutate(z, S, Q)
            a, b, c, d = (1 << (x - 1) for x in sep.elements(Q))
            if vert(z).sets ^ vert(w).sets != {S | b | d, S | a | c} or mutate(w, S, Q) != z:
                return False, f"label swap or involution failed at S={sep.fmt(S)} Q={sep.fmt(Q)}"
            i = sep.size(S)
            old, new = sections(z), sections(w)
            for j in range(6):
                if j not in (i + 1, i + 2, i + 3) and old[j] != new[j]:
                    return False, f"level {j} changed"
            # white flip on level i+1
            e = _lost_edge(old[i + 1], new[i + 1])
            g = dualize(old[i + 1])
            if e is None or signature(flip(g, diagonal_edge(g, *e), WHITE)) != signature(dualize(new[i + 1])):
                return False, f"level {i + 1} is not one white move away"
            # square move on level i+2
            gone = vert(z).sets - vert(w).sets
            g = dualize(old[i + 2])
            if signature(square_move(g, face_with_label(g, next(iter(gone))))) != signature(dualize(new[i + 2])):
                return False, f"level {i + 2} is not one square move away"
            # black flip on level i+3
            e = _lost_edge(old[i + 3], new[i + 3])
            g = dualize(old[i + 3])
            if e is None or signature(flip(g, diagonal_edge(g, *e), BLACK)) != signature(dualize(new[i + 3])):
                return False, f"level {i + 3} is not one black move away"
            checked += 1
    return checked > 0, f"{checked} mutations of n=5 tilings"


def c7_ziegler():
    for z in sample_tilings() + enumerated(5)[1].tilings():
        if "conflict" in ziegler_status(z).values():
            return False, f"conflicting witnesses at n={z.n}"
    result = enumerated(5)[1]
    tilings = result.tilings()
    sizes = [len(ziegler_map(z)) for z in tilings]
    for z in tilings:
        for S, Q in mutable_quadruples(z):
            if abs(len(ziegler_map(mutate(z, S, Q))) - len(ziegler_map(z))) != 1:
                return False, "a mutation changed |phi| by more than 1"
    up, down = defaultdict(int), defaultdict(int)
    for x, y in result.flips:
        lo, hi = (x, y) if sizes[x] < sizes[y] else (y, x)
        up[lo] += 1
        down[hi] += 1
    sources = [j for j in range(result.count) if not down[j]]
    sinks = [j for j in range(result.count) if not up[j]]
    ok = len(sources) == 1 and len(sinks) == 1 and sizes[sources[0]] == 0
    return ok, f"{len(sources)} source, {len(sinks)} sink, |phi| from {min(sizes)} to {max(sizes)}"


def c8_geometry():
    # Z(n,3) is flat for n < 3, so only full-dimensional zonotopes are sampled
    tilings = [z for z in sample_tilings() if z.n >= 3]
    for z in tilings:
        rep = validate(z, samples=10_000, seed=z.n)
        if not rep.volume_ok or not rep.points_ok or not rep.is_valid:
            return False, f"n={z.n}: {rep.failures[:1]}"
    return True, f"{len(tilings)} tilings, 10^4 exact points each"


def c9_predicates():
    start = time.perf_counter()
    for n in range(1, 9):
        size = [bin(s).count("1") for s in range(1 << n)]
        comp = [sep.complement(s, n) for s in range(1 << n)]
        rot = [[sep.rotate(s, n, r) for s in range(1 << n)] for r in range(n)]
        chord = [[sep.chord_separated(s, t, n) for t in range(1 << n)] for s in range(1 << n)]
        for s, t in product(range(1 << n), repeat=2):
            c = chord[s][t]
            if c != (sep.surrounds(s, t, n) or sep.surrounds(t, s, n)):
                return False, f"n={n}: chord != surrounds-or-surrounds at {sep.fmt(s)}, {sep.fmt(t)}"
            weak = sep.weakly_separated(s, t, n)
            if weak and not c:
                return False, f"n={n}: weak but not chord"
            if size[s] == size[t] and weak != c:
                return False, f"n={n}: equal size, weak != chord"
            if chord[comp[s]][comp[t]] != c:
                return False, f"n={n}: complement changes separation"
            if any(chord[r[s]][r[t]] != c for r in rot):
                return False, f"n={n}: rotation changes separation"
    took = time.perf_counter() - start
    return took < 30, f"n <= 8 exhaustive in {took:.1f}s"


CRITERIA = [
    (1, "purity of random completions", c1_purity),
    (2, "exhaustive bijection n <= 5", c2_bijection),
    (3, "section/assembly round trip", c3_round_trip),
    (4, "lifting sizes and Euler identity", c4_lifting),
    (5, "plabic duality", c5_duality),
    (6, "mutation and plabic moves", c6_moves),
    (7, "Ziegler map", c7_ziegler),
    (8, "geometric validation", c8_geometry),
    (9, "predicate suite", c9_predicates),
]


def run_one(number, name, check):
    try:
        ok, detail = check()
    except Exception as exc:  # a crash counts as a failure with its message
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return f"criterion {number} ({name}): {'PASS' if ok else 'FAIL'} - {detail}", ok


@pytest.mark.parametrize("number, name, check", CRITERIA, ids=[f"criterion{c[0]}" for c in CRITERIA])
def test_criterion(number, name, check, acceptance_log):
    line, ok = run_one(number, name, check)
    print(line)
    acceptance_log.append(line)
    assert ok, line


if __name__ == "__main__":
    failed = 0
    for number, name, check in CRITERIA:
        line, ok = run_one(number, name, check)
        print(line, flush=True)
        failed += not ok
    sys.exit(1 if failed else 0)
