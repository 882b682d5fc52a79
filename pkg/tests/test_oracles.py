from collections import defaultdict
from math import comb

import pytest

from brute import maximal_collections_by_cliques
from chordsep.collection import is_maximal_by_inclusion, purity_report
from chordsep.oracles import cross_check_bijection, enumerate_maximal_collections, enumerate_tilings
from chordsep.zonotope import vert, ziegler_map


@pytest.mark.parametrize("n", range(1, 7))
def test_search_matches_clique_oracle(n, enumerations):
    found = {frozenset(d.sets) for d in enumerations[n][0].collections()}
    assert found == maximal_collections_by_cliques(n)


def test_counts(enumerations):
    counts = [(enumerations[n][0].count, enumerations[n][1].count) for n in range(1, 7)]
    assert counts == [(1, 1), (1, 1), (1, 1), (2, 2), (10, 10), (148, 148)]


def test_n4_has_two():
    assert enumerate_maximal_collections(4).count == 2
    assert enumerate_tilings(4).count == 2


@pytest.mark.parametrize("n", range(1, 7))
def test_enumerated_collections_are_pure(n, enumerations):
    for d in enumerations[n][0].collections():
        rep = purity_report(d)
        assert rep.is_pure
        assert rep.total_size == sum(comb(n, j) for j in range(4))
        assert is_maximal_by_inclusion(d)


@pytest.mark.parametrize("n", range(1, 7))
def test_bijection(n, enumerations):
    colls, tilings = enumerations[n]
    rep = cross_check_bijection(n, colls, tilings)
    assert rep.ok, rep.problems
    assert bool(rep)


def test_flip_graph_is_graded(enumerations):
    for n, edges in ((4, 1), (5, 10)):
        result = enumerations[n][1]
        assert len(result.flips) == edges
    for n in (4, 5, 6):
        result = enumerations[n][1]
        sizes = [len(ziegler_map(z)) for z in result.tilings()]
        up = defaultdict(int)
        down = defaultdict(int)
        for a, b in result.flips:
            assert abs(sizes[a] - sizes[b]) == 1
            lo, hi = (a, b) if sizes[a] < sizes[b] else (b, a)
            up[lo] += 1
            down[hi] += 1
        sources = [i for i in range(result.count) if not down[i]]
        sinks = [i for i in range(result.count) if not up[i]]
        assert len(sources) == len(sinks) == 1
        assert sizes[sources[0]] == 0 and sizes[sinks[0]] == comb(n, 4)


def test_parallel_closure_matches_serial(enumerations):
    par = enumerate_tilings(5, jobs=2)
    assert par.items == enumerations[5][1].items
    assert par.flips == enumerations[5][1].flips


def test_limits():
    with pytest.raises(ValueError):
        enumerate_maximal_collections(7)
    with pytest.raises(ValueError):
        enumerate_tilings(0)
    with pytest.raises(ValueError):
        enumerate_tilings(4).collections()
    with pytest.raises(ValueError):
        enumerate_maximal_collections(4).tilings()


def test_cross_check_reports_mismatch(enumerations):
    colls, tilings = enumerations[5]
    short = type(tilings)(5, tilings.items[1:], tilings.method, ())
    rep = cross_check_bijection(5, colls, short)
    assert not rep.ok
    assert any("collections but" in p for p in rep.problems)


def test_vertex_sets_distinct(enumerations):
    tilings = enumerations[6][1].tilings()
    assert len({frozenset(vert(z).sets) for z in tilings}) == len(tilings)
