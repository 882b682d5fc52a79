from math import comb

import pytest

from chordsep import separation as sep
from chordsep.collection import (
    SeparatedCollection,
    complete_to_maximal,
    complemented,
    cyclic_intervals,
    expected_total,
    is_maximal_by_inclusion,
    is_pairwise_separated,
    level_sizes,
    level_slice,
    purity_report,
    rotated,
)
from conftest import labels


def test_pairwise_examples(example_level3):
    assert is_pairwise_separated(example_level3) is None
    bad = SeparatedCollection.from_lists(4, [[1, 3], [2, 4]])
    assert is_pairwise_separated(bad) == (sep.to_mask([1, 3]), sep.to_mask([2, 4]))
    assert is_pairwise_separated(SeparatedCollection(4)) is None


@pytest.mark.parametrize("n, size", [(4, 15), (5, 26), (6, 42)])
def test_completion_sizes(n, size):
    assert len(complete_to_maximal(SeparatedCollection(n))) == size
    assert len(complete_to_maximal(SeparatedCollection(n), seed=11)) == size
    assert expected_total(n) == sum(comb(n, j) for j in range(4)) == size


def test_intervals_complete_to_15():
    c = SeparatedCollection(4, cyclic_intervals(4))
    assert len(c) == 14
    assert len(complete_to_maximal(c)) == 15


def test_completion_contains_input_and_is_deterministic():
    c = SeparatedCollection.from_lists(6, [[1, 3], [2, 3, 5]])
    a = complete_to_maximal(c, seed=3)
    assert c.sets <= a.sets
    assert a == complete_to_maximal(c, seed=3)
    assert is_maximal_by_inclusion(a)


def test_completion_rejects_unseparated_input():
    with pytest.raises(ValueError):
        complete_to_maximal(SeparatedCollection.from_lists(4, [[1, 3], [2, 4]]))


def test_maximality_examples(tile_example_collection):
    assert is_maximal_by_inclusion(tile_example_collection)
    singletons = SeparatedCollection.from_lists(4, [[1], [2], [3], [4]])
    assert not is_maximal_by_inclusion(singletons)


def test_level_slices(tile_example_collection):
    assert len(level_slice(tile_example_collection, 2)) == 7
    assert level_slice(tile_example_collection, 0).sets == {0}
    assert level_slice(tile_example_collection, 5).sets == {sep.full(5)}
    union = set()
    for k in range(6):
        part = level_slice(tile_example_collection, k).sets
        assert not union & part
        union |= part
    assert union == tile_example_collection.sets
    with pytest.raises(ValueError):
        level_slice(tile_example_collection, 6)


def test_purity_report_n5():
    rep = purity_report(complete_to_maximal(SeparatedCollection(5), seed=2))
    assert rep.total_size == 26
    assert rep.level_sizes == (1, 5, 7, 7, 5, 1)
    assert rep.is_pure
    assert purity_report(complete_to_maximal(SeparatedCollection(4))).total_size == 15
    assert level_sizes(complete_to_maximal(SeparatedCollection(6)))[3] == 10
    with pytest.raises(ValueError):
        purity_report(SeparatedCollection(4))


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_weak_level_completion_sizes(n):
    for k in range(n + 1):
        for seed in range(20):
            c = complete_to_maximal(SeparatedCollection(n, kind="weak"), seed=seed, level=k)
            assert len(c) == k * (n - k) + 1


@pytest.mark.parametrize("kind", ["weak", "strong"])
def test_weak_and_strong_totals(kind):
    for n in range(2, 7):
        for seed in range(10):
            rep = purity_report(complete_to_maximal(SeparatedCollection(n, kind=kind), seed=seed))
            assert rep.total_size == sum(comb(n, j) for j in range(3))
            assert rep.is_pure


def test_rotation_and_complement_keep_maximality():
    for seed in range(10):
        c = complete_to_maximal(SeparatedCollection(6), seed=seed)
        assert is_maximal_by_inclusion(rotated(c))
        assert is_maximal_by_inclusion(complemented(c))


def test_json_round_trip(example_level3):
    doc = example_level3.to_json()
    assert doc["sets"][0] == [1, 2, 3]
    assert SeparatedCollection.from_json(doc) == example_level3


def test_large_n_capped():
    with pytest.raises(ValueError):
        complete_to_maximal(SeparatedCollection(17))


def test_completion_above_table_limit_matches():
    # n = 11 takes the pairwise path instead of the bitset table
    c = complete_to_maximal(SeparatedCollection(11), order=sorted(range(1 << 11), key=sep.sort_key)[:200])
    assert is_pairwise_separated(c) is None
    assert labels(["1", "12"], 11).sets <= c.sets
