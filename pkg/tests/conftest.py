from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from chordsep import separation as sep
from chordsep.collection import SeparatedCollection, complete_to_maximal
from chordsep.oracles import enumerate_maximal_collections, enumerate_tilings
from chordsep.zonotope import from_collection

EXAMPLE_LEVEL3 = "123 126 135 136 156 234 235 345 356 456".split()
# the middle triangulation also uses the diagonals 136-356 and 235-356
EXAMPLE_EXTRA = "36 35 1356 2356".split()
EXAMPLE_TILE = "2 23 12 25 123 235 125 1235".split()


def labels(items, n):
    return SeparatedCollection(n, frozenset(sep.parse_label(x) for x in items))


@pytest.fixture(scope="session")
def example_level3():
    return labels(EXAMPLE_LEVEL3, 6)


@pytest.fixture(scope="session")
def example_collection():
    return complete_to_maximal(labels(EXAMPLE_LEVEL3 + EXAMPLE_EXTRA, 6))


@pytest.fixture(scope="session")
def tile_example_collection():
    return complete_to_maximal(labels(EXAMPLE_TILE, 5))


@pytest.fixture(scope="session")
def enumerations():
    out = {}
    for n in range(1, 7):
        out[n] = (enumerate_maximal_collections(n), enumerate_tilings(n))
    return out


@pytest.fixture(scope="session")
def tilings_upto6(enumerations):
    return [z for n in range(3, 7) for z in enumerations[n][1].tilings()]


@pytest.fixture(scope="session")
def random_n6_tilings():
    return [from_collection(complete_to_maximal(SeparatedCollection(6), seed=s)) for s in range(120)]


acceptance_key = pytest.StashKey[list]()


@pytest.fixture
def acceptance_log(request):
    return request.config.stash.setdefault(acceptance_key, [])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(acceptance_key, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
