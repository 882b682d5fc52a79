"""Collections of pairwise separated subsets: checking, greedy completion, level slices, purity."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable, Optional, Sequence

from . import separation as sep

MAX_MAXIMALITY_N = 16


@dataclass(frozen=True)
class SeparatedCollection:
    n: int
    sets: frozenset = field(default_factory=frozenset)
    kind: str = "chord"

    def __post_init__(self):
        sep.check_ground(self.n)
        sep.predicate(self.kind)
        object.__setattr__(self, "sets", frozenset(self.sets))
        for s in self.sets:
            sep.check_subset(s, self.n)

    @classmethod
    def from_lists(cls, n: int, lists: Iterable[Iterable[int]], kind: str = "chord") -> "SeparatedCollection":
        return cls(n, frozenset(sep.to_mask(x, n) for x in lists), kind)

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self):
        return iter(self.sorted())

    def __contains__(self, mask) -> bool:
        return mask in self.sets

    def sorted(self) -> list[int]:
        return sorted(self.sets, key=sep.sort_key)

    def with_sets(self, sets: Iterable[int]) -> "SeparatedCollection":
        return SeparatedCollection(self.n, frozenset(sets), self.kind)

    def key(self) -> tuple[int, ...]:
        """Hashable canonical form: members sorted by (size, mask)."""
        return tuple(self.sorted())

    def labels(self) -> list[str]:
        return [sep.fmt(s) for s in self.sorted()]

    def to_json(self) -> dict:
        return {"n": self.n, "kind": self.kind, "sets": [sep.elements(s) for s in self.sorted()]}

    @classmethod
    def from_json(cls, doc: dict) -> "SeparatedCollection":
        return cls.from_lists(doc["n"], doc["sets"], doc.get("kind", "chord"))


@dataclass(frozen=True)
class PurityReport:
    n: int
    kind: str
    total_size: int
    expected_total: int
    level_sizes: tuple[int, ...]
    expected_level_sizes: Optional[tuple[int, ...]]
    is_pure: bool

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "kind": self.kind,
            "total_size": self.total_size,
            "expected_total": self.expected_total,
            "level_sizes": list(self.level_sizes),
            "expected_level_sizes": None if self.expected_level_sizes is None else list(self.expected_level_sizes),
            "is_pure": self.is_pure,
        }


def expected_total(n: int, kind: str = "chord") -> int:
    """Size of every maximal separated collection in 2^[n] (chord: up to C(n,3); weak/strong: up to C(n,2))."""
    top = 3 if kind == "chord" else 2
    return sum(comb(n, j) for j in range(top + 1))


def expected_level_size(n: int, k: int) -> int:
    return k * (n - k) + 1


def _members_separated(kind: str, n: int, x: int, members: Iterable[int]) -> bool:
    pred = sep.predicate(kind)
    return all(pred(x, m, n) for m in members)


def is_pairwise_separated(c: SeparatedCollection) -> Optional[tuple[int, int]]:
    """Return the first violating pair in canonical order, or ``None``."""
    pred = sep.predicate(c.kind)
    members = c.sorted()
    for i, s in enumerate(members):
        for t in members[i + 1:]:
            if not pred(s, t, c.n):
                return s, t
    return None


def _candidates(n: int, level: Optional[int]) -> list[int]:
    if level is None:
        return sorted(range(1 << n), key=sep.sort_key)
    if not 0 <= level <= n:
        raise ValueError(f"level {level} outside [0, {n}]")
    return sorted(sep.to_mask(c) for c in combinations(range(1, n + 1), level))


def complete_to_maximal(
    c: SeparatedCollection,
    seed: Optional[int] = None,
    order: Optional[Sequence[int]] = None,
    level: Optional[int] = None,
) -> SeparatedCollection:
    """Greedily extend ``c`` to a collection maximal by inclusion.

    Candidates are scanned once, by (cardinality, mask) unless ``order`` is
    given or ``seed`` selects a shuffled order.  One pass suffices: a rejected
    candidate conflicts with a member that is never removed.  With ``level``
    the candidates are the ``level``-element subsets only.
    """
    n = c.n
    if n > MAX_MAXIMALITY_N:
        raise ValueError(f"completion enumerates 2^n candidates; n={n} exceeds {MAX_MAXIMALITY_N}")
    bad = is_pairwise_separated(c)
    if bad is not None:
        raise ValueError(f"collection is not pairwise {c.kind} separated: {sep.fmt(bad[0])}, {sep.fmt(bad[1])}")
    if order is not None:
        candidates = list(order)
    else:
        candidates = _candidates(n, level)
        if seed is not None:
            random.Random(seed).shuffle(candidates)

    chosen = set(c.sets)
    if n <= 10:
        table = sep.compatibility_table(n, c.kind)
        allowed = sep.full(1 << n)
        for s in chosen:
            allowed &= table[s]
        for x in candidates:
            if x not in chosen and allowed >> x & 1:
                chosen.add(x)
                allowed &= table[x]
    else:
        for x in candidates:
            if x not in chosen and _members_separated(c.kind, n, x, chosen):
                chosen.add(x)
    return c.with_sets(chosen)


def addable_sets(c: SeparatedCollection, level: Optional[int] = None) -> list[int]:
    """Subsets outside ``c`` that are separated from every member."""
    n = c.n
    if n > MAX_MAXIMALITY_N:
        raise ValueError(f"maximality checks are capped at n <= {MAX_MAXIMALITY_N}, got n={n}")
    candidates = _candidates(n, level)
    if n <= 10:
        table = sep.compatibility_table(n, c.kind)
        allowed = sep.full(1 << n)
        for s in c.sets:
            allowed &= table[s]
        return [x for x in candidates if x not in c.sets and allowed >> x & 1]
    return [x for x in candidates if x not in c.sets and _members_separated(c.kind, n, x, c.sets)]


def is_maximal_by_inclusion(c: SeparatedCollection, level: Optional[int] = None) -> bool:
    bad = is_pairwise_separated(c)
    if bad is not None:
        raise ValueError(f"collection is not pairwise {c.kind} separated: {sep.fmt(bad[0])}, {sep.fmt(bad[1])}")
    return not addable_sets(c, level)


def level_slice(c: SeparatedCollection, k: int) -> SeparatedCollection:
    if not 0 <= k <= c.n:
        raise ValueError(f"level {k} outside [0, {c.n}]")
    return c.with_sets(s for s in c.sets if sep.size(s) == k)


def level_sizes(c: SeparatedCollection) -> tuple[int, ...]:
    counts = [0] * (c.n + 1)
    for s in c.sets:
        counts[sep.size(s)] += 1
    return tuple(counts)


def purity_report(c: SeparatedCollection) -> PurityReport:
    """Compare a maximal collection against the purity formulas.

    Level sizes ``k(n-k)+1`` are only predicted for chord separation; for the
    weak and strong kinds only the total is compared.
    """
    if not is_maximal_by_inclusion(c):
        raise ValueError("purity report needs a collection maximal by inclusion")
    sizes = level_sizes(c)
    total = len(c)
    want_total = expected_total(c.n, c.kind)
    want_levels = None
    pure = total == want_total
    if c.kind == "chord":
        want_levels = tuple(expected_level_size(c.n, k) for k in range(c.n + 1))
        pure = pure and sizes == want_levels
    return PurityReport(c.n, c.kind, total, want_total, sizes, want_levels, pure)


def cyclic_intervals(n: int) -> frozenset[int]:
    out = {0, sep.full(n)}
    for a in range(1, n + 1):
        for length in range(1, n):
            out.add(sep.cyclic_interval(a, length, n))
    return frozenset(out)


def rotated(c: SeparatedCollection, shift: int = 1) -> SeparatedCollection:
    return c.with_sets(sep.rotate(s, c.n, shift) for s in c.sets)


def complemented(c: SeparatedCollection) -> SeparatedCollection:
    return c.with_sets(sep.complement(s, c.n) for s in c.sets)
