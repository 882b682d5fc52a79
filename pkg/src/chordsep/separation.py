"""Subsets of [n] as bitmasks and the separation predicates on pairs of them.

Element ``i`` of ``[n] = {1, ..., n}`` is stored in bit ``i - 1``, so the
subsets of ``[n]`` are exactly the integers ``0 <= mask < 2**n``.  The ground
size ``n`` is passed explicitly everywhere because cyclic order depends on it.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, NamedTuple, Optional

MAX_PREDICATE_N = 62


class CrossingWitness(NamedTuple):
    """Increasing quadruple ``a < b < c < d`` alternating between two set differences."""

    a: int
    b: int
    c: int
    d: int


def check_ground(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"ground size must be a positive integer, got {n!r}")


def check_subset(mask: int, n: int) -> None:
    check_ground(n)
    if not isinstance(mask, int) or mask < 0 or mask >> n:
        raise ValueError(f"{mask!r} is not a subset of [{n}]")


def full(n: int) -> int:
    return (1 << n) - 1


def to_mask(elements: Iterable[int], n: Optional[int] = None) -> int:
    mask = 0
    for i in elements:
        if i < 1 or (n is not None and i > n):
            raise ValueError(f"element {i} outside [1, {n}]")
        mask |= 1 << (i - 1)
    return mask


def elements(mask: int) -> list[int]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def size(mask: int) -> int:
    return bin(mask).count("1")


def fmt(mask: int) -> str:
    """Compact label: ``{1,3,5} -> '135'``; empty set -> ``'∅'``."""
    els = elements(mask)
    if not els:
        return "∅"
    if els[-1] < 10:
        return "".join(map(str, els))
    return "{" + ",".join(map(str, els)) + "}"


def parse_label(text: str) -> int:
    """Inverse of :func:`fmt` for single-digit ground sets (``'135' -> {1,3,5}``)."""
    text = text.strip()
    if text in ("", "∅", "{}"):
        return 0
    if text.startswith("{"):
        return to_mask(int(t) for t in text.strip("{}").split(","))
    return to_mask(int(ch) for ch in text)


def complement(mask: int, n: int) -> int:
    return full(n) & ~mask


def rotate(mask: int, n: int, shift: int = 1) -> int:
    """Apply ``i -> i + shift (mod n)`` to every element."""
    shift %= n
    if not shift:
        return mask
    return ((mask << shift) | (mask >> (n - shift))) & full(n)


def sort_key(mask: int) -> tuple[int, int]:
    """Canonical order on subsets: by cardinality, then numeric mask value."""
    return size(mask), mask


def surrounds(s: int, t: int, n: int) -> bool:
    """True iff no ``i < j < k`` has ``i, k`` in ``T - S`` and ``j`` in ``S - T``."""
    check_subset(s, n)
    check_subset(t, n)
    outer = t & ~s
    inner = s & ~t
    if not outer or not inner:
        return True
    lo = outer & -outer
    hi = 1 << (outer.bit_length() - 1)
    # bits strictly between the extreme elements of T - S
    between = (hi - 1) & ~((lo << 1) - 1)
    return not (inner & between)


def strongly_separated(s: int, t: int, n: int) -> bool:
    return surrounds(s, t, n) and surrounds(t, s, n)


def weakly_separated(s: int, t: int, n: int) -> bool:
    ss, st = size(s), size(t)
    return (ss <= st and surrounds(s, t, n)) or (st <= ss and surrounds(t, s, n))


def _alternation_runs(s: int, t: int) -> list[int]:
    """First element of each maximal run when ``S - T`` and ``T - S`` are merged in order."""
    a = s & ~t
    b = t & ~s
    x = a | b
    runs = []
    last = 0
    while x:
        low = x & -x
        side = 1 if a & low else 2
        if side != last:
            runs.append(low.bit_length())
            last = side
            if len(runs) == 4:
                break
        x ^= low
    return runs


def chord_separated(s: int, t: int, n: int) -> bool:
    """True iff no cyclically ordered ``a, b, c, d`` has ``a, c`` in one difference and ``b, d`` in the other.

    A linear scan: the two differences alternate four times in linear order
    exactly when such a quadruple exists (cyclic rotation of a quadruple is
    again a quadruple).
    """
    check_subset(s, n)
    check_subset(t, n)
    return len(_alternation_runs(s, t)) < 4


def crossing_witness(s: int, t: int, n: int) -> Optional[CrossingWitness]:
    check_subset(s, n)
    check_subset(t, n)
    runs = _alternation_runs(s, t)
    if len(runs) < 4:
        return None
    return CrossingWitness(*runs)


PREDICATES = {
    "chord": chord_separated,
    "weak": weakly_separated,
    "strong": strongly_separated,
}


def predicate(kind: str):
    try:
        return PREDICATES[kind]
    except KeyError:
        raise ValueError(f"unknown separation kind {kind!r}; expected one of {sorted(PREDICATES)}") from None


def is_cyclic_interval(s: int, n: int) -> bool:
    """Empty set, ``[n]``, and every ``[a, b]`` (indices mod n) count as cyclic intervals."""
    check_subset(s, n)
    if s == 0 or s == full(n):
        return True
    # number of elements i in S whose cyclic predecessor is not in S
    starts = s & ~rotate(s, n, 1)
    return size(starts) == 1


def cyclic_interval(a: int, length: int, n: int) -> int:
    """The interval ``[a, a + length - 1]`` taken mod n."""
    mask = 0
    for j in range(length):
        mask |= 1 << ((a - 1 + j) % n)
    return mask


def maxgap(t: int, n: int) -> int:
    """Largest number of elements strictly between two cyclically consecutive members of ``T``."""
    check_subset(t, n)
    if t == 0:
        raise ValueError("maxgap is undefined for the empty set")
    els = elements(t)
    if len(els) == 1:
        return n - 1
    gaps = [b - a - 1 for a, b in zip(els, els[1:])]
    gaps.append(els[0] + n - els[-1] - 1)
    return max(gaps)


@lru_cache(maxsize=32)
def compatibility_table(n: int, kind: str = "chord") -> tuple[int, ...]:
    """Row ``S`` is a bitmask over all subsets ``T`` of ``[n]`` separated from ``S``.

    Bit ``T`` of row ``S`` is set iff the pair passes the ``kind`` predicate.
    Only built for ``n <= 10`` (the table has ``4**n`` bits).
    """
    if n > 10:
        raise ValueError("compatibility tables are limited to n <= 10")
    pred = predicate(kind)
    size_ = 1 << n
    rows = [0] * size_
    for s in range(size_):
        row = rows[s] | (1 << s)
        for t in range(s + 1, size_):
            if pred(s, t, n):
                row |= 1 << t
                rows[t] |= 1 << s
        rows[s] = row
    return tuple(rows)
