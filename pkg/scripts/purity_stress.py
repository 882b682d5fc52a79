"""Random greedy completions: total size and level sizes against the purity formulas."""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass

from _config import parse, show
from chordsep.collection import SeparatedCollection, complete_to_maximal, expected_total, purity_report


@dataclass
class Config:
    """Complete the empty collection many times and tally the sizes."""

    n_min: int = 4
    n_max: int = 8
    trials: int = 1000
    kind: str = "chord"
    seed: int = 0


def run(cfg: Config) -> bool:
    ok = True
    for n in range(cfg.n_min, cfg.n_max + 1):
        start = time.perf_counter()
        sizes = Counter()
        impure = 0
        for t in range(cfg.trials):
            rep = purity_report(complete_to_maximal(SeparatedCollection(n, kind=cfg.kind), seed=cfg.seed + t))
            sizes[rep.total_size] += 1
            impure += not rep.is_pure
        took = time.perf_counter() - start
        expected = expected_total(n, cfg.kind)
        print(f"n={n}: sizes {dict(sizes)} expected {expected} impure {impure} ({took:.2f}s)")
        ok &= impure == 0 and set(sizes) == {expected}
    return ok


if __name__ == "__main__":
    cfg = parse(Config)
    print(show(cfg))
    raise SystemExit(0 if run(cfg) else 1)
