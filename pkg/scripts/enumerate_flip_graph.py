"""Mutation closure of fine tilings of Z(n,3), graded by the size of the Ziegler map."""

from __future__ import annotations

import json
import time
from collections import Counter, defaultdict
from dataclasses import dataclass
from pathlib import Path

from _config import parse, show
from chordsep.oracles import cross_check_bijection, default_jobs, enumerate_maximal_collections, enumerate_tilings
from chordsep.zonotope import ziegler_map


@dataclass
class Config:
    """Enumerate tilings by mutation and summarise the flip graph."""

    n: int = 6
    jobs: int = 0
    cross_check: bool = False
    out: str = ""


def run(cfg: Config) -> dict:
    jobs = cfg.jobs or default_jobs()
    start = time.perf_counter()
    result = enumerate_tilings(cfg.n, jobs=jobs)
    took = time.perf_counter() - start
    ranks = [len(ziegler_map(z)) for z in result.tilings()]
    degree = defaultdict(int)
    for a, b in result.flips:
        degree[a] += 1
        degree[b] += 1
    summary = {
        "n": cfg.n,
        "tilings": result.count,
        "flips": len(result.flips),
        "rank_sizes": dict(sorted(Counter(ranks).items())),
        "min_degree": min(degree.values(), default=0),
        "max_degree": max(degree.values(), default=0),
        "seconds": round(took, 2),
    }
    if cfg.cross_check:
        rep = cross_check_bijection(cfg.n, enumerate_maximal_collections(cfg.n), result)
        summary["bijection_ok"] = rep.ok
    return summary


if __name__ == "__main__":
    cfg = parse(Config)
    print(show(cfg))
    summary = run(cfg)
    text = json.dumps(summary, indent=1)
    print(text)
    if cfg.out:
        Path(cfg.out).write_text(text + "\n")
