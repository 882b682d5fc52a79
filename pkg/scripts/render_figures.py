"""Draw the worked examples: the n=6 level-3 tiling, its dual graph and the stacked n=5 sections."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from _config import parse, show
from chordsep import separation as sep
from chordsep.collection import SeparatedCollection, complete_to_maximal
from chordsep.plabic_graph import dualize
from chordsep.plabic_tiling import build_plabic_tiling, triangulate_level
from chordsep.render import RenderSpec, render_svg
from chordsep.zonotope import from_collection

LEVEL3 = "123 126 135 136 156 234 235 345 356 456".split()
DIAGONALS = "36 35 1356 2356".split()
TILE = "2 23 12 25 123 235 125 1235".split()


@dataclass
class Config:
    """Write SVG drawings of the running examples."""

    out_dir: str = "figures"
    embedding: str = "regular-ngon"
    labels: bool = True


def collection(items, n):
    return SeparatedCollection(n, frozenset(sep.parse_label(x) for x in items))


def run(cfg: Config) -> list[Path]:
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    spec = RenderSpec(embedding=cfg.embedding, labels=cfg.labels)
    middle = complete_to_maximal(collection(LEVEL3 + DIAGONALS, 6))
    tri = triangulate_level(middle, 3)
    drawings = {
        "tiling-n6-k3.svg": render_svg(build_plabic_tiling(collection(LEVEL3, 6)), spec),
        "triangulated-n6-k3.svg": render_svg(tri, spec),
        "graph-n6-k3.svg": render_svg(dualize(tri), RenderSpec(target="graph", labels=cfg.labels)),
        "sections-n5.svg": render_svg(
            from_collection(complete_to_maximal(collection(TILE, 5))),
            RenderSpec(target="layered-3d", embedding=cfg.embedding, labels=cfg.labels),
        ),
    }
    written = []
    for name, svg in drawings.items():
        path = out / name
        path.write_text(svg)
        written.append(path)
    return written


if __name__ == "__main__":
    cfg = parse(Config)
    print(show(cfg))
    for path in run(cfg):
        print(path)
