import json

import pytest

from chordsep import separation as sep
from chordsep.cli import main
from chordsep.collection import SeparatedCollection
from chordsep.io import dumps, load
from chordsep.plabic_graph import PlabicGraph, faces, labelled_faces
from chordsep.zonotope import ZonotopalTiling, mutable_quadruples
from conftest import EXAMPLE_EXTRA, EXAMPLE_LEVEL3, labels


def write(path, obj):
    path.write_text(dumps(obj))
    return str(path)


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_check_ok_and_witness(tmp_path, capsys):
    good = write(tmp_path / "good.json", labels(EXAMPLE_LEVEL3, 6))
    code, out, _ = run(["check", good], capsys)
    assert code == 0 and json.loads(out)["separated"]
    bad = write(tmp_path / "bad.json", labels(["13", "24"], 4))
    code, out, err = run(["check", bad], capsys)
    assert code == 1
    assert "witness (1,2,3,4)" in err
    assert json.loads(out)["witness"] == [1, 2, 3, 4]


def test_usage_errors(capsys):
    assert main(["frobnicate"]) == 2
    assert main(["move", "x.json"]) == 2
    assert main([]) == 2
    capsys.readouterr()


def test_missing_file_is_domain_error(tmp_path, capsys):
    code, _, err = run(["purity", str(tmp_path / "nope.json")], capsys)
    assert code == 1 and err


def test_complete_and_purity(tmp_path, capsys):
    out = tmp_path / "full.json"
    assert main(["complete", "--n", "6", "--seed", "4", "--out", str(out)]) == 0
    c = load(out)
    assert isinstance(c, SeparatedCollection) and len(c) == 42
    code, text, _ = run(["purity", str(out)], capsys)
    assert code == 0 and json.loads(text)["total_size"] == 42
    partial = write(tmp_path / "partial.json", labels(["12"], 4))
    code, _, _ = run(["purity", partial], capsys)
    assert code == 1


def test_pipeline_to_face_labels(tmp_path, capsys):
    col = write(tmp_path / "c.json", labels(EXAMPLE_LEVEL3 + EXAMPLE_EXTRA, 6))
    full = tmp_path / "full.json"
    assert main(["complete", col, "--out", str(full)]) == 0
    tiling = tmp_path / "t.json"
    assert main(["tile", str(tmp_path / "c.json"), "--level", "3", "--diagonals", "136-356;235-356", "--out", str(tiling)]) == 0
    graph = tmp_path / "g.json"
    assert main(["dualize", str(tiling), "--out", str(graph)]) == 0
    code, out, _ = run(["strands", str(graph)], capsys)
    doc = json.loads(out)
    assert code == 0
    assert doc["permutation"] == [4, 5, 6, 1, 2, 3]
    assert doc["reducedness"]["is_reduced"]
    assert {sep.fmt(sep.to_mask(s)) for s in doc["face_labels"]} == set(EXAMPLE_LEVEL3)
    tri = tmp_path / "tri.json"
    assert main(["tile", str(full), "--level", "3", "--triangulate", "--out", str(tri)]) == 0
    assert load(tri) == load(tiling)


def test_moves(tmp_path, capsys, example_collection):
    from chordsep.plabic_tiling import triangulate_level
    from chordsep.plabic_graph import dualize

    g = dualize(triangulate_level(example_collection, 3))
    path = write(tmp_path / "g.json", g)
    quad = next(f for f, darts in enumerate(faces(g)) if len(darts) == 4 and all(e >= 0 for e, _ in darts))
    out = tmp_path / "sq.json"
    assert main(["move", path, "--square", f"F{quad}", "--out", str(out)]) == 0
    h = load(out)
    assert isinstance(h, PlabicGraph)
    assert sum(1 for f in labelled_faces(g) if labelled_faces(g)[f] != labelled_faces(h)[f]) == 1
    white = next(e for e, (u, v) in g.edges.items() if g.colors.get(u) == g.colors.get(v) == "white")
    black = next(e for e, (u, v) in g.edges.items() if g.colors.get(u) == g.colors.get(v) == "black")
    assert main(["move", path, "--m1", f"E{white}", "--out", str(tmp_path / "m1.json")]) == 0
    assert main(["move", path, "--m3", f"E{black}", "--out", str(tmp_path / "m3.json")]) == 0
    code, _, err = run(["move", path, "--m1", f"E{black}"], capsys)
    assert code == 1 and "expected white" in err
    assert main(["move", path, "--contract", f"E{white}", "--out", str(tmp_path / "c.json")]) == 0
    u = min(g.edges[white])
    assert main(["move", str(tmp_path / "c.json"), "--uncontract", f"V{u}", "--split", "1", "--out", str(tmp_path / "u.json")]) == 0
    code, _, _ = run(["move", path, "--square", "Fx"], capsys)
    assert code == 1


def test_zonotope_commands(tmp_path, capsys, tile_example_collection):
    col = write(tmp_path / "c.json", tile_example_collection)
    z_path = tmp_path / "z.json"
    assert main(["assemble", col, "--out", str(z_path)]) == 0
    z = load(z_path)
    assert isinstance(z, ZonotopalTiling) and len(z.tiles) == 10
    code, out, _ = run(["validate", str(z_path), "--samples", "2000"], capsys)
    assert code == 0 and json.loads(out)["is_valid"]
    S, Q = mutable_quadruples(z)[0]
    m_path = tmp_path / "m.json"
    q = ",".join(map(str, reversed(sep.elements(Q))))
    assert main(["mutate", str(z_path), "--S", sep.fmt(S) if S else "", "--Q", q, "--out", str(m_path)]) == 0
    code, out, _ = run(["ziegler", str(z_path)], capsys)
    before = json.loads(out)["size"]
    code, out, _ = run(["ziegler", str(m_path)], capsys)
    assert abs(json.loads(out)["size"] - before) == 1
    fam = tmp_path / "fam.json"
    from chordsep.zonotope import family_of

    write(fam, family_of(z))
    assert main(["assemble", str(fam), "--out", str(tmp_path / "z2.json")]) == 0
    assert load(tmp_path / "z2.json") == z
    broken = ZonotopalTiling(z.config, z.tiles[1:])
    code, _, err = run(["validate", write(tmp_path / "b.json", broken), "--samples", "500"], capsys)
    assert code == 1 and "tiles" in err
    code, _, _ = run(["mutate", str(z_path), "--S", "", "--Q", "1,2,3"], capsys)
    assert code == 1


def test_enumerate(tmp_path, capsys):
    assert main(["enumerate", "--n", "5", "--what", "tilings", "--out", str(tmp_path)]) == 0
    lines = (tmp_path / "tilings-n5.jsonl").read_text().splitlines()
    assert len(lines) == 10
    assert len((tmp_path / "flips-n5.jsonl").read_text().splitlines()) == 10
    code, out, err = run(["enumerate", "--n", "4"], capsys)
    assert code == 0 and len(out.splitlines()) == 2 and "2 collections" in err


def test_render(tmp_path, capsys, example_level3):
    col = write(tmp_path / "c.json", labels(EXAMPLE_LEVEL3, 6))
    svg = tmp_path / "fig.svg"
    assert main(["render", col, "--level", "3", "--svg", str(svg)]) == 0
    assert svg.read_text().startswith("<?xml")
    code, _, _ = run(["render", col], capsys)
    assert code == 1


@pytest.mark.parametrize("cmd", ["check", "complete", "purity", "tile", "dualize", "strands", "move", "assemble",
                                 "mutate", "validate", "ziegler", "enumerate", "render"])
def test_help(cmd, capsys):
    assert main([cmd, "--help"]) == 0
    assert "usage" in capsys.readouterr().out
