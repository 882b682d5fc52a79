"""Command line entry point.  Exit status: 0 success, 1 domain error, 2 usage error."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import separation as sep
from .collection import SeparatedCollection, complete_to_maximal, is_pairwise_separated, level_slice, purity_report
from .io import dumps, load
from .oracles import enumerate_maximal_collections, enumerate_tilings
from .plabic_graph import (
    PlabicGraph,
    contraction_move,
    dualize,
    face_labels,
    flip,
    is_reduced,
    square_move,
    strands,
)
from .plabic_tiling import (
    BLACK,
    WHITE,
    TriangulatedPlabicTiling,
    build_plabic_tiling,
    triangulate_level,
    triangulate_with_diagonals,
)
from .render import EMBEDDINGS, TARGETS, RenderSpec, render_svg
from .zonotope import AdmissibleFamily, ZonotopalTiling, assemble, from_collection, mutate, validate, ziegler_map


class DomainError(Exception):
    pass


def _expect(obj, cls, what: str):
    if not isinstance(obj, cls):
        raise DomainError(f"expected {what}, got {type(obj).__name__}")
    return obj


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _parse_subset(text: str, n: int) -> int:
    text = text.strip()
    if text in ("", "0", "∅", "{}"):
        return 0
    if "," in text or n >= 10:
        return sep.to_mask((int(t) for t in text.split(",") if t.strip()), n)
    return sep.to_mask((int(ch) for ch in text), n)


def _parse_id(text: str, prefix: str) -> int:
    t = text.strip().upper()
    if t.startswith(prefix):
        t = t[len(prefix):]
    try:
        return int(t)
    except ValueError:
        raise DomainError(f"cannot read {text!r} as an id of the form {prefix}<number>") from None


# commands -----------------------------------------------------------------


def cmd_check(args) -> int:
    c = _expect(load(args.file), SeparatedCollection, "a collection")
    if args.kind:
        c = SeparatedCollection(c.n, c.sets, args.kind)
    bad = is_pairwise_separated(c)
    if bad is None:
        _emit(args, json.dumps({"separated": True, "kind": c.kind, "size": len(c)}))
        return 0
    s, t = bad
    msg = f"not {c.kind} separated: {sep.fmt(s)} and {sep.fmt(t)}"
    w = sep.crossing_witness(s, t, c.n)
    if w is not None:
        msg += f"; witness ({w.a},{w.b},{w.c},{w.d})"
    print(msg, file=sys.stderr)
    _emit(args, json.dumps({"separated": False, "kind": c.kind, "pair": [sep.elements(s), sep.elements(t)],
                            "witness": None if w is None else list(w)}))
    return 1


def cmd_complete(args) -> int:
    if args.file:
        c = _expect(load(args.file), SeparatedCollection, "a collection")
    elif args.n:
        c = SeparatedCollection(args.n, frozenset(), args.kind or "chord")
    else:
        raise DomainError("give a collection file or --n")
    if args.kind:
        c = SeparatedCollection(c.n, c.sets, args.kind)
    _emit(args, dumps(complete_to_maximal(c, seed=args.seed, level=args.level)))
    return 0


def cmd_purity(args) -> int:
    c = _expect(load(args.file), SeparatedCollection, "a collection")
    report = purity_report(c)
    _emit(args, json.dumps(report.to_json(), indent=1))
    return 0 if report.is_pure else 1


def cmd_tile(args) -> int:
    obj = load(args.file)
    if isinstance(obj, ZonotopalTiling):
        from .zonotope import section

        if args.level is None:
            raise DomainError("--level is required")
        _emit(args, dumps(section(obj, args.level)))
        return 0
    c = _expect(obj, SeparatedCollection, "a collection")
    if args.level is None:
        raise DomainError("--level is required")
    if args.triangulate:
        _emit(args, dumps(triangulate_level(c, args.level)))
        return 0
    tiling = build_plabic_tiling(level_slice(c, args.level))
    if args.diagonals:
        pairs = []
        for item in args.diagonals.split(";"):
            a, b = item.split("-")
            pairs.append((_parse_subset(a, c.n), _parse_subset(b, c.n)))
        _emit(args, dumps(triangulate_with_diagonals(tiling, pairs)))
    else:
        _emit(args, dumps(tiling))
    return 0


def cmd_dualize(args) -> int:
    t = _expect(load(args.file), TriangulatedPlabicTiling, "a triangulated plabic tiling")
    _emit(args, dumps(dualize(t)))
    return 0


def cmd_strands(args) -> int:
    g = _expect(load(args.file), PlabicGraph, "a plabic graph")
    system = strands(g)
    report = is_reduced(g)
    doc = {
        "permutation": list(system.permutation()),
        "strands": [{"start": s.start, "end": s.end, "edges": [e for e, _ in s.darts]} for s in system.open],
        "closed": [[e for e, _ in s.darts] for s in system.closed],
        "reducedness": report.to_json(),
    }
    if report.is_reduced:
        doc["face_labels"] = [sep.elements(s) for s in face_labels(g).sorted()]
    _emit(args, json.dumps(doc, indent=1))
    return 0


def cmd_move(args) -> int:
    g = _expect(load(args.file), PlabicGraph, "a plabic graph")
    if args.square:
        out = square_move(g, _parse_id(args.square, "F"))
    elif args.m1:
        out = flip(g, _parse_id(args.m1, "E"), WHITE)
    elif args.m3:
        out = flip(g, _parse_id(args.m3, "E"), BLACK)
    elif args.contract:
        e = _parse_id(args.contract, "E")
        u, v = g.edges.get(e, (None, None))
        color = g.colors.get(u)
        mode = "M1-contract" if color == WHITE else "M3-contract"
        out = contraction_move(g, e, mode)
    elif args.uncontract:
        v = _parse_id(args.uncontract, "V")
        mode = "M1-uncontract" if g.colors.get(v) == WHITE else "M3-uncontract"
        out = contraction_move(g, v, mode, split=args.split)
    else:
        raise DomainError("choose one of --square, --m1, --m3, --contract, --uncontract")
    _emit(args, dumps(out))
    return 0


def cmd_assemble(args) -> int:
    obj = load(args.file)
    if isinstance(obj, SeparatedCollection):
        z = from_collection(obj)
    else:
        z = assemble(_expect(obj, AdmissibleFamily, "an admissible family"))
    _emit(args, dumps(z))
    return 0


def cmd_mutate(args) -> int:
    z = _expect(load(args.file), ZonotopalTiling, "a zonotopal tiling")
    S = _parse_subset(args.S, z.n)
    Q = [int(t) for t in args.Q.split(",")] if "," in args.Q else [int(ch) for ch in args.Q]
    _emit(args, dumps(mutate(z, S, Q)))
    return 0


def cmd_validate(args) -> int:
    z = _expect(load(args.file), ZonotopalTiling, "a zonotopal tiling")
    report = validate(z, samples=args.samples, seed=args.seed or 0)
    _emit(args, json.dumps(report.to_json(), indent=1))
    for msg in report.failures:
        print(msg, file=sys.stderr)
    return 0 if report.is_valid else 1


def cmd_ziegler(args) -> int:
    z = _expect(load(args.file), ZonotopalTiling, "a zonotopal tiling")
    phi = ziegler_map(z)
    _emit(args, json.dumps({"n": z.n, "quadruples": [sep.elements(q) for q in sorted(phi)], "size": len(phi)}))
    return 0


def cmd_enumerate(args) -> int:
    if args.what == "collections":
        result = enumerate_maximal_collections(args.n)
        lines = [json.dumps(SeparatedCollection(args.n, frozenset(k)).to_json()) for k in result.items]
    else:
        result = enumerate_tilings(args.n, jobs=args.jobs)
        lines = [json.dumps(z.to_json()) for z in result.tilings()]
    text = "\n".join(lines) + "\n"
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        target = out / f"{args.what}-n{args.n}.jsonl"
        target.write_text(text)
        if args.what == "tilings":
            (out / f"flips-n{args.n}.jsonl").write_text("".join(json.dumps(list(e)) + "\n" for e in result.flips))
    else:
        sys.stdout.write(text)
    print(f"{result.count} {args.what} for n={args.n} ({result.method})", file=sys.stderr)
    return 0


def cmd_render(args) -> int:
    obj = load(args.file)
    if isinstance(obj, SeparatedCollection):
        if args.level is None:
            raise DomainError("rendering a collection needs --level")
        obj = build_plabic_tiling(level_slice(obj, args.level))
    elif isinstance(obj, AdmissibleFamily):
        obj = assemble(obj)
    target = args.target
    if target is None:
        target = "graph" if isinstance(obj, PlabicGraph) else "layered-3d" if isinstance(obj, ZonotopalTiling) else "tiling"
    svg = render_svg(obj, RenderSpec(target=target, embedding=args.embedding, labels=not args.no_labels))
    if args.svg:
        Path(args.svg).write_text(svg)
    else:
        _emit(args, svg)
    return 0


# parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chordsep", description="Chord separated collections, plabic tilings and zonotopal tilings.")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write data here instead of standard output")
    common.add_argument("--seed", type=int, default=None, help="random seed")

    def add(name, func, help_text, file=True, optional_file=False):
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        if file:
            p.add_argument("file", nargs="?" if optional_file else None, help="input JSON document ('-' for stdin)")
        p.set_defaults(func=func)
        return p

    p = add("check", cmd_check, "check that a collection is pairwise separated")
    p.add_argument("--kind", choices=sorted(sep.PREDICATES), help="override the collection's kind")
    p = add("complete", cmd_complete, "greedily complete a collection to a maximal one", optional_file=True)
    p.add_argument("--n", type=int, help="start from the empty collection on [n]")
    p.add_argument("--kind", choices=sorted(sep.PREDICATES))
    p.add_argument("--level", type=int, help="only add sets of this size")
    add("purity", cmd_purity, "compare a maximal collection with the purity formulas")
    p = add("tile", cmd_tile, "plabic tiling of one level of a collection")
    p.add_argument("--level", type=int)
    p.add_argument("--triangulate", action="store_true", help="canonical triangulation from the whole collection")
    p.add_argument("--diagonals", help="explicit diagonals, e.g. '136-356;235-356'")
    add("dualize", cmd_dualize, "plabic graph dual to a triangulated plabic tiling")
    add("strands", cmd_strands, "strands, strand permutation, reducedness and face labels of a plabic graph")
    p = add("move", cmd_move, "apply a local move to a plabic graph")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--square", metavar="F", help="square move at interior face F<k>")
    g.add_argument("--m1", metavar="E", help="white trivalent move across edge E<k>")
    g.add_argument("--m3", metavar="E", help="black trivalent move across edge E<k>")
    g.add_argument("--contract", metavar="E", help="contract a unicolored edge")
    g.add_argument("--uncontract", metavar="V", help="split a vertex of degree at least 4")
    p.add_argument("--split", type=int, default=0, help="rotation slot where the split starts")
    add("assemble", cmd_assemble, "zonotopal tiling from an admissible family (or a maximal collection)")
    p = add("mutate", cmd_mutate, "mutate a zonotopal tiling at (S, Q)")
    p.add_argument("--S", required=True, help="base set, e.g. 2 or 1,4 (empty string for the empty set)")
    p.add_argument("--Q", required=True, help="four indices in any order, e.g. 1,3,5,4")
    p = add("validate", cmd_validate, "combinatorial, volume and sampling checks of a zonotopal tiling")
    p.add_argument("--samples", type=int, default=10_000)
    add("ziegler", cmd_ziegler, "Ziegler map of a zonotopal tiling")
    p = add("enumerate", cmd_enumerate, "enumerate maximal collections or tilings as JSON lines", file=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--what", choices=("collections", "tilings"), default="collections")
    p.add_argument("--jobs", type=int, default=None, help="worker processes for the mutation closure")
    p = add("render", cmd_render, "SVG drawing of a tiling, graph or stacked sections")
    p.add_argument("--svg", help="output SVG path")
    p.add_argument("--target", choices=TARGETS)
    p.add_argument("--embedding", choices=EMBEDDINGS, default="regular-ngon")
    p.add_argument("--level", type=int, help="level to draw when the input is a collection")
    p.add_argument("--no-labels", action="store_true")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (DomainError, ValueError, TypeError, AssertionError, OSError) as exc:
        print(f"chordsep {args.command}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
