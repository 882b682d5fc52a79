"""JSON documents for every object type, and a loader that recognises them by shape."""

from __future__ import annotations

import json
import sys
from pathlib import Path

from .collection import SeparatedCollection
from .plabic_graph import PlabicGraph
from .plabic_tiling import PlabicTiling, TriangulatedPlabicTiling, plabic_tiling_from_json
from .zonotope import AdmissibleFamily, ZonotopalTiling


def kind_of(doc: dict) -> str:
    if not isinstance(doc, dict):
        raise ValueError("expected a JSON object")
    if "tiles" in doc:
        return "zonotopal_tiling"
    if "levels" in doc:
        return "admissible_family"
    if "boundary" in doc and "edges" in doc:
        return "plabic_graph"
    if "level" in doc and "vertices" in doc:
        return "plabic_tiling"
    if "sets" in doc:
        return "collection"
    raise ValueError("unrecognised document: expected a collection, tiling, graph, family or zonotopal tiling")


def from_doc(doc: dict):
    kind = kind_of(doc)
    try:
        if kind == "zonotopal_tiling":
            return ZonotopalTiling.from_json(doc)
        if kind == "admissible_family":
            return AdmissibleFamily.from_json(doc)
        if kind == "plabic_graph":
            return PlabicGraph.from_json(doc)
        if kind == "plabic_tiling":
            return plabic_tiling_from_json(doc)
        return SeparatedCollection.from_json(doc)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed {kind} document: {exc!r}") from None


def to_doc(obj) -> dict:
    if isinstance(obj, (SeparatedCollection, PlabicTiling, TriangulatedPlabicTiling, PlabicGraph, ZonotopalTiling, AdmissibleFamily)):
        return obj.to_json()
    raise TypeError(f"no JSON form for {type(obj).__name__}")


def dumps(obj) -> str:
    doc = obj if isinstance(obj, dict) else to_doc(obj)
    return json.dumps(doc, indent=1, ensure_ascii=False)


def load(path) -> object:
    text = Path(path).read_text() if str(path) != "-" else sys.stdin.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: not valid JSON ({exc})") from None
    return from_doc(doc)
