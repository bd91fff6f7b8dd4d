"""JSON readers and writers for graphs and string representations."""

from __future__ import annotations

import json
from pathlib import Path

from .geometry import Polyline, StringRepresentation, intersection_graph
from .graph import Graph, InputError


def graph_to_json(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.sorted_edges()]}


def graph_from_json(obj) -> Graph:
    if not isinstance(obj, dict) or "n" not in obj or "edges" not in obj:
        raise InputError('graph JSON must be an object with "n" and "edges"')
    n = obj["n"]
    if not isinstance(n, int) or n < 0:
        raise InputError(f"bad vertex count {n!r}")
    edges = []
    for i, e in enumerate(obj["edges"]):
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) for x in e)):
            raise InputError(f"edge record {i} is not a pair of integers: {e!r}")
        edges.append(e)
    return Graph.from_edges(n, edges)


def representation_to_json(rep: StringRepresentation) -> dict:
    return {"curves": [[list(p) for p in c.points] for c in rep.curves]}


def representation_from_json(obj) -> StringRepresentation:
    if not isinstance(obj, dict) or "curves" not in obj:
        raise InputError('representation JSON must be an object with "curves"')
    curves = []
    for i, c in enumerate(obj["curves"]):
        try:
            curves.append(Polyline(tuple(tuple(p) for p in c)))
        except (TypeError, ValueError) as exc:
            raise InputError(f"curve {i}: {exc}") from None
    return StringRepresentation(tuple(curves))


def _read(path) -> object:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON ({exc})") from None


def _write(path, obj):
    Path(path).write_text(json.dumps(obj, sort_keys=True) + "\n")


def load_graph(path) -> Graph:
    return graph_from_json(_read(path))


def save_graph(g: Graph, path):
    _write(path, graph_to_json(g))


def save_representation(rep: StringRepresentation, path):
    _write(path, representation_to_json(rep))


def first_mismatch(a: Graph, b: Graph):
    """First pair (u, v) that is an edge in exactly one of the two graphs, or None."""
    diff = sorted(a.edges ^ b.edges)
    return diff[0] if diff else None


def load_representation(path, expected: Graph | None = None) -> tuple[StringRepresentation, Graph]:
    """Parse a representation and re-derive its intersection graph.

    With ``expected`` the derived graph must match it exactly.
    """
    rep = representation_from_json(_read(path))
    g = intersection_graph(rep)
    if expected is not None:
        if expected.n != g.n:
            raise InputError(f"representation has {g.n} curves, graph has {expected.n} vertices")
        bad = first_mismatch(g, expected)
        if bad is not None:
            where = "representation" if bad in g.edges else "graph"
            raise InputError(f"graph mismatch at pair {list(bad)} (edge only in {where})")
    return rep, g
