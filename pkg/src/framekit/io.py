"""JSON readers and deterministic writers for matroids, biased graphs and graphs."""

from __future__ import annotations

import json
from pathlib import Path

from .biased import BiasedGraph
from .graph import Edge, Multigraph
from .matroid import Matroid, from_circuits


def _vsort(vs):
    return sorted(vs, key=lambda v: (isinstance(v, str), str(v) if isinstance(v, str) else v))


def matroid_to_dict(m: Matroid, l=None) -> dict:
    d = {"ground": list(m.ground), "circuits": sorted(sorted(c) for c in m.circuit_sets())}
    if l:
        d["l"] = sorted(l)
    return d


def matroid_from_dict(d: dict, check: bool = True) -> tuple[Matroid, frozenset]:
    m = from_circuits(d["ground"], d["circuits"], check=check)
    return m, frozenset(d.get("l", ()))


def graph_to_dict(g: Multigraph) -> dict:
    return {"vertices": list(g.vertices), "edges": [[e.id, e.u, e.v] for e in g.edges]}


def graph_from_dict(d: dict) -> Multigraph:
    edges = tuple(Edge(str(e[0]), e[1], e[2] if len(e) > 2 else e[1]) for e in d["edges"])
    vertices = d.get("vertices")
    if vertices is None:
        return Multigraph.build(edges)
    return Multigraph(tuple(vertices), edges)


def biased_to_dict(omega: BiasedGraph) -> dict:
    d = graph_to_dict(omega.graph)
    if omega.signature is not None:
        d["signature"] = [sorted(s) for s in omega.signature]
    else:
        d["balanced_cycles"] = sorted(sorted(c) for c in omega.balanced)
    return d


def biased_from_dict(d: dict, check: bool = True) -> BiasedGraph:
    g = graph_from_dict(d)
    if "signature" in d:
        return BiasedGraph.from_signature(g, d["signature"])
    return BiasedGraph(g, d.get("balanced_cycles", ()), check=check)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def write_json(path, obj) -> None:
    Path(path).write_text(dumps(obj))


def read_json(path):
    return json.loads(Path(path).read_text())


def load_any(path) -> dict:
    """Tag a JSON document as matroid, biased graph or graph by its fields."""
    d = read_json(path)
    if "circuits" in d:
        kind = "matroid"
    elif "balanced_cycles" in d or "signature" in d:
        kind = "biased"
    elif "edges" in d:
        kind = "graph"
    else:
        raise ValueError(f"{path}: cannot tell what this document describes")
    return {"kind": kind, "data": d}
