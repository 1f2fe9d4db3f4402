"""Finite multigraphs with loops and parallel edges.

Edges carry string identifiers; vertices are arbitrary hashable, sortable ids
(strings in files, ints inside the search engine).  A cycle is keyed by its
edge set, which determines it uniquely in a multigraph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Iterator

MAX_CYCLE_EDGES = 24


class GraphError(ValueError):
    pass


class SizeLimitExceeded(GraphError):
    pass


@dataclass(frozen=True)
class Edge:
    id: str
    u: Hashable
    v: Hashable

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    def ends(self) -> tuple:
        return (self.u,) if self.u == self.v else (self.u, self.v)

    def other(self, x):
        if x == self.u:
            return self.v
        if x == self.v:
            return self.u
        raise GraphError(f"{x!r} is not an end of {self.id}")


def _vkey(v):
    return (type(v).__name__, v)


@dataclass(frozen=True)
class Multigraph:
    vertices: tuple
    edges: tuple[Edge, ...]
    _edge_index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        ids = [e.id for e in self.edges]
        if len(set(ids)) != len(ids):
            raise GraphError("edge ids must be unique")
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise GraphError("vertex ids must be unique")
        for e in self.edges:
            if e.u not in vs or e.v not in vs:
                raise GraphError(f"edge {e.id} has an endpoint outside the vertex set")
        object.__setattr__(self, "_edge_index", {e.id: e for e in self.edges})

    @classmethod
    def build(cls, edges: Iterable, vertices: Iterable | None = None) -> "Multigraph":
        """Build from ``(id, u, v)`` triples; vertices default to the touched ones."""
        es = tuple(e if isinstance(e, Edge) else Edge(str(e[0]), e[1], e[2]) for e in edges)
        if vertices is None:
            seen = {}
            for e in es:
                seen.setdefault(e.u, None)
                seen.setdefault(e.v, None)
            vertices = seen
        return cls(tuple(vertices), es)

    def edge(self, eid: str) -> Edge:
        try:
            return self._edge_index[eid]
        except KeyError:
            raise GraphError(f"unknown edge {eid!r}") from None

    @property
    def edge_ids(self) -> tuple[str, ...]:
        return tuple(e.id for e in self.edges)

    def has_edge(self, eid: str) -> bool:
        return eid in self._edge_index

    def incident(self, v) -> list[Edge]:
        return [e for e in self.edges if e.u == v or e.v == v]

    def links_at(self, v) -> list[Edge]:
        """delta(v): the links (non-loop edges) at ``v``."""
        return [e for e in self.edges if not e.is_loop and (e.u == v or e.v == v)]

    def loops_at(self, v) -> list[Edge]:
        return [e for e in self.edges if e.is_loop and e.u == v]

    def degree(self, v) -> int:
        return sum(2 if e.is_loop else 1 for e in self.incident(v))

    def vertices_of(self, eids: Iterable[str]) -> set:
        out = set()
        for i in eids:
            e = self._edge_index[i]
            out.add(e.u)
            out.add(e.v)
        return out

    def subgraph(self, eids: Iterable[str], keep_vertices: bool = False) -> "Multigraph":
        keep = set(eids)
        es = tuple(e for e in self.edges if e.id in keep)
        if keep_vertices:
            return Multigraph(self.vertices, es)
        touched = self.vertices_of(keep)
        return Multigraph(tuple(v for v in self.vertices if v in touched), es)

    def delete_edges(self, eids: Iterable[str]) -> "Multigraph":
        drop = set(eids)
        return Multigraph(self.vertices, tuple(e for e in self.edges if e.id not in drop))

    def delete_vertex(self, v) -> "Multigraph":
        return Multigraph(
            tuple(x for x in self.vertices if x != v),
            tuple(e for e in self.edges if e.u != v and e.v != v),
        )

    def components(self, eids: Iterable[str] | None = None) -> list[frozenset[str]]:
        """Edge sets of the connected components of the edge-induced subgraph."""
        ids = list(self.edge_ids if eids is None else eids)
        parent: dict = {}

        def find(x):
            while parent.setdefault(x, x) != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i in ids:
            e = self._edge_index[i]
            ru, rv = find(e.u), find(e.v)
            if ru != rv:
                parent[ru] = rv
        groups: dict = {}
        for i in ids:
            groups.setdefault(find(self._edge_index[i].u), set()).add(i)
        return sorted((frozenset(g) for g in groups.values()), key=lambda s: sorted(s))

    def vertex_components(self) -> list[set]:
        """Vertex sets of the components of the whole graph (isolated vertices included)."""
        adj = {v: set() for v in self.vertices}
        for e in self.edges:
            adj[e.u].add(e.v)
            adj[e.v].add(e.u)
        seen, out = set(), []
        for v in self.vertices:
            if v in seen:
                continue
            comp, stack = set(), [v]
            while stack:
                x = stack.pop()
                if x in comp:
                    continue
                comp.add(x)
                stack.extend(adj[x] - comp)
            seen |= comp
            out.append(comp)
        return out

    def is_connected(self) -> bool:
        """Connected, ignoring isolated vertices."""
        return len(self.components()) <= 1

    def relabel_vertices(self, mapping: dict) -> "Multigraph":
        return Multigraph(
            tuple(mapping.get(v, v) for v in self.vertices),
            tuple(Edge(e.id, mapping.get(e.u, e.u), mapping.get(e.v, e.v)) for e in self.edges),
        )

    def relabel_edges(self, mapping: dict) -> "Multigraph":
        return Multigraph(self.vertices, tuple(Edge(mapping.get(e.id, e.id), e.u, e.v) for e in self.edges))


def cycles(g: Multigraph, limit: int = MAX_CYCLE_EDGES) -> list[frozenset[str]]:
    """All cycles of ``g`` as edge sets, loops and digons included.

    Ordered by length, then by sorted edge ids.
    """
    if len(g.edges) > limit:
        raise SizeLimitExceeded(f"cycle enumeration capped at {limit} edges, got {len(g.edges)}")
    found: set[frozenset[str]] = set()
    for e in g.edges:
        if e.is_loop:
            found.add(frozenset([e.id]))
    order = {v: i for i, v in enumerate(g.vertices)}
    adj: dict = {v: [] for v in g.vertices}
    for e in g.edges:
        if not e.is_loop:
            adj[e.u].append((e.v, e.id))
            adj[e.v].append((e.u, e.id))
    # each cycle is found from its lowest vertex, in both directions
    for s in g.vertices:
        rank_s = order[s]
        path_edges: list[str] = []
        on_path = {s}

        def extend(x):
            for y, eid in adj[x]:
                if path_edges and eid == path_edges[-1]:
                    continue
                if y == s:
                    if path_edges:
                        found.add(frozenset(path_edges + [eid]))
                    continue
                if order[y] <= rank_s or y in on_path:
                    continue
                on_path.add(y)
                path_edges.append(eid)
                extend(y)
                path_edges.pop()
                on_path.discard(y)

        for y, eid in adj[s]:
            if y == s or order[y] <= rank_s:
                continue
            on_path.add(y)
            path_edges.append(eid)
            extend(y)
            path_edges.pop()
            on_path.discard(y)
    return sorted(found, key=lambda c: (len(c), sorted(c)))


def is_cycle(g: Multigraph, eids: Iterable[str]) -> bool:
    s = set(eids)
    if not s:
        return False
    es = [g.edge(i) for i in s]
    if len(es) == 1:
        return es[0].is_loop
    if any(e.is_loop for e in es):
        return False
    deg: dict = {}
    for e in es:
        deg[e.u] = deg.get(e.u, 0) + 1
        deg[e.v] = deg.get(e.v, 0) + 1
    if any(d != 2 for d in deg.values()):
        return False
    return len(g.components(s)) == 1


def paths_between(g: Multigraph, src, dst, avoid: set | None = None, within: Iterable[str] | None = None) -> Iterator[list[str]]:
    """Simple ``src``-``dst`` paths as edge-id lists; interior vertices avoid ``avoid``."""
    avoid = set() if avoid is None else set(avoid)
    allowed = None if within is None else set(within)
    adj: dict = {v: [] for v in g.vertices}
    for e in g.edges:
        if e.is_loop or (allowed is not None and e.id not in allowed):
            continue
        adj[e.u].append((e.v, e.id))
        adj[e.v].append((e.u, e.id))
    visited = {src}
    trail: list[str] = []

    def walk(x):
        for y, eid in adj[x]:
            if y == dst:
                yield trail + [eid]
                continue
            if y in visited or y in avoid:
                continue
            visited.add(y)
            trail.append(eid)
            yield from walk(y)
            trail.pop()
            visited.discard(y)

    if src == dst:
        return
    yield from walk(src)


def cycle_sequence(g: Multigraph, cyc: Iterable[str]) -> tuple[str, ...]:
    """Cyclic edge sequence of a cycle in canonical rotation/reflection (minimal ids first)."""
    ids = sorted(cyc)
    if len(ids) <= 2:
        return tuple(ids)
    start = g.edge(ids[0])
    seq = [start.id]
    x = start.v
    remaining = set(ids[1:])
    while remaining:
        nxt = min(i for i in remaining if x in g.edge(i).ends())
        seq.append(nxt)
        remaining.discard(nxt)
        x = g.edge(nxt).other(x)
    if seq[-1] < seq[1]:
        seq = [seq[0]] + seq[1:][::-1]
    return tuple(seq)
