"""Biased graphs: a multigraph together with its set of balanced cycles.

The explicit balanced-cycle set is the normal form.  Signatures (lists of
edge sets Sigma_1..Sigma_k) are compiled to it on construction and kept
alongside for reference.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import networkx as nx
from networkx.algorithms import isomorphism as nxiso

from .graph import Edge, GraphError, Multigraph, cycles, is_cycle
from .matroid import Matroid, bits, popcount


class BiasError(ValueError):
    pass


class ThetaViolation(BiasError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"theta with exactly two balanced cycles: {[sorted(c) for c in witness]}")


class NotACycle(BiasError):
    pass


class LabelMismatch(BiasError):
    pass


class NotBalancing(BiasError):
    pass


class UnknownEdge(BiasError):
    pass


Cycle = frozenset  # frozenset[str] of edge ids


@dataclass(frozen=True)
class Explicit:
    balanced: frozenset


@dataclass(frozen=True)
class Signature:
    sigma: tuple


class BiasedGraph:
    """``(G, B)`` with ``B`` stored explicitly as edge sets of balanced cycles."""

    def __init__(self, graph: Multigraph, balanced: Iterable[Iterable[str]] = (), check: bool = True,
                 signature: tuple | None = None):
        self.graph = graph
        self.balanced = frozenset(frozenset(c) for c in balanced)
        self.signature = signature
        if check:
            for c in self.balanced:
                if not is_cycle(graph, c):
                    raise NotACycle(f"{sorted(c)} is not a cycle")
            w = validate_theta(self)
            if w is not None:
                raise ThetaViolation(w)

    # -- constructors ----------------------------------------------------
    @classmethod
    def from_signature(cls, graph: Multigraph, sigma: Iterable[Iterable[str]]) -> "BiasedGraph":
        sig = tuple(frozenset(s) for s in sigma)
        for s in sig:
            for e in s:
                if not graph.has_edge(e):
                    raise UnknownEdge(e)
        bal = [c for c in cycles(graph) if all(len(c & s) % 2 == 0 for s in sig)]
        return cls(graph, bal, check=False, signature=sig)

    @classmethod
    def all_balanced(cls, graph: Multigraph) -> "BiasedGraph":
        return cls(graph, cycles(graph), check=False, signature=())

    @classmethod
    def contrabalanced(cls, graph: Multigraph) -> "BiasedGraph":
        return cls(graph, (), check=False)

    @classmethod
    def from_spec(cls, graph: Multigraph, spec: Explicit | Signature) -> "BiasedGraph":
        if isinstance(spec, Signature):
            return cls.from_signature(graph, spec.sigma)
        return cls(graph, spec.balanced)

    # -- cached structure ------------------------------------------------
    @cached_property
    def edge_index(self) -> dict[str, int]:
        return {e: i for i, e in enumerate(self.graph.edge_ids)}

    @cached_property
    def cycle_list(self) -> list[Cycle]:
        return cycles(self.graph)

    def emask(self, eids: Iterable[str]) -> int:
        idx = self.edge_index
        m = 0
        for e in eids:
            try:
                m |= 1 << idx[e]
            except KeyError:
                raise UnknownEdge(e) from None
        return m

    @cached_property
    def _cycle_masks(self) -> tuple[list[int], list[int]]:
        bal, unb = [], []
        for c in self.cycle_list:
            (bal if c in self.balanced else unb).append(self.emask(c))
        return bal, unb

    @cached_property
    def _vertex_masks(self) -> list[int]:
        vidx = {v: i for i, v in enumerate(self.graph.vertices)}
        return [(1 << vidx[e.u]) | (1 << vidx[e.v]) for e in self.graph.edges]

    def vmask(self, emask: int) -> int:
        vm = self._vertex_masks
        out = 0
        for i in bits(emask):
            out |= vm[i]
        return out

    def labels(self, emask: int) -> frozenset[str]:
        ids = self.graph.edge_ids
        return frozenset(ids[i] for i in bits(emask))

    @property
    def spec(self) -> Explicit | Signature:
        if self.signature is not None:
            return Signature(self.signature)
        return Explicit(self.balanced)

    # -- queries ---------------------------------------------------------
    def is_balanced_cycle(self, c: Iterable[str]) -> bool:
        c = frozenset(c)
        if not is_cycle(self.graph, c):
            raise NotACycle(f"{sorted(c)} is not a cycle")
        return c in self.balanced

    def unbalanced_cycles(self) -> list[Cycle]:
        return [c for c in self.cycle_list if c not in self.balanced]

    def is_balanced(self, eids: Iterable[str] | None = None) -> bool:
        x = self.emask(self.graph.edge_ids if eids is None else eids)
        return not any(c & ~x == 0 for c in self._cycle_masks[1])

    def is_contrabalanced(self) -> bool:
        return not self.balanced

    def unbalanced_loops(self) -> list[Edge]:
        return [e for e in self.graph.edges if e.is_loop and frozenset([e.id]) not in self.balanced]

    def balanced_loops(self) -> list[Edge]:
        return [e for e in self.graph.edges if e.is_loop and frozenset([e.id]) in self.balanced]

    def relabel_vertices(self, mapping: dict) -> "BiasedGraph":
        return BiasedGraph(self.graph.relabel_vertices(mapping), self.balanced, check=False, signature=self.signature)

    def relabel_edges(self, mapping: dict) -> "BiasedGraph":
        bal = [frozenset(mapping.get(e, e) for e in c) for c in self.balanced]
        sig = None if self.signature is None else tuple(frozenset(mapping.get(e, e) for e in s) for s in self.signature)
        return BiasedGraph(self.graph.relabel_edges(mapping), bal, check=False, signature=sig)

    def restrict(self, eids: Iterable[str], keep_vertices: bool = False) -> "BiasedGraph":
        keep = frozenset(eids)
        g = self.graph.subgraph(keep, keep_vertices=keep_vertices)
        return BiasedGraph(g, [c for c in self.balanced if c <= keep], check=False)

    def __repr__(self) -> str:
        return (f"BiasedGraph(|V|={len(self.graph.vertices)}, |E|={len(self.graph.edges)}, "
                f"balanced={len(self.balanced)}/{len(self.cycle_list)})")


# -- theta property --------------------------------------------------------

def _theta_pairs(omega: BiasedGraph, first: list[int], second: list[int], same: bool):
    for a_i, a in enumerate(first):
        va = omega.vmask(a)
        start = a_i + 1 if same else 0
        for b in second[start:]:
            if a == b or not a & b:
                continue
            u = a | b
            if popcount(u) == popcount(va | omega.vmask(b)) + 1:
                yield a, b, a ^ b


def validate_theta(omega: BiasedGraph) -> tuple[Cycle, Cycle, Cycle] | None:
    """None if the theta property holds, else a theta with exactly two balanced cycles."""
    bal = omega._cycle_masks[0]
    bal_set = set(bal)
    for a, b, c in _theta_pairs(omega, bal, bal, True):
        if c not in bal_set:
            return omega.labels(a), omega.labels(b), omega.labels(c)
    return None


def thetas(omega: BiasedGraph) -> list[tuple[Cycle, Cycle, Cycle]]:
    """Every theta subgraph once, as its three cycles."""
    allc = omega._cycle_masks[0] + omega._cycle_masks[1]
    seen = set()
    out = []
    for a, b, c in _theta_pairs(omega, allc, allc, True):
        key = a | b
        if key in seen:
            continue
        seen.add(key)
        out.append(tuple(sorted((omega.labels(x) for x in (a, b, c)), key=sorted)))
    return out


def contrabalanced_theta(omega: BiasedGraph) -> tuple[Cycle, Cycle, Cycle] | None:
    unb = omega._cycle_masks[1]
    unb_set = set(unb)
    for a, b, c in _theta_pairs(omega, unb, unb, True):
        if c in unb_set:
            return omega.labels(a), omega.labels(b), omega.labels(c)
    return None


def cycle_balanced(omega: BiasedGraph, c: Iterable[str]) -> bool:
    return omega.is_balanced_cycle(c)


# -- balance bookkeeping ---------------------------------------------------

def balanced_component_count(omega: BiasedGraph, eids: Iterable[str]) -> int:
    """b(X): components of the edge-induced subgraph with no unbalanced cycle."""
    unb = omega._cycle_masks[1]
    count = 0
    for comp in omega.graph.components(list(eids)):
        cm = omega.emask(comp)
        if not any(c & ~cm == 0 for c in unb):
            count += 1
    return count


def lambda_omega(omega: BiasedGraph, eids: Iterable[str]) -> int:
    x = set(eids)
    y = set(omega.graph.edge_ids) - x
    return len(omega.graph.vertices_of(x) & omega.graph.vertices_of(y))


def derived_bias(g: Multigraph, m: Matroid) -> BiasedGraph | None:
    """Balanced cycles are those whose edge set is a circuit of ``m``; None if not a bias."""
    if sorted(g.edge_ids) != sorted(m.ground):
        raise LabelMismatch("edge ids must equal the ground set")
    circ = set(m.circuit_sets())
    bal = [c for c in cycles(g) if c in circ]
    omega = BiasedGraph(g, bal, check=False)
    if validate_theta(omega) is not None:
        return None
    return omega


def balancing_vertices(omega: BiasedGraph) -> list:
    unb = omega._cycle_masks[1]
    out = []
    for vi, v in enumerate(omega.graph.vertices):
        bit = 1 << vi
        if all(omega.vmask(c) & bit for c in unb):
            out.append(v)
    return out


def is_balancing(omega: BiasedGraph, v) -> bool:
    bit = 1 << omega.graph.vertices.index(v)
    return all(omega.vmask(c) & bit for c in omega._cycle_masks[1])


def b_classes(omega: BiasedGraph, v) -> list[frozenset[str]]:
    """Partition of the links at ``v``: e ~ f iff a balanced cycle contains both."""
    loops = {e.id for e in omega.unbalanced_loops() if e.u == v}
    stripped = omega.restrict(set(omega.graph.edge_ids) - loops, keep_vertices=True) if loops else omega
    if not is_balancing(stripped, v):
        raise NotBalancing(f"{v!r} is not balancing")
    links = [e.id for e in omega.graph.links_at(v)]
    rel = {e: {e} for e in links}
    for c in omega.balanced:
        at_v = [e for e in c if e in rel]
        for e in at_v:
            rel[e].update(at_v)
    classes: list[frozenset[str]] = []
    seen: set[str] = set()
    for e in links:
        if e in seen:
            continue
        cls = frozenset(rel[e])
        for f in cls:
            if frozenset(rel[f]) != cls:
                raise AssertionError(f"b-relation not transitive at {v!r}: {e}, {f}")
        classes.append(cls)
        seen |= cls
    return sorted(classes, key=sorted)


# -- signatures ------------------------------------------------------------

def signature_from_tree(omega: BiasedGraph) -> tuple[frozenset[str] | None, tuple | None]:
    """``(Sigma, None)`` with B_Sigma = B, or ``(None, theta)`` with a contrabalanced theta."""
    w = contrabalanced_theta(omega)
    if w is not None:
        return None, w
    g = omega.graph
    tree: set[str] = set()
    seen: set = set()
    for root in g.vertices:
        if root in seen:
            continue
        seen.add(root)
        queue = [root]
        while queue:
            x = queue.pop(0)
            for e in g.incident(x):
                if e.is_loop:
                    continue
                y = e.other(x)
                if y not in seen:
                    seen.add(y)
                    tree.add(e.id)
                    queue.append(y)
    sigma = set()
    for e in g.edges:
        if e.id in tree:
            continue
        fund = _fundamental_cycle(g, tree, e)
        if fund not in omega.balanced:
            sigma.add(e.id)
    sigma = frozenset(sigma)
    for c in omega.cycle_list:
        if (len(c & sigma) % 2 == 0) != (c in omega.balanced):
            raise AssertionError(f"tree signature disagrees on cycle {sorted(c)}")
    return sigma, None


def _fundamental_cycle(g: Multigraph, tree: set[str], e: Edge) -> frozenset[str]:
    if e.is_loop:
        return frozenset([e.id])
    adj: dict = {v: [] for v in g.vertices}
    for t in tree:
        te = g.edge(t)
        adj[te.u].append((te.v, t))
        adj[te.v].append((te.u, t))
    prev = {e.u: None}
    stack = [e.u]
    while stack:
        x = stack.pop()
        for y, t in adj[x]:
            if y not in prev:
                prev[y] = (x, t)
                stack.append(y)
    path = [e.id]
    x = e.v
    while prev[x] is not None:
        x, t = prev[x]
        path.append(t)
    return frozenset(path)


# -- minors ------------------------------------------------------------------

def delete_edge(omega: BiasedGraph, eid: str) -> BiasedGraph:
    if not omega.graph.has_edge(eid):
        raise UnknownEdge(eid)
    g = omega.graph.delete_edges([eid])
    return BiasedGraph(g, [c for c in omega.balanced if eid not in c], check=False)


def contract_edge(omega: BiasedGraph, eid: str) -> BiasedGraph:
    if not omega.graph.has_edge(eid):
        raise UnknownEdge(eid)
    e = omega.graph.edge(eid)
    g = omega.graph
    if e.is_loop:
        if frozenset([eid]) in omega.balanced:
            return delete_edge(omega, eid)
        u = e.u
        new_edges = []
        bal = [c for c in omega.balanced if u not in g.vertices_of(c)]
        for f in g.edges:
            if f.id == eid:
                continue
            if f.is_loop and f.u == u:
                new_edges.append(f)
                bal.append(frozenset([f.id]))
            elif not f.is_loop and u in (f.u, f.v):
                w = f.other(u)
                new_edges.append(Edge(f.id, w, w))
            else:
                new_edges.append(f)
        return BiasedGraph(Multigraph(g.vertices, tuple(new_edges)), bal, check=False)
    u, v = e.u, e.v
    new_edges = []
    for f in g.edges:
        if f.id == eid:
            continue
        a = u if f.u == v else f.u
        b = u if f.v == v else f.v
        new_edges.append(Edge(f.id, a, b))
    h = Multigraph(tuple(x for x in g.vertices if x != v), tuple(new_edges))
    bal = [c for c in cycles(h) if c in omega.balanced or (c | {eid}) in omega.balanced]
    return BiasedGraph(h, bal, check=False)


def biased_minor(omega: BiasedGraph, delete: Iterable[str] = (), contract: Iterable[str] = ()) -> BiasedGraph:
    d, c = set(delete), set(contract)
    for x in d | c:
        if not omega.graph.has_edge(x):
            raise UnknownEdge(x)
    if d & c:
        raise BiasError(f"delete and contract overlap: {sorted(d & c)}")
    out = omega
    for x in sorted(d):
        out = delete_edge(out, x)
    for x in sorted(c):
        out = contract_edge(out, x)
    return out


# -- isomorphism ---------------------------------------------------------------

def _incidence(omega: BiasedGraph) -> nx.Graph:
    h = nx.Graph()
    for v in omega.graph.vertices:
        h.add_node(("v", v), kind="v")
    for e in omega.graph.edges:
        h.add_node(("e", e.id), kind="loop" if e.is_loop else "link")
        h.add_edge(("e", e.id), ("v", e.u))
        h.add_edge(("e", e.id), ("v", e.v))
    for i, c in enumerate(sorted(omega.balanced, key=sorted)):
        h.add_node(("c", i), kind="c")
        for e in c:
            h.add_edge(("c", i), ("e", e))
    return h


def biased_isomorphic(o1: BiasedGraph, o2: BiasedGraph) -> dict | None:
    """Vertex and edge maps ``{"vertices": ..., "edges": ...}`` or None."""
    g1, g2 = o1.graph, o2.graph
    if (len(g1.vertices), len(g1.edges), len(o1.balanced)) != (len(g2.vertices), len(g2.edges), len(o2.balanced)):
        return None
    gm = nxiso.GraphMatcher(_incidence(o1), _incidence(o2), node_match=lambda a, b: a["kind"] == b["kind"])
    for m in gm.isomorphisms_iter():
        return {
            "vertices": {a[1]: b[1] for a, b in m.items() if a[0] == "v"},
            "edges": {a[1]: b[1] for a, b in m.items() if a[0] == "e"},
        }
    return None


__all__ = [
    "BiasedGraph", "Explicit", "Signature", "BiasError", "ThetaViolation", "NotACycle", "LabelMismatch",
    "NotBalancing", "UnknownEdge", "GraphError", "validate_theta", "thetas", "contrabalanced_theta",
    "cycle_balanced", "balanced_component_count", "lambda_omega", "derived_bias", "balancing_vertices",
    "is_balancing", "b_classes", "signature_from_tree", "biased_minor", "delete_edge", "contract_edge",
    "biased_isomorphic",
]
