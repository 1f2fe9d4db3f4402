"""Exhaustive search for biased graphs representing a matroid.

Every element is placed as a loop or a link on a fixed number of vertices.
Bias is never guessed: a cycle is balanced iff its edge set is a circuit.
Vertices are numbered in order of first use, which removes all vertex
relabelling symmetry without a canonical-form check at the leaves.

Pruning keeps F(Omega|X) equal to M|X for the placed prefix X.  When the
next element e joins X the two matroids can only disagree on circuits
through e, so it suffices that

* every circuit of M inside X+e through e is dependent in the graph, and
* e is outside the graph closure of X - D for every cocircuit D of M
  containing e (these are the maximal sets not spanning e in M).

Both checks are necessary for any valid completion, so no representation
is lost; the full circuit comparison at the leaf makes acceptance exact.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

from .biased import BiasedGraph, validate_theta
from .frame import frame_matroid
from .graph import Edge, Multigraph, cycles
from .matroid import Matroid, bits, cocircuits, popcount

REFERENCE_LIMIT = 6


class BudgetExceeded(RuntimeError):
    pass


@dataclass
class SearchLimits:
    max_vertices: int | None = None
    node_budget: int = 10**8
    time_budget: float = 600.0

    def __post_init__(self):
        if self.node_budget <= 0 or self.time_budget <= 0:
            raise ValueError("budgets must be positive")
        if self.max_vertices is not None and self.max_vertices <= 0:
            raise ValueError("max_vertices must be positive")


@dataclass
class SearchStats:
    nodes: int = 0
    leaves: int = 0
    accepted: int = 0
    elapsed: float = 0.0

    def add(self, other: "SearchStats") -> None:
        self.nodes += other.nodes
        self.leaves += other.leaves
        self.accepted += other.accepted
        self.elapsed += other.elapsed

    def as_dict(self) -> dict:
        return {"nodes": self.nodes, "leaves": self.leaves, "accepted": self.accepted,
                "elapsed": round(self.elapsed, 3)}


@dataclass
class SearchOutcome:
    witnesses: list
    stats: SearchStats
    exhausted: bool


def _element_order(m: Matroid, l_mask: int) -> list[int]:
    """L first, then greedily the element closing the most circuits."""
    order: list[int] = []
    placed = 0
    remaining = set(range(m.n))
    deg = [len(m._by_elem[i]) for i in range(m.n)]
    while remaining:
        pool = [i for i in remaining if l_mask >> i & 1] or list(remaining)

        def score(i):
            b = placed | 1 << i
            closes = sum(1 for c in m._by_elem[i] if c & ~b == 0)
            touches = sum(1 for c in m._by_elem[i] if c & placed)
            return (-closes, -touches, -deg[i], i)

        nxt = min(pool, key=score)
        order.append(nxt)
        placed |= 1 << nxt
        remaining.discard(nxt)
    return order


class _Engine:
    def __init__(self, m: Matroid, l_mask: int, nv: int, balanced: bool, limits: SearchLimits,
                 max_witnesses: int | None, prune: bool = True):
        self.m = m
        self.n = m.n
        self.l_mask = l_mask
        self.nv = nv
        self.balanced = balanced
        self.limits = limits
        self.max_witnesses = max_witnesses
        self.prune = prune
        self.order = _element_order(m, l_mask)
        self.circuit_set = m.circuits
        pos = {e: k for k, e in enumerate(self.order)}
        self.closing: list[list[int]] = [[] for _ in range(self.n)]
        for c in m.circuits:
            last = max(bits(c), key=lambda i: pos[i])
            self.closing[last].append(c)
        self.max_y: list[list[int]] = [[] for _ in range(self.n)]
        if prune and self.n > 1:
            cocirc = cocircuits(m)
            prefix = 0
            for e in self.order:
                ys = {prefix & ~d for d in cocirc if d >> e & 1}
                maximal = [y for y in ys if not any(y != z and y & ~z == 0 for z in ys)]
                self.max_y[e] = sorted(maximal)
                prefix |= 1 << e
        self.ends = [None] * self.n
        self.adj: list[list[tuple[int, int]]] = [[] for _ in range(nv)]
        self.stats = SearchStats()
        self.witnesses: list[BiasedGraph] = []
        self.start = time.monotonic()
        self.done = False

    # -- incremental checks ------------------------------------------------
    def _component(self, v: int, ymask: int) -> tuple[int, set]:
        verts = {v}
        emask = 0
        stack = [v]
        adj = self.adj
        while stack:
            x = stack.pop()
            for y, i in adj[x]:
                if not ymask >> i & 1:
                    continue
                emask |= 1 << i
                if y not in verts:
                    verts.add(y)
                    stack.append(y)
        return emask, verts

    def _circuit_dependent(self, c: int) -> bool:
        parent: dict[int, int] = {}

        def find(x):
            while parent.setdefault(x, x) != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        deg: dict[int, int] = {}
        edges_in: dict[int, int] = {}
        for i in bits(c):
            a, b = self.ends[i]
            deg[a] = deg.get(a, 0) + 1
            deg[b] = deg.get(b, 0) + 1
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        for i in bits(c):
            r = find(self.ends[i][0])
            edges_in[r] = edges_in.get(r, 0) + 1
        verts_in: dict[int, int] = {}
        for v in deg:
            r = find(v)
            verts_in[r] = verts_in.get(r, 0) + 1
        for r, ne in edges_in.items():
            if ne - verts_in[r] + 1 >= 2:
                return True
        if len(edges_in) == 1 and all(d == 2 for d in deg.values()):
            return True
        return False

    def _unbalanced(self, emask: int, verts: set) -> bool:
        return emask != 0 and self.m._rank(emask) == len(verts)

    def _closure_ok(self, e: int, y: int) -> bool:
        """False if e lies in the graph closure of Y (Y does not span e in M)."""
        a, b = self.ends[e]
        touched_a = any(y >> i & 1 for _, i in self.adj[a])
        if a == b:
            if not touched_a:
                return True
            em, vs = self._component(a, y)
            return not self._unbalanced(em, vs)
        touched_b = any(y >> i & 1 for _, i in self.adj[b])
        if not touched_a or not touched_b:
            return True
        em, vs = self._component(a, y)
        if b in vs:
            # same component: closure only if it is unbalanced
            return not self._unbalanced(em, vs)
        if not self._unbalanced(em, vs):
            return True
        em2, vs2 = self._component(b, y)
        return not self._unbalanced(em2, vs2)

    def _balanced_ok(self, e: int, placed: int) -> bool:
        a, _ = self.ends[e]
        em, vs = self._component(a, placed | 1 << e)
        return self.m._rank(em) == len(vs) - 1

    def _accept(self, e: int, placed: int) -> bool:
        if self.balanced and not self._balanced_ok(e, placed):
            return False
        if not self.prune:
            return True
        for c in self.closing[e]:
            if not self._circuit_dependent(c):
                return False
        for y in self.max_y[e]:
            if not self._closure_ok(e, y):
                return False
        return True

    # -- search --------------------------------------------------------------
    def _tick(self):
        st = self.stats
        st.nodes += 1
        if st.nodes > self.limits.node_budget:
            raise BudgetExceeded("node budget")
        if st.nodes % 2048 == 0 and time.monotonic() - self.start > self.limits.time_budget:
            raise BudgetExceeded("time budget")

    def _placements(self, e: int, k: int):
        nv = self.nv
        top = min(k, nv - 1)
        if self.l_mask >> e & 1:
            for v in range(top + 1):
                yield (v, v)
            return
        if not self.balanced:
            for v in range(top + 1):
                yield (v, v)
        for a in range(k):
            for b in range(a + 1, top + 1):
                yield (a, b)
        if k + 1 <= nv - 1:
            yield (k, k + 1)

    def _place(self, e, a, b):
        self.ends[e] = (a, b)
        self.adj[a].append((b, e))
        if a != b:
            self.adj[b].append((a, e))

    def _unplace(self, e, a, b):
        self.adj[a].pop()
        if a != b:
            self.adj[b].pop()
        self.ends[e] = None

    def run(self) -> None:
        self._rec(0, 0, 0)

    def _rec(self, depth: int, k: int, placed: int) -> None:
        if self.done:
            return
        if depth == self.n:
            self._leaf(k)
            return
        e = self.order[depth]
        remaining = self.n - depth
        for a, b in self._placements(e, k):
            nk = max(k, b + 1)
            if self.nv - nk > 2 * (remaining - 1):
                continue
            self._tick()
            self._place(e, a, b)
            if self._accept(e, placed):
                self._rec(depth + 1, nk, placed | 1 << e)
            self._unplace(e, a, b)
            if self.done:
                return

    def _leaf(self, k: int) -> None:
        self.stats.leaves += 1
        if k != self.nv:
            return
        omega = self.build()
        if omega is None:
            return
        self.stats.accepted += 1
        self.witnesses.append(omega)
        if self.max_witnesses is not None and len(self.witnesses) >= self.max_witnesses:
            self.done = True

    def build(self) -> BiasedGraph | None:
        m = self.m
        g = Multigraph(tuple(range(self.nv)), tuple(Edge(m.ground[i], *self.ends[i]) for i in range(self.n)))
        if not g.is_connected() and self.n > 0:
            return None
        idx = {x: i for i, x in enumerate(m.ground)}
        bal = []
        for c in cycles(g):
            mask = sum(1 << idx[x] for x in c)
            if mask in self.circuit_set:
                bal.append(c)
            elif self.balanced:
                return None
        omega = BiasedGraph(g, bal, check=False)
        if validate_theta(omega) is not None:
            return None
        f = frame_matroid(omega)
        if f.circuits != m.circuits:
            return None
        return omega


def _vertex_counts(m: Matroid, l_mask: int, mode: str, limits: SearchLimits) -> list[tuple[int, bool]]:
    r = m.r
    out = []
    if mode in ("frame", "unbalanced"):
        out.append((r, False))
    if mode == "graphic" or (mode == "frame" and not l_mask):
        out.append((r + 1, True))
    if limits.max_vertices is not None:
        out = [(nv, bal) for nv, bal in out if nv <= limits.max_vertices]
    return [(nv, bal) for nv, bal in out if nv >= 1]


def search(m: Matroid, l=(), mode: str = "frame", limits: SearchLimits | None = None,
           max_witnesses: int | None = None, prune: bool = True) -> SearchOutcome:
    """All L-biased graphs Omega with F(Omega) = M (identity labels), per vertex count.

    ``mode`` is "frame" (unbalanced on r vertices, plus balanced on r+1 when
    L is empty), "graphic" (balanced only) or "unbalanced".
    """
    limits = limits or SearchLimits()
    l_mask = m.mask(l)
    if m.loops():
        raise ValueError("strip matroid loops before searching")
    stats = SearchStats()
    witnesses: list[BiasedGraph] = []
    t0 = time.monotonic()
    exhausted = True
    for nv, bal in _vertex_counts(m, l_mask, mode, limits):
        if m.n == 0:
            break
        remaining_budget = SearchLimits(limits.max_vertices, max(1, limits.node_budget - stats.nodes),
                                        max(1e-3, limits.time_budget - (time.monotonic() - t0)))
        eng = _Engine(m, l_mask, nv, bal, remaining_budget,
                      None if max_witnesses is None else max_witnesses - len(witnesses), prune)
        try:
            eng.run()
        except BudgetExceeded:
            exhausted = False
        stats.add(eng.stats)
        witnesses.extend(eng.witnesses)
        if not exhausted:
            break
        if max_witnesses is not None and len(witnesses) >= max_witnesses:
            break
    if m.n == 0:
        witnesses.append(BiasedGraph(Multigraph((0,), ()), (), check=False))
    stats.elapsed = time.monotonic() - t0
    return SearchOutcome(witnesses, stats, exhausted)


def reference_search(m: Matroid, l=(), mode: str = "frame") -> list[BiasedGraph]:
    """Unpruned cartesian search over all placements; only for tiny inputs."""
    if m.n > REFERENCE_LIMIT and not (m.r <= 2 and m.n <= 8):
        raise ValueError("reference search is limited to tiny matroids")
    l_mask = m.mask(l)
    out = []
    for nv, bal in _vertex_counts(m, l_mask, mode, SearchLimits()):
        verts = range(nv)
        links = [(a, b) for a, b in itertools.combinations(verts, 2)]
        loops = [] if bal else [(v, v) for v in verts]
        choices = []
        for i in range(m.n):
            choices.append([(v, v) for v in verts] if l_mask >> i & 1 else loops + links)
        eng = _Engine(m, l_mask, nv, bal, SearchLimits(), None, prune=False)
        for combo in itertools.product(*choices):
            if {v for ab in combo for v in ab} != set(verts):
                continue
            eng.ends = list(combo)
            w = eng.build()
            if w is not None:
                out.append(w)
    return out


def canonical_relabel(omega: BiasedGraph) -> BiasedGraph:
    """Vertices renumbered in order of first use along the edge list."""
    seen: dict = {}
    for e in omega.graph.edges:
        for v in (e.u, e.v):
            if v not in seen:
                seen[v] = len(seen)
    for v in omega.graph.vertices:
        if v not in seen:
            seen[v] = len(seen)
    return omega.relabel_vertices(seen)


def witness_key(omega: BiasedGraph) -> tuple:
    g = omega.graph
    return (len(g.vertices), tuple(sorted((e.id, min(e.u, e.v), max(e.u, e.v)) for e in g.edges)))


def popcount_profile(omega: BiasedGraph) -> tuple:
    g = omega.graph
    degs = sorted(g.degree(v) for v in g.vertices)
    loops = sum(1 for e in g.edges if e.is_loop)
    return (len(g.vertices), len(g.edges), loops, len(omega.balanced), tuple(degs),
            tuple(sorted(len(c) for c in omega.balanced)))


def dedupe(witnesses: list[BiasedGraph]) -> list[BiasedGraph]:
    """One representative per biased-isomorphism class, in input order."""
    from .biased import biased_isomorphic

    reps: list[tuple[tuple, BiasedGraph]] = []
    for w in witnesses:
        key = popcount_profile(w)
        if any(k == key and biased_isomorphic(w, r) is not None for k, r in reps):
            continue
        reps.append((key, w))
    return [r for _, r in reps]


__all__ = ["SearchLimits", "SearchStats", "SearchOutcome", "BudgetExceeded", "search", "reference_search",
           "dedupe", "canonical_relabel", "witness_key", "popcount"]
