"""Deciding whether a matroid, or a matroid with a set of marked elements, is frame.

Small 3-connected pieces go to the exhaustive search.  Anything with a
2-separation is cut along it and the answer is assembled from the two
summands, composing witnesses with loop-sums and link-sums.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .biased import BiasedGraph, b_classes
from .cache import DiskCache, MemoryStore
from .frame import classify_biseparation, frame_matroid, link_sum, loop_sum, roll_up
from .graph import Edge, Multigraph
from .matroid import (
    Matroid,
    bits,
    components,
    connectivity_lambda,
    decompose_two_sum,
    delete,
    find_2_separation,
    is_isomorphic,
    restriction,
    uniform,
)
from .search import SearchLimits, dedupe, search

FRAME = "frame-with-witness"
NOT_FRAME = "not-frame-exhausted"
INCONCLUSIVE = "inconclusive-budget"


class PreconditionViolation(ValueError):
    pass


class TheoremViolation(AssertionError):
    """Raised when a computation contradicts a proved structural statement."""


@dataclass
class RepVerdict:
    status: str
    witnesses: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    route: str = "search"

    @property
    def frame(self) -> bool | None:
        return {FRAME: True, NOT_FRAME: False}.get(self.status)

    @property
    def witness(self) -> BiasedGraph | None:
        return self.witnesses[0] if self.witnesses else None


def _combine(*statuses: str) -> str:
    """Conjunction of verdicts: any refutation wins, then any budget miss."""
    if NOT_FRAME in statuses:
        return NOT_FRAME
    if INCONCLUSIVE in statuses:
        return INCONCLUSIVE
    return FRAME


def disjoint_union(o1: BiasedGraph, o2: BiasedGraph) -> BiasedGraph:
    n1 = len(o1.graph.vertices)
    ren1 = {v: i for i, v in enumerate(o1.graph.vertices)}
    ren2 = {v: n1 + i for i, v in enumerate(o2.graph.vertices)}
    a, b = o1.relabel_vertices(ren1), o2.relabel_vertices(ren2)
    g = Multigraph(a.graph.vertices + b.graph.vertices, a.graph.edges + b.graph.edges)
    return BiasedGraph(g, a.balanced | b.balanced, check=False)


def add_balanced_loops(omega: BiasedGraph, labels) -> BiasedGraph:
    g = omega.graph
    v = g.vertices[0] if g.vertices else 0
    verts = g.vertices or (0,)
    extra = tuple(Edge(x, v, v) for x in sorted(labels))
    h = Multigraph(verts, g.edges + extra)
    return BiasedGraph(h, set(omega.balanced) | {frozenset([x]) for x in labels}, check=False)


def u24_piece(labels, base: str) -> BiasedGraph:
    """Three parallel links and an unbalanced loop ``base``; its frame matroid is U24."""
    edges = [(x, 0, 1) for x in labels] + [(base, 0, 0)]
    return BiasedGraph.contrabalanced(Multigraph.build(edges, (0, 1)))


class Solver:
    """Frame and graphic decisions with memoisation and an optional disk cache.

    ``limits`` apply to each leaf search separately.
    """

    def __init__(self, limits: SearchLimits | None = None, cache_dir=None, fast_path: bool = True,
                 verify: bool = True):
        self.limits = limits or SearchLimits()
        self.memo = MemoryStore()
        self.disk = DiskCache(cache_dir) if cache_dir else None
        self.fast_path = fast_path
        self.verify = verify
        self.counters = {"nodes": 0, "leaves": 0, "searches": 0, "decompositions": 0, "cache_hits": 0,
                         "elapsed": 0.0}

    # -- store --------------------------------------------------------------
    def _lookup(self, m: Matroid, l, mode: str) -> RepVerdict | None:
        for store in (self.memo, self.disk):
            if store is None:
                continue
            hit = store.get(m, l, mode)
            if hit is None:
                continue
            payload, mp = hit
            if payload["status"] == INCONCLUSIVE:
                continue
            self.counters["cache_hits"] += 1
            ws = [w.relabel_edges(mp) for w in payload["witnesses"]]
            if store is self.disk:
                self.memo.put(m, l, mode, {"status": payload["status"], "witnesses": ws})
            return RepVerdict(payload["status"], ws, dict(payload.get("stats", {})), "cache")
        return None

    def _store(self, m: Matroid, l, mode: str, v: RepVerdict) -> RepVerdict:
        if v.status == INCONCLUSIVE:
            return v
        payload = {"status": v.status, "witnesses": list(v.witnesses), "stats": dict(v.stats)}
        self.memo.put(m, l, mode, payload)
        if self.disk is not None:
            self.disk.put(m, l, mode, payload)
        return v

    def _search(self, m: Matroid, l, mode: str, max_witnesses: int | None) -> RepVerdict:
        out = search(m, l, mode=mode, limits=self.limits, max_witnesses=max_witnesses)
        st = out.stats.as_dict()
        self.counters["searches"] += 1
        self.counters["nodes"] += st["nodes"]
        self.counters["leaves"] += st["leaves"]
        self.counters["elapsed"] += st["elapsed"]
        if out.witnesses:
            return RepVerdict(FRAME, out.witnesses, st)
        return RepVerdict(NOT_FRAME if out.exhausted else INCONCLUSIVE, [], st)

    def _check(self, m: Matroid, l, w: BiasedGraph, what: str) -> None:
        if not self.verify:
            return
        for x in l:
            e = w.graph.edge(x)
            if not e.is_loop or frozenset([x]) in w.balanced:
                raise TheoremViolation(f"{what}: {x} is not an unbalanced loop of the witness")
        if frame_matroid(w) != m:
            raise TheoremViolation(f"{what}: composed witness does not represent the matroid")

    # -- public API ---------------------------------------------------------
    def enumerate_l_biased(self, m: Matroid, l=()) -> RepVerdict:
        """Every L-biased graph representing ``m``, one per isomorphism class."""
        l = frozenset(l)
        if m.loops():
            raise PreconditionViolation("matroid has loops")
        hit = self._lookup(m, l, "frame-all")
        if hit is not None:
            return hit
        v = self._search(m, l, "frame", None)
        v.witnesses = dedupe(v.witnesses)
        return self._store(m, l, "frame-all", v)

    def is_graphic(self, m: Matroid) -> RepVerdict:
        hit = self._lookup(m, (), "graphic")
        if hit is not None:
            return hit
        return self._store(m, (), "graphic", self._graphic(m))

    def is_frame_matroidal(self, m: Matroid, l=()) -> RepVerdict:
        l = frozenset(l)
        unknown = l - set(m.ground)
        if unknown:
            raise PreconditionViolation(f"L has elements outside the ground set: {sorted(unknown)}")
        hit = self._lookup(m, l, "frame")
        if hit is not None:
            return hit
        return self._store(m, l, "frame", self._frame(m, l))

    def is_frame(self, m: Matroid) -> RepVerdict:
        if self.fast_path:
            n, l, pieces = strip_u24(m)
            if pieces:
                v = self.is_frame_matroidal(n, l)
                if v.frame:
                    w = v.witness
                    for base, labels in pieces:
                        w = loop_sum(w, base, u24_piece(labels, base), base, check=False)
                    self._check(m, (), w, "U24 reattachment")
                    return RepVerdict(FRAME, [w], v.stats, "u24-strip")
                return RepVerdict(v.status, [], v.stats, "u24-strip")
        return self.is_frame_matroidal(m, ())

    # -- recursion ----------------------------------------------------------
    def _graphic(self, m: Matroid) -> RepVerdict:
        loops = set(m.labels(m.loops()))
        if loops:
            v = self.is_graphic(delete(m, loops))
            if not v.frame:
                return RepVerdict(v.status, [], v.stats, "loops")
            return RepVerdict(FRAME, [add_balanced_loops(v.witness, loops)], v.stats, "loops")
        comps = components(m)
        if len(comps) > 1:
            parts = [self.is_graphic(restriction(m, c)) for c in comps]
            status = _combine(*(p.status for p in parts))
            if status != FRAME:
                return RepVerdict(status, [], {}, "components")
            w = parts[0].witness
            for p in parts[1:]:
                w = disjoint_union(w, p.witness)
            return RepVerdict(FRAME, [w], {}, "components")
        sep = find_2_separation(m) if m.n >= 4 else None
        if sep is None:
            return self._search(m, (), "graphic", 1)
        self.counters["decompositions"] += 1
        m1, p, m2, _ = decompose_two_sum(m, sep)
        v1 = self.is_graphic(m1)
        if v1.frame is False:
            return RepVerdict(NOT_FRAME, [], {}, "2-sum")
        v2 = self.is_graphic(m2)
        status = _combine(v1.status, v2.status)
        if status != FRAME:
            return RepVerdict(status, [], {}, "2-sum")
        w = link_sum(v1.witness, p, v2.witness, p, check=False)
        w = BiasedGraph.all_balanced(w.graph)
        self._check(m, (), w, "graphic 2-sum")
        return RepVerdict(FRAME, [w], {}, "2-sum")

    def _frame(self, m: Matroid, l: frozenset) -> RepVerdict:
        loops = set(m.labels(m.loops()))
        if loops & l:
            return RepVerdict(NOT_FRAME, [], {"reason": "a matroid loop is marked"}, "loops")
        if loops:
            v = self.is_frame_matroidal(delete(m, loops), l)
            if not v.frame:
                return RepVerdict(v.status, [], v.stats, "loops")
            return RepVerdict(FRAME, [add_balanced_loops(v.witness, loops)], v.stats, "loops")
        comps = components(m)
        if len(comps) > 1:
            parts = []
            for c in comps:
                p = self.is_frame_matroidal(restriction(m, c), l & c)
                parts.append(p)
                if p.frame is False:
                    return RepVerdict(NOT_FRAME, [], {}, "components")
            status = _combine(*(p.status for p in parts))
            if status != FRAME:
                return RepVerdict(status, [], {}, "components")
            w = parts[0].witness
            for p in parts[1:]:
                w = disjoint_union(w, p.witness)
            return RepVerdict(FRAME, [w], {}, "components")
        sep = find_2_separation(m) if m.n >= 4 else None
        if sep is None:
            return self._search(m, l, "frame", 1)
        self.counters["decompositions"] += 1
        m1, p, m2, _ = decompose_two_sum(m, sep)
        side = [(m1, l & set(m1.ground)), (m2, l & set(m2.ground))]
        base = [self.is_frame_matroidal(mi, li) for mi, li in side]
        if any(b.frame is False for b in base):
            return RepVerdict(NOT_FRAME, [], {"reason": "a summand is not frame"}, "2-sum")
        pending = [b.status for b in base]
        # a graphic summand without marked elements glues onto any witness of the other
        for i in (0, 1):
            mi, li = side[i]
            if li:
                continue
            g = self.is_graphic(mi)
            pending.append(g.status)
            if g.frame and base[1 - i].frame:
                w = self._attach_graphic(g.witness, base[1 - i].witness, p)
                self._check(m, l, w, "graphic attachment")
                return RepVerdict(FRAME, [w], {}, "2-sum/graphic")
        # otherwise both summands must stay frame with the basepoint marked
        marked = []
        for mi, li in side:
            v = self.is_frame_matroidal(mi, li | {p})
            marked.append(v)
            if v.frame is False:
                break
        if len(marked) == 2 and all(v.frame for v in marked):
            w = loop_sum(marked[0].witness, p, marked[1].witness, p, check=False)
            self._check(m, l, w, "loop-sum")
            return RepVerdict(FRAME, [w], {}, "2-sum/loop")
        if any(v.frame is False for v in marked) and INCONCLUSIVE not in pending:
            return RepVerdict(NOT_FRAME, [], {}, "2-sum")
        return RepVerdict(INCONCLUSIVE, [], {}, "2-sum")

    def _attach_graphic(self, graph_w: BiasedGraph, other: BiasedGraph, p: str) -> BiasedGraph:
        e = other.graph.edge(p)
        if not e.is_loop:
            return link_sum(graph_w, p, other, p, check=False)
        if frozenset([p]) in other.balanced:
            raise TheoremViolation("basepoint is a balanced loop in a connected summand")
        v = graph_w.graph.edge(p).u
        cls = next(c for c in b_classes(graph_w, v) if p in c)
        rolled = roll_up(graph_w, v, cls, check=False)
        return loop_sum(rolled, p, other, p, check=False)

    # -- tameness -----------------------------------------------------------
    def retame(self, m: Matroid, l, side_a) -> BiasedGraph | None:
        """A representation in which the given 2-separation is of type 1 or 2."""
        side_a = frozenset(side_a)
        if len(side_a) < 2 or m.n - len(side_a) < 2 or connectivity_lambda(m, m.mask(side_a)) != 2:
            raise PreconditionViolation("not a 2-separation")
        v = self.enumerate_l_biased(m, l)
        if v.frame is False:
            raise PreconditionViolation("matroidal is not frame")
        for w in v.witnesses:
            if classify_biseparation(w, side_a).type in ("type1", "type2"):
                return w
        # every labelled witness, not only the isomorphism representatives
        full = search(m, l, mode="frame", limits=self.limits)
        for w in full.witnesses:
            if classify_biseparation(w, side_a).type in ("type1", "type2"):
                return w
        if full.exhausted:
            raise TheoremViolation("no representation makes the separation tame")
        return None


def strip_u24(m: Matroid):
    """Peel off U24 summands hanging on a triangle.

    Returns ``(N, L, pieces)`` where each piece is ``(basepoint, triangle)``.
    """
    pieces = []
    l: set[str] = set()
    cur = m
    changed = True
    while changed and cur.n >= 7:
        changed = False
        for c in cur.circuits:
            if bin(c).count("1") != 3 or any(cur.ground[i] in l for i in bits(c)):
                continue
            if connectivity_lambda(cur, c) != 2:
                continue
            tri = [cur.ground[i] for i in bits(c)]
            m1, p, m2, _ = decompose_two_sum(cur, tri)
            if m1.n != 4 or m2.n < 4:
                continue
            if is_isomorphic(m1, uniform(2, 4, m1.ground)) is None:
                continue
            pieces.append((p, tuple(sorted(tri))))
            l.add(p)
            cur = m2
            changed = True
            break
    return cur, frozenset(l), pieces[::-1]


def is_frame(m: Matroid, **kw) -> RepVerdict:
    return Solver(**kw).is_frame(m)


def is_frame_matroidal(m: Matroid, l=(), **kw) -> RepVerdict:
    return Solver(**kw).is_frame_matroidal(m, l)


def is_graphic(m: Matroid, **kw) -> RepVerdict:
    return Solver(**kw).is_graphic(m)


def enumerate_l_biased(m: Matroid, l=(), **kw) -> RepVerdict:
    return Solver(**kw).enumerate_l_biased(m, l)


def direct_verdict(m: Matroid, l=(), limits: SearchLimits | None = None) -> RepVerdict:
    """Plain search without decomposition, for cross-checking the recursion."""
    l = frozenset(l)
    loops = set(m.labels(m.loops()))
    if loops & l:
        return RepVerdict(NOT_FRAME, [], {}, "loops")
    mm = delete(m, loops) if loops else m
    out = search(mm, l, mode="frame", limits=limits, max_witnesses=1)
    if out.witnesses:
        w = out.witnesses[0]
        return RepVerdict(FRAME, [add_balanced_loops(w, loops) if loops else w], out.stats.as_dict())
    return RepVerdict(NOT_FRAME if out.exhausted else INCONCLUSIVE, [], out.stats.as_dict())


__all__ = ["FRAME", "NOT_FRAME", "INCONCLUSIVE", "RepVerdict", "Solver", "PreconditionViolation",
           "TheoremViolation", "is_frame", "is_frame_matroidal", "is_graphic", "enumerate_l_biased",
           "strip_u24", "direct_verdict", "disjoint_union", "u24_piece"]
