"""The frame matroid of a biased graph and operations preserving it."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable

from .biased import (
    BiasedGraph,
    NotBalancing,
    UnknownEdge,
    b_classes,
    balanced_component_count,
    is_balancing,
)
from .graph import Edge, Multigraph, SizeLimitExceeded, cycles, paths_between
from .matroid import Matroid, _minimal, bits, fresh_label, popcount, two_sum

FRAME_EDGE_LIMIT = 24
CHECK_LIMIT = 20


class FrameError(ValueError):
    pass


class SameVertex(FrameError):
    pass


class NotSignedGraph(FrameError):
    pass


class NotABClass(FrameError):
    pass


class WrongEdgeKind(FrameError):
    pass


class LinkSumFirstArgUnbalanced(FrameError):
    pass


class NotA2Separation(FrameError):
    pass


class NotType1Or2(FrameError):
    pass


class FlipConditionViolated(FrameError):
    def __init__(self, condition: int, witness):
        self.condition = condition
        self.witness = witness
        super().__init__(f"twisted flip condition {condition} fails at {witness!r}")


# -- F(Omega) --------------------------------------------------------------

def frame_matroid(omega: BiasedGraph) -> Matroid:
    """Circuits: balanced cycles, tight and loose handcuffs and thetas whose cycles are all unbalanced."""
    g = omega.graph
    if len(g.edges) > FRAME_EDGE_LIMIT:
        raise SizeLimitExceeded(f"frame matroid capped at {FRAME_EDGE_LIMIT} edges")
    bal, unb = omega._cycle_masks
    circ = set(bal)
    unb_set = set(unb)
    vm = [omega.vmask(c) for c in unb]
    vidx = {v: i for i, v in enumerate(g.vertices)}
    for i, a in enumerate(unb):
        for j in range(i + 1, len(unb)):
            b = unb[j]
            shared_v = vm[i] & vm[j]
            if a & b:
                # theta: the third cycle must be unbalanced too
                if popcount(a | b) == popcount(vm[i] | vm[j]) + 1 and (a ^ b) in unb_set:
                    circ.add(a | b)
                continue
            k = popcount(shared_v)
            if k == 1:
                circ.add(a | b)
            elif k == 0:
                avoid = {v for v in g.vertices if (vm[i] | vm[j]) >> vidx[v] & 1}
                starts = [v for v in g.vertices if vm[i] >> vidx[v] & 1]
                ends = {v for v in g.vertices if vm[j] >> vidx[v] & 1}
                for x in starts:
                    for y in ends:
                        for p in paths_between(g, x, y, avoid=avoid - {x, y}):
                            circ.add(a | b | omega.emask(p))
    ids = g.edge_ids
    return Matroid(ids, circ)


def frame_rank(omega: BiasedGraph, eids: Iterable[str]) -> int:
    """r(X) = |V(X)| - b(X)."""
    x = list(eids)
    return len(omega.graph.vertices_of(x)) - balanced_component_count(omega, x)


def _check_same(omega: BiasedGraph, m: Matroid, what: str) -> None:
    if len(omega.graph.edges) <= CHECK_LIMIT and frame_matroid(omega) != m:
        raise AssertionError(f"{what} changed the frame matroid")


def _fresh_vertex(used: Iterable, base) -> Hashable:
    used = set(used)
    if isinstance(base, int) and all(isinstance(v, int) for v in used):
        return max(used, default=-1) + 1
    name = f"{base}'"
    while name in used:
        name += "'"
    return name


def _drop_isolated(g: Multigraph) -> Multigraph:
    touched = g.vertices_of(g.edge_ids)
    return Multigraph(tuple(v for v in g.vertices if v in touched), g.edges)


# -- pinch / split -----------------------------------------------------------

def pinch(h: Multigraph, u, v) -> BiasedGraph:
    """Identify ``u`` into ``v`` with Sigma = delta(u); F of the result is M(h)."""
    if u == v:
        raise SameVertex(f"cannot pinch {u!r} with itself")
    sigma = frozenset(e.id for e in h.links_at(u))
    g = h.delete_vertex(u)
    edges = tuple(Edge(e.id, v if e.u == u else e.u, v if e.v == u else e.v) for e in h.edges)
    g = Multigraph(tuple(x for x in h.vertices if x != u), edges)
    return BiasedGraph.from_signature(g, [sigma])


def split(omega: BiasedGraph, u) -> Multigraph:
    """Split the balancing vertex ``u`` into u', u'' so that M(result) = F(omega)."""
    g = omega.graph
    classes = b_classes(omega, u)
    unb_loops = {e.id for e in omega.unbalanced_loops() if e.u == u}
    rest = g.delete_vertex(u)
    comp_of = {}
    for i, comp in enumerate(rest.vertex_components()):
        for x in comp:
            comp_of[x] = i
    by_comp: dict[int, list[frozenset[str]]] = {}
    for cls in classes:
        any_edge = g.edge(next(iter(cls)))
        by_comp.setdefault(comp_of[any_edge.other(u)], []).append(cls)
    to_first: set[str] = set()
    for ci, cls_list in by_comp.items():
        if len(cls_list) > 2:
            raise NotSignedGraph(f"{len(cls_list)} b-classes at {u!r} in one block")
        if len(cls_list) == 2:
            to_first |= min(cls_list, key=sorted)
    u1 = _fresh_vertex(g.vertices, u)
    u2 = _fresh_vertex(list(g.vertices) + [u1], u1)
    edges = []
    for e in g.edges:
        if e.is_loop and e.u == u:
            edges.append(Edge(e.id, u1, u2) if e.id in unb_loops else Edge(e.id, u2, u2))
        elif u in (e.u, e.v):
            w = e.other(u)
            edges.append(Edge(e.id, u1 if e.id in to_first else u2, w))
        else:
            if e.is_loop and frozenset([e.id]) not in omega.balanced:
                raise NotBalancing(f"unbalanced loop {e.id} away from {u!r}")
            edges.append(e)
    verts = tuple(x for x in g.vertices if x != u) + (u1, u2)
    return Multigraph(verts, tuple(edges))


# -- roll-up / unroll ----------------------------------------------------------

def roll_up(omega: BiasedGraph, u, cls: Iterable[str], check: bool = True) -> BiasedGraph:
    """Replace every edge ``u w`` of the b-class ``cls`` by an unbalanced loop at ``w``."""
    cls = frozenset(cls)
    classes = b_classes(omega, u)
    if cls not in classes:
        raise NotABClass(f"{sorted(cls)} is not a b-class at {u!r}")
    g = omega.graph
    edges = []
    for e in g.edges:
        if e.id in cls:
            w = e.other(u)
            edges.append(Edge(e.id, w, w))
        else:
            edges.append(e)
    bal = [c for c in omega.balanced if not c & cls]
    out = BiasedGraph(Multigraph(g.vertices, tuple(edges)), bal, check=False)
    if check:
        _check_same(out, frame_matroid(omega), "roll-up")
    return out


def unroll(omega: BiasedGraph, u, check: bool = True) -> BiasedGraph:
    """Turn every unbalanced loop into a link to ``u``; bias from the b-classes plus the former loops."""
    loops = omega.unbalanced_loops()
    loop_ids = {e.id for e in loops}
    stripped = omega.restrict(set(omega.graph.edge_ids) - loop_ids, keep_vertices=True)
    if not is_balancing(stripped, u):
        raise NotBalancing(f"{u!r} is not balancing after deleting unbalanced loops")
    classes = b_classes(stripped, u)
    g = omega.graph
    edges = tuple(Edge(e.id, u, e.u) if e.id in loop_ids else e for e in g.edges)
    sigma = list(classes) + ([frozenset(loop_ids)] if loop_ids else [])
    out = BiasedGraph.from_signature(Multigraph(g.vertices, edges), sigma)
    if check:
        _check_same(out, frame_matroid(omega), "unroll")
    return out


# -- twisted flip ----------------------------------------------------------------

@dataclass(frozen=True)
class FlipData:
    hub: Hashable
    g0: frozenset
    lobes: tuple
    attachments: tuple
    sigma: tuple
    assignment: tuple  # s_i as 0-based indices into sigma

    def __post_init__(self):
        object.__setattr__(self, "g0", frozenset(self.g0))
        object.__setattr__(self, "lobes", tuple(frozenset(x) for x in self.lobes))
        object.__setattr__(self, "sigma", tuple(frozenset(x) for x in self.sigma))
        object.__setattr__(self, "attachments", tuple(self.attachments))
        object.__setattr__(self, "assignment", tuple(self.assignment))


def check_flip(omega: BiasedGraph, data: FlipData) -> None:
    g = omega.graph
    u = data.hub
    m = len(data.lobes)
    if len(data.attachments) != m or len(data.assignment) != m:
        raise FlipConditionViolated(0, "lobe, attachment and assignment counts differ")
    parts = [data.g0] + list(data.lobes)
    seen: set[str] = set()
    for p in parts:
        for e in p:
            if not g.has_edge(e):
                raise UnknownEdge(e)
            if e in seen:
                raise FlipConditionViolated(0, e)
            seen.add(e)
        if p and len(g.components(p)) != 1:
            raise FlipConditionViolated(0, min(p))
    for e in g.edges:
        if e.id not in seen and not (e.is_loop and e.u == u):
            raise FlipConditionViolated(1, e.id)
    for s in data.sigma:
        bad = s & data.g0
        if bad:
            raise FlipConditionViolated(2, min(bad))
    vsets = [g.vertices_of(p) for p in parts]
    for i in range(1, m + 1):
        others = set()
        for j in range(m + 1):
            if j != i:
                others |= vsets[j]
        extra = (vsets[i] & others) - {u, data.attachments[i - 1]}
        if extra:
            x = min(extra, key=str)
            raise FlipConditionViolated(3, min(e.id for e in g.incident(x) if e.id in data.lobes[i - 1]))
    # A u-x_i path inside G0 closes cycles through a lobe that the flip tears open,
    # so G0 may not hold both the hub and an attachment.
    if u in vsets[0]:
        for x in data.attachments:
            if x != u and x in vsets[0]:
                raise FlipConditionViolated(3, min(e.id for e in g.incident(x) if e.id in data.g0))
    for i, lobe in enumerate(data.lobes):
        s_i = data.assignment[i]
        if not 0 <= s_i < len(data.sigma):
            raise FlipConditionViolated(4, f"lobe {i + 1}")
        for j, s in enumerate(data.sigma):
            if j != s_i and lobe & s:
                raise FlipConditionViolated(4, min(lobe & s))
        x = data.attachments[i]
        for e in sorted(lobe & data.sigma[s_i]):
            if x not in g.edge(e).ends():
                raise FlipConditionViolated(5, e)
    for c in omega.cycle_list:
        if all(len(c & s) % 2 == 0 for s in data.sigma) != (c in omega.balanced):
            raise FlipConditionViolated(0, f"signature disagrees with bias on {sorted(c)}")


def twisted_flip(omega: BiasedGraph, data: FlipData, check: bool = True) -> BiasedGraph:
    check_flip(omega, data)
    g = omega.graph
    u = data.hub
    new_ends: dict[str, tuple] = {}
    sig_new = [set() for _ in data.sigma]
    for i, lobe in enumerate(data.lobes):
        x = data.attachments[i]
        j = data.assignment[i]
        s = data.sigma[j]
        for eid in lobe:
            e = g.edge(eid)
            if u in (e.u, e.v) and not e.is_loop and eid not in s:
                new_ends[eid] = (e.other(u), x)
                sig_new[j].add(eid)
            elif x in (e.u, e.v) and eid in s and (e.is_loop or e.other(x) != u):
                new_ends[eid] = (e.other(x), u)
            elif eid in s and {e.u, e.v} == {u, x}:
                sig_new[j].add(eid)
    for e in g.edges:
        if e.is_loop and e.u == u and not any(e.id in p for p in data.lobes) and e.id not in data.g0:
            for j, s in enumerate(data.sigma):
                if e.id in s:
                    sig_new[j].add(e.id)
    edges = tuple(Edge(e.id, *new_ends[e.id]) if e.id in new_ends else e for e in g.edges)
    out = BiasedGraph.from_signature(Multigraph(g.vertices, edges), sig_new)
    if check:
        _check_same(out, frame_matroid(omega), "twisted flip")
    return out


def pinch_as_flip(h: Multigraph, u, v) -> FlipData:
    lobe = frozenset(e.id for e in h.edges if not (e.is_loop and e.u == u))
    return FlipData(u, frozenset(), (lobe,), (v,), (frozenset(),), (0,))


def roll_up_as_flip(omega: BiasedGraph, u, cls: Iterable[str]) -> FlipData:
    cls = frozenset(cls)
    classes = b_classes(omega, u)
    if cls not in classes:
        raise NotABClass(f"{sorted(cls)} is not a b-class at {u!r}")
    g = omega.graph
    loops_u = frozenset(e.id for e in omega.unbalanced_loops() if e.u == u)
    sigma = [c for c in classes if c != cls] + ([loops_u] if loops_u else [])
    if not sigma:
        sigma = [frozenset()]
    g0 = frozenset(e.id for e in g.edges if u not in (e.u, e.v))
    lobes, atts, assign = [], [], []
    for e in g.links_at(u):
        lobes.append(frozenset([e.id]))
        atts.append(e.other(u))
        assign.append(next((j for j, s in enumerate(sigma) if e.id in s), 0))
    return FlipData(u, g0, tuple(lobes), tuple(atts), tuple(sigma), tuple(assign))


# -- loop-sum / link-sum -----------------------------------------------------------

def _glue(o1: BiasedGraph, e1: str, o2: BiasedGraph, e2: str, ident: dict) -> tuple[Multigraph, dict]:
    g1, g2 = o1.graph, o2.graph
    clash = (set(g1.edge_ids) - {e1}) & (set(g2.edge_ids) - {e2})
    if clash:
        raise FrameError(f"edge ids overlap: {sorted(clash)}")
    used = set(g1.vertices)
    rename = dict(ident)
    for v in g2.vertices:
        if v in rename:
            continue
        if v in used:
            nv = _fresh_vertex(used, v)
            rename[v] = nv
            used.add(nv)
        else:
            rename[v] = v
            used.add(v)
    edges = [e for e in g1.edges if e.id != e1]
    edges += [Edge(e.id, rename[e.u], rename[e.v]) for e in g2.edges if e.id != e2]
    verts = list(g1.vertices) + [rename[v] for v in g2.vertices if rename[v] not in set(g1.vertices)]
    return Multigraph(tuple(verts), tuple(edges)), rename


def loop_sum(o1: BiasedGraph, e1: str, o2: BiasedGraph, e2: str, check: bool = True) -> BiasedGraph:
    for o, e in ((o1, e1), (o2, e2)):
        ed = o.graph.edge(e)
        if not ed.is_loop or frozenset([e]) in o.balanced:
            raise WrongEdgeKind(f"{e} is not an unbalanced loop")
    v1, v2 = o1.graph.edge(e1).u, o2.graph.edge(e2).u
    g, _ = _glue(o1, e1, o2, e2, {v2: v1})
    bal = [c for c in o1.balanced if e1 not in c] + [c for c in o2.balanced if e2 not in c]
    out = BiasedGraph(g, bal, check=False)
    if check:
        _check_sum(out, o1, e1, o2, e2)
    return out


def link_sum(o1: BiasedGraph, e1: str, o2: BiasedGraph, e2: str, check: bool = True) -> BiasedGraph:
    """Glue along the links ``e1``, ``e2``, identifying endpoints in their listed order."""
    if not o1.is_balanced():
        raise LinkSumFirstArgUnbalanced("first argument of a link-sum must be balanced")
    a, b = o1.graph.edge(e1), o2.graph.edge(e2)
    if a.is_loop or b.is_loop:
        raise WrongEdgeKind("link-sum needs links")
    g, _ = _glue(o1, e1, o2, e2, {b.u: a.u, b.v: a.v})
    e1_side = set(o1.graph.edge_ids) - {e1}
    bal = []
    for c in cycles(g):
        c2 = c - e1_side
        if c2 == c:
            if c in o2.balanced:
                bal.append(c)
        elif not c2:
            bal.append(c)
        elif (c2 | {e2}) in o2.balanced:
            bal.append(c)
    out = BiasedGraph(g, bal, check=False)
    if check:
        _check_sum(out, o1, e1, o2, e2)
    return out


def _check_sum(out, o1, e1, o2, e2):
    if len(out.graph.edges) > CHECK_LIMIT:
        return
    f2 = frame_matroid(o2)
    if e1 == e2:
        f2 = f2.relabel({e2: e2 + "#2"})
        e2 = e2 + "#2"
    if frame_matroid(out) != two_sum(frame_matroid(o1), e1, f2, e2):
        raise AssertionError("sum does not realise the 2-sum")


# -- biseparations -------------------------------------------------------------

@dataclass(frozen=True)
class Part:
    side: str
    edges: frozenset
    balanced: bool
    t: int

    @property
    def neutral(self) -> bool:
        return self.balanced and self.t == 2


@dataclass(frozen=True)
class BiseparationReport:
    side_a: frozenset
    side_b: frozenset
    shared: frozenset
    parts: tuple
    case: str
    type: str
    neutral: tuple = field(default=())


def _lambda_graph_side(omega: BiasedGraph, a: set, b: set) -> int:
    g = omega.graph
    shared = g.vertices_of(a) & g.vertices_of(b)
    ball = balanced_component_count
    return len(shared) - ball(omega, a) - ball(omega, b) + ball(omega, g.edge_ids) + 1


def classify_biseparation(omega: BiasedGraph, side_a: Iterable[str]) -> BiseparationReport:
    g = omega.graph
    a = frozenset(side_a)
    b = frozenset(g.edge_ids) - a
    if len(a) < 2 or len(b) < 2 or not a <= set(g.edge_ids) or _lambda_graph_side(omega, a, b) != 2:
        raise NotA2Separation(f"{sorted(a)} is not a side of a 2-separation of F")
    shared = frozenset(g.vertices_of(a) & g.vertices_of(b))
    parts = []
    for side, s in (("A", a), ("B", b)):
        for comp in g.components(s):
            parts.append(Part(side, comp, omega.is_balanced(comp), len(shared & g.vertices_of(comp))))
    b_all = 1 if omega.is_balanced() else 0
    total = sum(p.t - 2 * p.balanced for p in parts)
    assert total == 2 - 2 * b_all, (total, b_all)
    neutral = tuple(p for p in parts if p.neutral)
    rest = sorted(((p.balanced, p.t) for p in parts if not p.neutral))
    case = {
        ((False, 1), (False, 1)): "a",
        ((False, 2),): "b",
        ((False, 1), (True, 3)): "c",
        ((True, 3), (True, 3)): "d",
        ((True, 4),): "e",
    }.get(tuple(rest), "balanced" if b_all else "other")
    a_conn = len(g.components(a)) == 1
    b_conn = len(g.components(b)) == 1
    bal_a, bal_b = omega.is_balanced(a), omega.is_balanced(b)
    if len(shared) == 1 and a_conn and b_conn and not bal_a and not bal_b:
        kind = "type1"
    elif len(shared) == 2 and a_conn and b_conn and bal_a != bal_b:
        kind = "type2"
    elif len(shared) == 3 and (a_conn or b_conn):
        kind = "type3-like"
    else:
        kind = "other"
    return BiseparationReport(a, b, shared, tuple(parts), case, kind, neutral)


def extract_summands(omega: BiasedGraph, side_a: Iterable[str], check: bool = True):
    """``(o1, p, o2, p)`` rebuilding ``omega`` by a loop-sum (type 1) or link-sum (type 2).

    For type 2 the balanced side comes first, as link-sum requires.
    """
    rep = classify_biseparation(omega, side_a)
    g = omega.graph
    p = fresh_label(g.edge_ids)
    a, b = rep.side_a, rep.side_b
    if rep.type == "type1":
        (s,) = rep.shared
        out = []
        for side in (a, b):
            sub = omega.restrict(side)
            h = Multigraph(sub.graph.vertices, sub.graph.edges + (Edge(p, s, s),))
            out.append(BiasedGraph(h, sub.balanced, check=False))
        res = (out[0], p, out[1], p)
        if check:
            _check_sum(omega, *res)
        return res
    if rep.type != "type2":
        raise NotType1Or2(f"biseparation is {rep.type}")
    bal_side, unb_side = (a, b) if omega.is_balanced(a) else (b, a)
    x, y = sorted(rep.shared, key=str)
    sub1 = omega.restrict(bal_side)
    h1 = Multigraph(sub1.graph.vertices, sub1.graph.edges + (Edge(p, x, y),))
    o1 = BiasedGraph.all_balanced(h1)
    paths = []
    for path in paths_between(g, x, y, within=bal_side):
        paths.append(frozenset(path))
        if len(paths) == 2:
            break
    sub2 = omega.restrict(unb_side)
    h2 = Multigraph(sub2.graph.vertices, sub2.graph.edges + (Edge(p, x, y),))
    bal2 = []
    for c in cycles(h2):
        if p not in c:
            if c in omega.balanced:
                bal2.append(c)
            continue
        verdicts = {((c - {p}) | q) in omega.balanced for q in paths}
        if len(verdicts) != 1:
            raise AssertionError(f"replacement bias depends on the path for {sorted(c)}")
        if verdicts.pop():
            bal2.append(c)
    o2 = BiasedGraph(h2, bal2, check=False)
    res = (o1, p, o2, p)
    if check:
        _check_sum(omega, *res)
    return res
