"""Rooted K4 / W4 minors containing two prescribed disjoint edges."""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from .graph import Multigraph


class NoWitness(RuntimeError):
    """No rooted K4 or W4 minor exists; valid 3-connected input should never get here."""


class InvalidInput(ValueError):
    pass


@dataclass(frozen=True)
class RootedMinorWitness:
    steps: tuple
    terminal: str
    e1: str
    e2: str
    graph: tuple

    def to_dict(self) -> dict:
        return {"steps": [list(s) for s in self.steps], "terminal": self.terminal,
                "e1": self.e1, "e2": self.e2, "graph": [list(e) for e in self.graph]}


# state: dict edge id -> (u, v) with u < v by string order


def _norm(u, v):
    return (u, v) if str(u) <= str(v) else (v, u)


def _state(g: Multigraph) -> dict:
    return {e.id: _norm(e.u, e.v) for e in g.edges}


def _key(st: dict) -> frozenset:
    return frozenset(st.items())


def _contract(st: dict, eid: str, keep: tuple) -> dict:
    u, v = st[eid]
    out = {}
    for x, (a, b) in st.items():
        if x == eid:
            continue
        a = u if a == v else a
        b = u if b == v else b
        if a == b:
            continue
        out[x] = _norm(a, b)
    # collapse parallel edges, keeping a rooted edge where there is one
    by_ends: dict[tuple, list[str]] = {}
    for x, ends in out.items():
        by_ends.setdefault(ends, []).append(x)
    for ends, ids in by_ends.items():
        if len(ids) > 1:
            ids.sort(key=lambda x: (x not in keep, x))
            for x in ids[1:]:
                del out[x]
    return out


def _delete(st: dict, eid: str) -> dict:
    return {x: ends for x, ends in st.items() if x != eid}


def _degrees(st: dict) -> dict:
    deg: dict = {}
    for a, b in st.values():
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
    return deg


def _suppress(st: dict, v, keep: tuple) -> tuple[dict, str]:
    inc = [x for x, (a, b) in sorted(st.items()) if v in (a, b)]
    a, b = inc
    target = b if a in keep else a
    return _contract(st, target, keep), target


def apply_step(st: dict, step: tuple, keep: tuple) -> dict:
    op = step[0]
    if op == "delete":
        return _delete(st, step[1])
    if op == "contract":
        return _contract(st, step[1], keep)
    if op == "suppress":
        return _suppress(st, step[1], keep)[0]
    raise ValueError(f"unknown step {step!r}")


def _disjoint(st: dict, e1: str, e2: str) -> bool:
    return e1 in st and e2 in st and not set(st[e1]) & set(st[e2])


def _terminal(st: dict, e1: str, e2: str) -> str | None:
    if not _disjoint(st, e1, e2):
        return None
    deg = _degrees(st)
    if len(deg) == 4 and len(st) == 6:
        return "K4"
    if len(deg) == 5 and len(st) == 8 and sorted(deg.values()) == [3, 3, 3, 3, 4]:
        if all(deg[x] == 3 for x in st[e1] + st[e2]):
            return "W4"
    return None


def _nx(st: dict) -> nx.Graph:
    h = nx.Graph()
    h.add_edges_from(st.values())
    return h


def _three_connected(st: dict) -> bool:
    h = _nx(st)
    n = h.number_of_nodes()
    if n < 4:
        return False
    return nx.node_connectivity(h) >= 3


def _moves(st: dict, keep: tuple):
    """Candidate successor states, suppressing degree-2 vertices after a deletion."""
    for eid in sorted(st):
        if eid in keep:
            continue
        nxt = _delete(st, eid)
        steps = [("delete", eid)]
        changed = True
        while changed:
            changed = False
            for v, d in sorted(_degrees(nxt).items(), key=lambda t: str(t[0])):
                if d == 2:
                    nxt, _ = _suppress(nxt, v, keep)
                    steps.append(("suppress", v))
                    changed = True
                    break
        yield steps, nxt
        yield [("contract", eid)], _contract(st, eid, keep)


def _check_input(g: Multigraph, e1: str, e2: str) -> None:
    if any(e.is_loop for e in g.edges):
        raise InvalidInput("graph must be simple")
    ends = [frozenset((e.u, e.v)) for e in g.edges]
    if len(set(ends)) != len(ends):
        raise InvalidInput("graph must be simple")
    for e in (e1, e2):
        if not g.has_edge(e):
            raise InvalidInput(f"unknown edge {e!r}")
    a, b = g.edge(e1), g.edge(e2)
    if len({a.u, a.v, b.u, b.v}) != 4:
        raise InvalidInput("e1 and e2 must have four distinct ends")
    if not _three_connected(_state(g)):
        raise InvalidInput("graph must be 3-connected")


def rooted_k4_w4_minor(g: Multigraph, e1: str, e2: str, check_input: bool = True) -> RootedMinorWitness:
    """Depth-first search over minors; 3-connected moves are tried first."""
    if check_input:
        _check_input(g, e1, e2)
    keep = (e1, e2)
    start = _state(g)
    for restricted in (True, False):
        seen: set = set()
        stack = [(start, ())]
        while stack:
            st, path = stack.pop()
            k = _key(st)
            if k in seen:
                continue
            seen.add(k)
            term = _terminal(st, e1, e2)
            if term is not None:
                w = RootedMinorWitness(path, term, e1, e2, _edge_list(st))
                if replay(g, w) != term:
                    raise AssertionError("witness does not replay")
                return w
            if len(_degrees(st)) < 4 or len(st) < 6 or not _disjoint(st, e1, e2):
                continue
            succ = []
            for steps, nxt in _moves(st, keep):
                if restricted and not _three_connected(nxt):
                    continue
                succ.append((nxt, path + tuple(steps)))
            # smallest graphs are popped first
            succ.sort(key=lambda t: (-len(t[0]), t[1]), reverse=False)
            stack.extend(succ)
    raise NoWitness(f"no rooted K4 or W4 minor on {e1}, {e2}")


def _edge_list(st: dict) -> tuple:
    return tuple(sorted((x, *st[x]) for x in st))


def replay(g: Multigraph, w: RootedMinorWitness) -> str | None:
    """Apply the witness steps to ``g``; the terminal type reached, or None."""
    keep = (w.e1, w.e2)
    st = _state(g)
    for step in w.steps:
        st = apply_step(st, tuple(step), keep)
    if _edge_list(st) != tuple(tuple(e) for e in w.graph):
        return None
    return _terminal(st, w.e1, w.e2)


def qualifying_pairs(g: Multigraph) -> list[tuple[str, str]]:
    out = []
    for a in g.edges:
        for b in g.edges:
            if a.id < b.id and len({a.u, a.v, b.u, b.v}) == 4:
                out.append((a.id, b.id))
    return out


def simple_three_connected_graphs(max_vertices: int):
    """Simple 3-connected graphs on 4..max_vertices vertices from the networkx atlas."""
    for h in nx.graph_atlas_g():
        n = h.number_of_nodes()
        if n < 4 or n > max_vertices or not nx.is_connected(h):
            continue
        if nx.node_connectivity(h) < 3:
            continue
        edges = [(f"{min(u, v)}-{max(u, v)}", u, v) for u, v in sorted(h.edges())]
        yield Multigraph.build(edges, tuple(sorted(h.nodes())))


__all__ = ["RootedMinorWitness", "NoWitness", "InvalidInput", "rooted_k4_w4_minor", "replay",
           "qualifying_pairs", "simple_three_connected_graphs", "apply_step"]
