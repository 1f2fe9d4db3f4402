"""Verification campaigns: excluded minors, excluded matroidals and the full list."""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

import networkx as nx

from .biased import BiasedGraph
from .frame import frame_matroid
from .graph import Multigraph
from .io import biased_to_dict, matroid_to_dict
from .matroid import (
    Matroid,
    connectivity,
    contract,
    cycle_matroid,
    delete,
    is_connected,
    is_cosimple,
    is_isomorphic,
    is_k_connected,
    is_simple,
    uniform,
)
from .named import attach_u24, build_m0, build_named, build_n9, e0_members
from .represent import FRAME, INCONCLUSIVE, NOT_FRAME, RepVerdict, Solver

CONFIRMED = "confirmed"
REFUTED = "refuted"
PARTIAL = "partial"


@dataclass
class Claim:
    name: str
    status: str
    expected: str
    detail: dict = field(default_factory=dict)


@dataclass
class VerificationReport:
    subject: str
    kind: str
    claims: list = field(default_factory=list)
    runtime: float = 0.0
    facts: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return summarise(c.status for c in self.claims)

    def to_dict(self, timings: bool = False) -> dict:
        d = {
            "subject": self.subject,
            "kind": self.kind,
            "verdict": self.verdict,
            "facts": self.facts,
            "claims": [{"name": c.name, "status": c.status, "expected": c.expected,
                        "detail": _strip_times(c.detail, timings)} for c in self.claims],
        }
        if timings:
            d["runtime"] = round(self.runtime, 3)
        return d


def summarise(statuses) -> str:
    statuses = list(statuses)
    if REFUTED in statuses:
        return REFUTED
    if PARTIAL in statuses:
        return PARTIAL
    return CONFIRMED


def _strip_times(d, timings: bool):
    if isinstance(d, dict):
        return {k: _strip_times(v, timings) for k, v in d.items() if timings or k != "elapsed"}
    if isinstance(d, list):
        return [_strip_times(v, timings) for v in d]
    return d


def _claim(name: str, verdict: RepVerdict, want_frame: bool) -> Claim:
    """Turn a representability verdict into a claim status against the expected answer."""
    expected = "frame" if want_frame else "not frame"
    detail = {"status": verdict.status, "route": verdict.route, "stats": dict(verdict.stats)}
    if verdict.status == INCONCLUSIVE:
        return Claim(name, PARTIAL, expected, detail)
    if verdict.witness is not None:
        detail["witness"] = biased_to_dict(verdict.witness)
    ok = (verdict.status == FRAME) == want_frame
    return Claim(name, CONFIRMED if ok else REFUTED, expected, detail)


def _check_witness(m: Matroid, l, v: RepVerdict) -> None:
    if v.witness is None or m.n > 24:
        return
    w = v.witness
    if frame_matroid(w) != m:
        raise AssertionError("recorded witness does not represent the minor")
    for x in l:
        e = w.graph.edge(x)
        if not e.is_loop or frozenset([x]) in w.balanced:
            raise AssertionError(f"{x} is not an unbalanced loop in the recorded witness")


def _sanity(m: Matroid) -> dict:
    conn = connectivity(m)
    return {
        "elements": m.n,
        "rank": m.r,
        "connected": is_connected(m),
        "connectivity": "inf" if conn == float("inf") else int(conn),
        "simple": is_simple(m),
        "cosimple": is_cosimple(m),
    }


def verify_excluded_minor(m: Matroid, subject: str = "M", solver: Solver | None = None) -> VerificationReport:
    solver = solver or Solver()
    t0 = time.monotonic()
    rep = VerificationReport(subject, "excluded-minor", facts=_sanity(m))
    for key in ("connected", "simple", "cosimple"):
        rep.claims.append(Claim(key, CONFIRMED if rep.facts[key] else REFUTED, "true"))
    rep.claims.append(_claim("not-frame", solver.is_frame(m), want_frame=False))
    for e in m.ground:
        for op, fn in (("delete", delete), ("contract", contract)):
            minor = fn(m, [e])
            v = solver.is_frame(minor)
            _check_witness(minor, (), v)
            rep.claims.append(_claim(f"{op} {e}", v, want_frame=True))
    rep.runtime = time.monotonic() - t0
    return rep


def matroidal_minors(m: Matroid, l) -> list[tuple[str, Matroid, frozenset]]:
    l = frozenset(l)
    out = []
    for e in m.ground:
        if e in l:
            continue
        out.append((f"delete {e}", delete(m, [e]), l))
        out.append((f"contract {e}", contract(m, [e]), l))
    for x in sorted(l):
        out.append((f"unmark {x}", m, l - {x}))
    return out


def verify_excluded_matroidal(m: Matroid, l, subject: str = "(M,L)",
                              solver: Solver | None = None) -> VerificationReport:
    solver = solver or Solver()
    l = frozenset(l)
    t0 = time.monotonic()
    rep = VerificationReport(subject, "excluded-matroidal", facts={**_sanity(m), "l": sorted(l)})
    first = solver.is_frame_matroidal(m, l)
    rep.claims.append(_claim("not-frame", first, want_frame=False))
    if first.status == FRAME:
        rep.runtime = time.monotonic() - t0
        return rep
    for name, minor, ml in matroidal_minors(m, l):
        v = solver.is_frame_matroidal(minor, ml)
        _check_witness(minor, ml, v)
        rep.claims.append(_claim(name, v, want_frame=True))
    rep.runtime = time.monotonic() - t0
    return rep


# -- candidate generation ------------------------------------------------------

def _independent_triangles(tris: list[tuple]) -> list[tuple]:
    """Sets of triangles no two of which differ in exactly one edge."""
    def conflict(a, b):
        return sum(x != y for x, y in zip(a, b)) == 1

    out = []

    def rec(i, chosen):
        if i == len(tris):
            out.append(tuple(chosen))
            return
        rec(i + 1, chosen)
        if not any(conflict(tris[i], c) for c in chosen):
            chosen.append(tris[i])
            rec(i + 1, chosen)
            chosen.pop()

    rec(0, [])
    return out


def _canonical_triangles(sel: tuple, mult: tuple) -> tuple:
    best = None
    for perms in itertools.product(*(itertools.permutations(range(k)) for k in mult)):
        key = tuple(sorted(tuple(p[i] for p, i in zip(perms, t)) for t in sel))
        if best is None or key < best:
            best = key
    return best


def rank3_biased_candidates(max_elems: int):
    """Biased graphs on three vertices with simple frame matroid and at most ``max_elems`` edges.

    Loops are unbalanced (at most one per vertex), parallel links form unbalanced
    digons, and the balanced triangles are a set in which no two differ in one edge.
    """
    pairs = [(0, 1), (1, 2), (0, 2)]
    for nloops in range(4):
        for loopset in itertools.combinations(range(3), nloops):
            budget = max_elems - nloops
            for mult in itertools.product(range(budget + 1), repeat=3):
                if sum(mult) > budget:
                    continue
                edges = [(f"l{v}", v, v) for v in loopset]
                classes = []
                for (u, v), k in zip(pairs, mult):
                    ids = [f"e{u}{v}{i}" for i in range(k)]
                    classes.append(ids)
                    edges += [(x, u, v) for x in ids]
                g = Multigraph.build(edges, (0, 1, 2))
                if not g.is_connected():
                    continue
                tris = list(itertools.product(*(range(k) for k in mult)))
                seen = set()
                for sel in _independent_triangles(tris):
                    key = _canonical_triangles(sel, mult)
                    if key in seen:
                        continue
                    seen.add(key)
                    bal = [frozenset(classes[j][t[j]] for j in range(3)) for t in sel]
                    yield BiasedGraph(g, bal, check=False)


def graphic_candidates(rank: int, max_elems: int):
    """Simple connected graphs on rank+1 vertices, from the networkx atlas."""
    for h in nx.graph_atlas_g():
        if h.number_of_nodes() != rank + 1 or h.number_of_edges() > max_elems:
            continue
        if h.number_of_edges() == 0 or not nx.is_connected(h):
            continue
        edges = [(f"{min(u, v)}{max(u, v)}", u, v) for u, v in sorted(h.edges())]
        yield BiasedGraph.all_balanced(Multigraph.build(edges, tuple(sorted(h.nodes()))))


def _dedupe_matroids(ms: list[Matroid]) -> list[Matroid]:
    from .cache import profile

    buckets: dict[str, list[Matroid]] = {}
    out = []
    for m in ms:
        key = profile(m)
        if any(is_isomorphic(m, o) is not None for o in buckets.get(key, ())):
            continue
        buckets.setdefault(key, []).append(m)
        out.append(m)
    return out


def three_connected_frame_matroids(rank: int, max_elems: int, graphic_only: bool = False) -> list[Matroid]:
    if rank == 2:
        return [] if graphic_only else [uniform(2, k) for k in range(4, max_elems + 1)]
    if rank == 3 and not graphic_only:
        source = itertools.chain(rank3_biased_candidates(max_elems), graphic_candidates(3, max_elems))
    elif rank in (3, 4):
        source = graphic_candidates(rank, max_elems)
    else:
        raise ValueError("enumeration is implemented for rank 2, rank 3 and graphic rank 4")
    found = []
    for omega in source:
        m = frame_matroid(omega)
        if m.r != rank or m.n < 4 or not is_simple(m) or not is_cosimple(m):
            continue
        if not is_k_connected(m, 3):
            continue
        found.append(m)
    return _dedupe_matroids(found)


@dataclass
class MatroidalClass:
    matroid: Matroid
    l: frozenset
    report: VerificationReport

    def to_dict(self) -> dict:
        return matroid_to_dict(self.matroid, self.l)


def _pair_orbits(m: Matroid, size: int = 2) -> list[frozenset]:
    reps: list[frozenset] = []
    for pair in itertools.combinations(m.ground, size):
        s = frozenset(pair)
        if any(is_isomorphic(m, m, r, s) is not None for r in reps):
            continue
        reps.append(s)
    return reps


def enumerate_excluded_matroidals(rank: int, max_elems: int, solver: Solver | None = None,
                                  graphic_only: bool = False) -> tuple[list[MatroidalClass], str]:
    """Excluded matroidals ``(N, L)`` with N 3-connected of the given rank and ``|L| = 2``.

    Returns the classes and an overall status; an inconclusive check makes it partial.
    """
    if rank > 4 or max_elems > 8:
        raise ValueError("enumeration bounds are rank <= 4 and at most 8 elements")
    solver = solver or Solver()
    classes: list[MatroidalClass] = []
    status = CONFIRMED
    for m in three_connected_frame_matroids(rank, max_elems, graphic_only):
        for l in _pair_orbits(m):
            quick = solver.is_frame_matroidal(m, l)
            if quick.status == FRAME:
                continue
            rep = verify_excluded_matroidal(m, l, solver=solver)
            if rep.verdict == CONFIRMED:
                classes.append(MatroidalClass(m, l, rep))
            elif rep.verdict == PARTIAL:
                status = PARTIAL
    return classes, status


# -- full list -----------------------------------------------------------------

def matroidal_list(solver: Solver | None = None) -> tuple[list[tuple[str, Matroid, frozenset]], str]:
    """M0, the rank-3 classes and the rank-4 graphic class, with names M0..M8."""
    solver = solver or Solver()
    m0, l0 = build_m0()
    r3, s3 = enumerate_excluded_matroidals(3, 8, solver)
    r4, s4 = enumerate_excluded_matroidals(4, 8, solver, graphic_only=True)
    r3.sort(key=lambda c: (c.matroid.n, len(c.matroid.circuits), matroid_to_dict(c.matroid, c.l)["circuits"]))
    out = [("M0", m0, l0)]
    for i, c in enumerate(r3 + r4, start=1):
        out.append((f"M{i}", c.matroid, c.l))
    return out, summarise([s3, s4])


def pairwise_distinct(ms: list[Matroid]) -> bool:
    return all(is_isomorphic(a, b) is None for a, b in itertools.combinations(ms, 2)
               if a.n == b.n and a.r == b.r)


def verify_e_family(solver: Solver | None = None) -> dict:
    solver = solver or Solver()
    t0 = time.monotonic()
    matroidals, enum_status = matroidal_list(solver)
    members: list[tuple[str, Matroid]] = [(f"E0:{name}", m) for name, m in e0_members()]
    equivalence = []
    matroidal_reports = []
    for name, n, l in matroidals:
        mm = attach_u24(n, l)
        members.append((f"E1:{name}", mm))
        mrep = verify_excluded_matroidal(n, l, subject=name, solver=solver)
        matroidal_reports.append(mrep)
        plain = Solver(solver.limits, fast_path=False)
        lhs = plain.is_frame(mm).status
        rhs = solver.is_frame_matroidal(n, l).status
        if INCONCLUSIVE in (lhs, rhs):
            eq = PARTIAL
        else:
            eq = CONFIRMED if (lhs == FRAME) == (rhs == FRAME) else REFUTED
        equivalence.append({"member": name, "sum": lhs, "matroidal": rhs, "status": eq})
    reports = [verify_excluded_minor(m, subject=name, solver=solver) for name, m in members]
    distinct = pairwise_distinct([m for _, m in members])
    n9 = next(m for name, m in members if name == "E1:M0")
    statuses = [r.verdict for r in reports] + [r.verdict for r in matroidal_reports]
    statuses += [e["status"] for e in equivalence] + [enum_status]
    count_ok = len(members) == 18 and distinct
    statuses.append(CONFIRMED if count_ok else REFUTED)
    summary = {
        "members": len(members),
        "pairwise_non_isomorphic": distinct,
        "m0_sum_is_n9": is_isomorphic(n9, build_n9()) is not None,
        "matroidal_enumeration": enum_status,
        "matroidals": [{"name": name, **matroid_to_dict(n, l)} for name, n, l in matroidals],
        "equivalence": equivalence,
        "matroidal_reports": [r.to_dict() for r in matroidal_reports],
        "reports": [r.to_dict() for r in reports],
        "verdict": summarise(statuses),
    }
    summary["runtime"] = time.monotonic() - t0
    return summary


def verify_e0(solver: Solver | None = None) -> list[VerificationReport]:
    solver = solver or Solver()
    return [verify_excluded_minor(m, subject=name, solver=solver) for name, m in e0_members()]


def verify_n9(solver: Solver | None = None) -> VerificationReport:
    return verify_excluded_minor(build_n9(), subject="N9", solver=solver)


__all__ = ["Claim", "VerificationReport", "verify_excluded_minor", "verify_excluded_matroidal",
           "enumerate_excluded_matroidals", "verify_e_family", "verify_e0", "verify_n9",
           "three_connected_frame_matroids", "rank3_biased_candidates", "matroidal_list",
           "CONFIRMED", "REFUTED", "PARTIAL", "build_named"]
