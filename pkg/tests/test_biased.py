import itertools
import random

import pytest
from hypothesis import given, strategies as st

from framekit.biased import (
    BiasedGraph,
    NotACycle,
    NotBalancing,
    ThetaViolation,
    UnknownEdge,
    b_classes,
    balanced_component_count,
    balancing_vertices,
    biased_isomorphic,
    biased_minor,
    contract_edge,
    cycle_balanced,
    derived_bias,
    lambda_omega,
    signature_from_tree,
    thetas,
    validate_theta,
)
from framekit.corpus import corpus, random_biased_graph, random_cycle_collection, random_multigraph
from framekit.frame import frame_matroid, pinch
from framekit.graph import Multigraph, SizeLimitExceeded, cycles
from framekit.matroid import uniform

from conftest import subsets


def triangle():
    return Multigraph.build([("a", 0, 1), ("b", 1, 2), ("c", 2, 0)])


def theta2(k=3):
    return Multigraph.build([(f"p{i}", 0, 1) for i in range(k)])


def degrees(g, eids):
    deg = {}
    for x in eids:
        e = g.edge(x)
        deg[e.u] = deg.get(e.u, 0) + 1
        deg[e.v] = deg.get(e.v, 0) + 1
    return deg


def connected(g, eids):
    eids = list(eids)
    if not eids:
        return False
    seen = {eids[0]}
    frontier = [eids[0]]
    while frontier:
        x = frontier.pop()
        ends = set(g.edge(x).ends())
        for y in eids:
            if y not in seen and ends & set(g.edge(y).ends()):
                seen.add(y)
                frontier.append(y)
    return len(seen) == len(eids)


def brute_cycles(g):
    """Connected edge sets in which every vertex has degree two (a loop counts twice)."""
    out = set()
    for s in subsets(g.edge_ids):
        if s and connected(g, s) and all(d == 2 for d in degrees(g, s).values()):
            out.add(frozenset(s))
    return out


def brute_thetas(g):
    """Each theta subgraph as its three cycles, found by walking the three paths."""
    links = [e.id for e in g.edges if not e.is_loop]
    out = []
    for s in subsets(links):
        if len(s) < 3 or not connected(g, s):
            continue
        deg = degrees(g, s)
        branch = [v for v, d in deg.items() if d == 3]
        if len(branch) != 2 or any(d not in (2, 3) for d in deg.values()):
            continue
        if len(s) != len(deg) + 1:
            continue
        x, y = branch
        paths = []
        for start in (e for e in s if x in g.edge(e).ends()):
            path, cur, prev = [start], g.edge(start).other(x), start
            while cur not in (x, y):
                nxt = next(e for e in s if e != prev and cur in g.edge(e).ends())
                path.append(nxt)
                cur, prev = g.edge(nxt).other(cur), nxt
            if cur == y:
                paths.append(frozenset(path))
        if len(paths) != 3:
            continue
        full = frozenset(s)
        out.append(tuple(full - p for p in paths))
    return out


def brute_theta_ok(omega):
    return all(sum(c in omega.balanced for c in th) != 2 for th in brute_thetas(omega.graph))


# -- cycles --------------------------------------------------------------------------

def test_cycles_examples():
    assert len(cycles(theta2())) == 3
    from framekit.named import complete_graph

    assert len(cycles(complete_graph(4))) == 7
    forest = Multigraph.build([("a", 0, 1), ("b", 1, 2), ("c", 3, 4)])
    assert cycles(forest) == []


def test_cycles_size_limit():
    big = Multigraph.build([(f"e{i}", 0, 1) for i in range(40)])
    with pytest.raises(SizeLimitExceeded):
        cycles(big)


@given(st.integers(0, 10**6))
def test_cycles_match_degree_oracle(seed):
    g = random_multigraph(random.Random(seed), max_vertices=5, max_edges=8)
    assert set(cycles(g)) == brute_cycles(g)


# -- theta property --------------------------------------------------------------------

def test_validate_theta_examples():
    g = theta2()
    assert validate_theta(BiasedGraph.all_balanced(g)) is None
    assert validate_theta(BiasedGraph.contrabalanced(g)) is None
    bad = BiasedGraph(g, [{"p0", "p1"}, {"p1", "p2"}], check=False)
    w = validate_theta(bad)
    assert w is not None and sum(c in bad.balanced for c in w) == 2
    with pytest.raises(ThetaViolation):
        BiasedGraph(g, [{"p0", "p1"}, {"p1", "p2"}])


def test_non_cycle_rejected():
    with pytest.raises(NotACycle):
        BiasedGraph(triangle(), [{"a", "b"}])


def test_theta_validation_agrees_with_brute_force_on_1000_collections():
    rng = random.Random(20240601)
    disagree = violations = n_thetas = 0
    for _ in range(1000):
        g = random_multigraph(rng, max_vertices=5, max_edges=8, connected=True, loop_rate=0.1)
        omega = random_cycle_collection(rng, g, p=rng.choice([0.3, 0.5, 0.8]))
        n_thetas += len(brute_thetas(g))
        ok = brute_theta_ok(omega)
        violations += not ok
        disagree += (validate_theta(omega) is None) != ok
    assert disagree == 0
    # the sample exercises both outcomes on a nontrivial number of thetas
    assert violations > 100 and n_thetas > 1000


def test_thetas_match_brute_force():
    rng = random.Random(7)
    for _ in range(200):
        g = random_multigraph(rng, max_vertices=5, max_edges=8)
        omega = BiasedGraph.contrabalanced(g)
        mine = {frozenset(t) for t in thetas(omega)}
        assert mine == {frozenset(t) for t in brute_thetas(g)}


def test_theta_balance_counts_on_corpus():
    for omega in corpus(11, 300):
        for th in thetas(omega):
            assert sum(c in omega.balanced for c in th) in (0, 1, 3)


# -- signatures and balance ----------------------------------------------------------------

def test_cycle_balanced_examples():
    g = triangle()
    assert all(cycle_balanced(BiasedGraph.from_signature(g, []), c) for c in cycles(g))
    sig = BiasedGraph.from_signature(theta2(), [{"p0"}])
    assert not cycle_balanced(sig, {"p0", "p1"}) and cycle_balanced(sig, {"p1", "p2"})
    with pytest.raises(NotACycle):
        cycle_balanced(sig, {"p0"})


@given(st.integers(0, 10**6))
def test_signatures_always_satisfy_theta(seed):
    rng = random.Random(seed)
    g = random_multigraph(rng)
    sigma = [[e.id for e in g.edges if rng.random() < 0.5] for _ in range(rng.randint(1, 3))]
    assert brute_theta_ok(BiasedGraph.from_signature(g, sigma))


def test_balanced_component_count_examples():
    assert balanced_component_count(BiasedGraph.all_balanced(triangle()), "abc") == 1
    loop = BiasedGraph.contrabalanced(Multigraph.build([("l", 0, 0)]))
    assert balanced_component_count(loop, ["l"]) == 0
    g = Multigraph.build([("a", 0, 1), ("b", 1, 2), ("c", 2, 0), ("p0", 5, 6), ("p1", 5, 6), ("p2", 5, 6)])
    omega = BiasedGraph(g, [{"a", "b", "c"}])
    assert balanced_component_count(omega, g.edge_ids) == 1


def test_lambda_omega_examples():
    g = Multigraph.build([("a", 0, 1), ("b", 1, 2), ("c", 2, 0), ("d", 2, 3), ("e", 3, 4), ("f", 4, 2)])
    assert lambda_omega(BiasedGraph.all_balanced(g), "abc") == 1
    c4 = Multigraph.build([("a", 0, 1), ("b", 1, 2), ("c", 2, 3), ("d", 3, 0)])
    assert lambda_omega(BiasedGraph.all_balanced(c4), "ac") == 4


def test_derived_bias_examples():
    omega = derived_bias(triangle(), uniform(2, 3, "abc"))
    assert omega.balanced == {frozenset("abc")}
    th = derived_bias(theta2(), uniform(2, 3, ["p0", "p1", "p2"]))
    assert th.is_contrabalanced()
    # a bias always exists for a free matroid; the caller still has to compare F with m
    free = derived_bias(triangle(), uniform(3, 3, "abc"))
    assert free is not None and free.is_contrabalanced()
    assert frame_matroid(free) == uniform(3, 3, "abc")
    wrong = derived_bias(theta2(), uniform(3, 3, ["p0", "p1", "p2"]))
    assert wrong is not None and wrong.is_contrabalanced()
    assert frame_matroid(wrong) != uniform(3, 3, ["p0", "p1", "p2"])


def test_balancing_and_b_classes_examples():
    c4 = Multigraph.build([("a", 0, 1), ("b", 1, 2), ("c", 2, 3), ("d", 3, 0)])
    p = pinch(c4, 0, 2)
    assert 2 in balancing_vertices(p)
    # both cycles left are unbalanced digons, so no two links share a balanced cycle
    assert len(b_classes(p, 2)) == 4
    chord = Multigraph.build([(e.id, e.u, e.v) for e in c4.edges] + [("e", 1, 3)])
    p = pinch(chord, 0, 2)
    assert b_classes(p, 2) == [frozenset("ad"), frozenset("bc")]
    bal = BiasedGraph.all_balanced(triangle())
    assert balancing_vertices(bal) == list(bal.graph.vertices)
    assert b_classes(bal, 0) == [frozenset("ac")]
    th = BiasedGraph.contrabalanced(theta2())
    assert sorted(balancing_vertices(th)) == [0, 1]
    assert b_classes(th, 0) == [frozenset([f"p{i}"]) for i in range(3)]


def test_b_classes_rejects_non_balancing_vertex():
    g = Multigraph.build([("a", 0, 1), ("b", 1, 2), ("c", 2, 0), ("p0", 3, 4), ("p1", 3, 4), ("x", 2, 3)])
    omega = BiasedGraph(g, [{"a", "b", "c"}])
    with pytest.raises(NotBalancing):
        b_classes(omega, 0)


def test_b_classes_on_corpus():
    for omega in corpus(3, 400):
        for v in balancing_vertices(omega):
            classes = b_classes(omega, v)
            links = {e.id for e in omega.graph.links_at(v)}
            assert set().union(*classes) == links if classes else not links
            for c in omega.balanced:
                at_v = c & links
                if at_v:
                    assert any(at_v <= k for k in classes)


def test_signature_from_tree_examples():
    sigma, w = signature_from_tree(BiasedGraph.all_balanced(triangle()))
    assert sigma == frozenset() and w is None
    sigma, w = signature_from_tree(BiasedGraph.contrabalanced(theta2()))
    assert sigma is None and len(w) == 3
    digon = BiasedGraph.contrabalanced(theta2(2))
    sigma, w = signature_from_tree(digon)
    assert w is None and len(sigma) == 1 and sigma < {"p0", "p1"}


def test_signature_from_tree_reproduces_bias_on_corpus():
    done = 0
    for omega in corpus(5, 500):
        sigma, w = signature_from_tree(omega)
        if sigma is None:
            assert any(all(c not in omega.balanced for c in th) for th in brute_thetas(omega.graph))
            continue
        for c in cycles(omega.graph):
            assert (len(c & sigma) % 2 == 0) == (c in omega.balanced)
        done += 1
    assert done > 100


# -- minors -------------------------------------------------------------------------------------

def test_contract_balanced_loop_is_delete():
    g = Multigraph.build([("a", 0, 1), ("b", 1, 2), ("c", 2, 0), ("l", 0, 0)])
    omega = BiasedGraph(g, [{"a", "b", "c"}, {"l"}])
    assert frame_matroid(biased_minor(omega, contract=["l"])) == frame_matroid(biased_minor(omega, delete=["l"]))


def test_contract_unbalanced_loop_rolls_links():
    g = Multigraph.build([("l", 0, 0), ("m", 0, 0), ("a", 0, 1), ("b", 1, 2)])
    omega = BiasedGraph.contrabalanced(g)
    out = contract_edge(omega, "l")
    a = out.graph.edge("a")
    assert a.is_loop and a.u == 1
    assert frozenset(["a"]) not in out.balanced
    assert frozenset(["m"]) in out.balanced


def test_delete_from_balanced_triangle():
    out = biased_minor(BiasedGraph.all_balanced(triangle()), delete=["a"])
    assert cycles(out.graph) == []


def test_minor_unknown_edge():
    with pytest.raises(UnknownEdge):
        biased_minor(BiasedGraph.all_balanced(triangle()), delete=["z"])


def test_contraction_order_independence_on_corpus():
    rng = random.Random(99)
    for omega in corpus(8, 300):
        ids = list(omega.graph.edge_ids)
        if len(ids) < 2:
            continue
        pick = rng.sample(ids, rng.randint(1, min(3, len(ids))))
        ref = frame_matroid(biased_minor(omega, contract=pick))
        for order in itertools.permutations(pick):
            out = omega
            for x in order:
                out = contract_edge(out, x)
            assert frame_matroid(out) == ref
            assert validate_theta(out) is None


# -- isomorphism --------------------------------------------------------------------------------

def test_biased_isomorphic_examples():
    omega = BiasedGraph(triangle(), [{"a", "b", "c"}])
    other = omega.relabel_edges({"a": "x", "b": "y", "c": "z"}).relabel_vertices({0: "p", 1: "q", 2: "r"})
    assert biased_isomorphic(omega, other) is not None
    assert biased_isomorphic(omega, BiasedGraph.contrabalanced(triangle())) is None
    # loop plus unbalanced digon, and a link with a loop at each end: both represent U_{2,3}
    tight = BiasedGraph.contrabalanced(Multigraph.build([("a", 0, 0), ("b", 0, 1), ("c", 0, 1)]))
    loose = BiasedGraph.contrabalanced(Multigraph.build([("a", 0, 0), ("b", 0, 1), ("c", 1, 1)]))
    assert frame_matroid(tight) == frame_matroid(loose) == uniform(2, 3, "abc")
    assert biased_isomorphic(tight, loose) is None


@given(st.integers(0, 10**6))
def test_biased_isomorphism_of_relabelled_copies(seed):
    rng = random.Random(seed)
    omega = random_biased_graph(rng)
    vs = list(omega.graph.vertices)
    perm = vs[:]
    rng.shuffle(perm)
    other = omega.relabel_vertices(dict(zip(vs, perm))).relabel_edges({e: "n" + e for e in omega.graph.edge_ids})
    f = biased_isomorphic(omega, other)
    assert f is not None
    mapped = {frozenset(f["edges"][e] for e in c) for c in omega.balanced}
    assert mapped == set(other.balanced)
