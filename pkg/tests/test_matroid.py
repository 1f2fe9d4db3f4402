import itertools
import random

import pytest
from hypothesis import given, strategies as st

from framekit.corpus import random_biased_graph, random_multigraph
from framekit.frame import frame_matroid
from framekit.graph import Multigraph
from framekit.matroid import (
    BasepointMissing,
    CircuitAxiomViolation,
    GroundOverlap,
    NotA2Separation,
    OverlappingSets,
    components,
    connectivity,
    connectivity_lambda,
    contract,
    cycle_matroid,
    decompose_two_sum,
    delete,
    direct_sum,
    dual,
    find_2_separation,
    from_circuits,
    is_binary,
    is_connected,
    is_cosimple,
    is_isomorphic,
    is_k_connected,
    is_simple,
    minor,
    parallel_classes,
    series_classes,
    two_sum,
    uniform,
    validate,
)
from framekit.named import build_e0, build_n9, build_named, complete_graph

from conftest import subsets


def brute_rank(m, xs):
    """Largest subset of xs containing no circuit."""
    xs = list(xs)
    circ = m.circuit_sets()
    for k in range(len(xs), -1, -1):
        for s in itertools.combinations(xs, k):
            if not any(c <= set(s) for c in circ):
                return k
    return 0


def brute_cocircuits(m):
    """Minimal sets whose removal drops the rank."""
    r = m.r
    hits = [frozenset(s) for s in subsets(m.ground) if s and m.rank(set(m.ground) - set(s)) < r]
    return {d for d in hits if not any(o < d for o in hits)}


def parity_binary(m):
    """A matroid is binary iff every circuit meets every cocircuit evenly."""
    cocs = brute_cocircuits(m)
    return all(len(c & d) % 2 == 0 for c in m.circuit_sets() for d in cocs)


def random_matroid(seed):
    rng = random.Random(seed)
    omega = random_biased_graph(rng, max_vertices=4, max_edges=7)
    return frame_matroid(omega)


def c4():
    return cycle_matroid(Multigraph.build([("a", 0, 1), ("b", 1, 2), ("c", 2, 3), ("d", 3, 0)]))


# -- construction -------------------------------------------------------------

def test_from_circuits_uniform_examples():
    m = from_circuits("abc", ["abc"])
    assert m.r == 2 and is_isomorphic(m, uniform(2, 3)) is not None
    m = from_circuits("abcd", itertools.combinations("abcd", 3))
    assert is_isomorphic(m, uniform(2, 4)) is not None


def test_from_circuits_rejects_containment():
    with pytest.raises(CircuitAxiomViolation):
        from_circuits("ab", [["a"], ["a", "b"]])


def test_from_circuits_rejects_elimination_failure():
    # {a,b,c} and {c,d,e} share c but nothing inside {a,b,d,e} is a circuit
    with pytest.raises(CircuitAxiomViolation):
        from_circuits("abcde", ["abc", "cde"])


def test_from_circuits_rejects_empty_circuit():
    with pytest.raises(CircuitAxiomViolation):
        from_circuits("ab", [[]])


# -- rank -------------------------------------------------------------------------

def test_rank_examples():
    u = uniform(2, 4, "abcd")
    assert u.rank(list("abc")) == 2
    assert u.rank([]) == 0
    k4 = cycle_matroid(complete_graph(4))
    assert k4.rank(["01", "12", "02"]) == 2
    assert k4.rank() == 3


@given(st.integers(0, 10**6))
def test_rank_matches_brute_force(seed):
    m = random_matroid(seed)
    rng = random.Random(seed)
    for _ in range(5):
        xs = [x for x in m.ground if rng.random() < 0.5]
        assert m.rank(xs) == brute_rank(m, xs)


@given(st.integers(0, 10**6))
def test_rank_monotone_and_submodular(seed):
    m = random_matroid(seed)
    rng = random.Random(seed)
    for _ in range(10):
        a = {x for x in m.ground if rng.random() < 0.5}
        b = {x for x in m.ground if rng.random() < 0.5}
        assert m.rank(a & b) <= m.rank(a) <= m.rank(a | b)
        assert m.rank(a) + m.rank(b) >= m.rank(a | b) + m.rank(a & b)


@given(st.integers(0, 10**6))
def test_validate_accepts_generated_matroids(seed):
    validate(random_matroid(seed))


# -- cycle matroids ------------------------------------------------------------------

def test_cycle_matroid_examples():
    tri = cycle_matroid(Multigraph.build([("a", 0, 1), ("b", 1, 2), ("c", 2, 0)]))
    assert is_isomorphic(tri, uniform(2, 3)) is not None
    k4 = cycle_matroid(complete_graph(4))
    sizes = sorted(len(c) for c in k4.circuit_sets())
    assert sizes == [3, 3, 3, 3, 4, 4, 4]
    loop = cycle_matroid(Multigraph.build([("x", 0, 0)]))
    assert loop.circuit_sets() == [frozenset({"x"})]


@given(st.integers(0, 10**6))
def test_cycle_matroid_rank_is_vertices_minus_components(seed):
    rng = random.Random(seed)
    g = random_multigraph(rng, max_vertices=5, max_edges=8)
    m = cycle_matroid(g)
    for xs in itertools.islice(subsets(g.edge_ids), 64):
        sub = g.subgraph(xs)
        assert m.rank(xs) == len(sub.vertices) - len(sub.vertex_components())


# -- duality --------------------------------------------------------------------------

def test_dual_examples():
    k4 = cycle_matroid(complete_graph(4))
    assert dual(dual(k4)) == k4
    u = uniform(2, 4)
    assert dual(u) == u
    d = dual(cycle_matroid(complete_graph(5)))
    assert d.r == 6 and min(len(c) for c in d.circuit_sets()) == 4


@given(st.integers(0, 10**6))
def test_dual_rank_formula_and_involution(seed):
    m = random_matroid(seed)
    d = dual(m)
    assert dual(d) == m
    for xs in subsets(m.ground):
        rest = set(m.ground) - set(xs)
        assert d.rank(xs) == len(xs) + m.rank(rest) - m.r


@given(st.integers(0, 10**6))
def test_dual_circuits_are_brute_force_cocircuits(seed):
    m = random_matroid(seed)
    assert set(dual(m).circuit_sets()) == brute_cocircuits(m)


# -- minors ----------------------------------------------------------------------------

def test_minor_examples():
    u = uniform(2, 4, "abcd")
    assert is_isomorphic(minor(u, "a", ()), uniform(2, 3)) is not None
    assert is_isomorphic(minor(u, (), "a"), uniform(1, 3)) is not None
    k4 = complete_graph(4)
    contracted = Multigraph.build([(e.id, 0 if e.u == 1 else e.u, 0 if e.v == 1 else e.v)
                                   for e in k4.edges if e.id != "01"])
    assert minor(cycle_matroid(k4), (), ["01"]) == cycle_matroid(contracted)


def test_minor_overlap_rejected():
    with pytest.raises(OverlappingSets):
        minor(uniform(2, 4, "abcd"), "a", "a")


@given(st.integers(0, 10**6))
def test_minor_rank_function(seed):
    m = random_matroid(seed)
    rng = random.Random(seed)
    ground = list(m.ground)
    rng.shuffle(ground)
    k = rng.randint(0, len(ground))
    d = set(ground[: k // 2])
    c = set(ground[k // 2: k])
    n = minor(m, d, c)
    for xs in itertools.islice(subsets(n.ground), 64):
        assert n.rank(xs) == m.rank(set(xs) | c) - m.rank(c)


@given(st.integers(0, 10**6))
def test_delete_and_contract_are_dual(seed):
    m = random_matroid(seed)
    for e in m.ground:
        assert dual(delete(m, [e])) == contract(dual(m), [e])


# -- 2-sums ------------------------------------------------------------------------------

def test_two_sum_triangles_is_four_cycle():
    s = two_sum(uniform(2, 3, "abe"), "e", uniform(2, 3, "cdf"), "f")
    assert is_isomorphic(s, uniform(3, 4)) is not None
    assert s == c4()


def test_two_sum_u24_u24_circuits():
    s = two_sum(uniform(2, 4, "abce"), "e", uniform(2, 4, "xyzf"), "f")
    assert s.r == 3 and s.n == 6
    expect = {frozenset("abc"), frozenset("xyz")}
    expect |= {frozenset(p + q) for p in itertools.combinations("abc", 2) for q in itertools.combinations("xyz", 2)}
    assert set(s.circuit_sets()) == expect


def test_two_sum_u24_mk5_is_e0_member():
    u = uniform(2, 4, ["u0", "u1", "u2", "p"])
    mk5 = build_named("MK5*")
    s = two_sum(u, "p", mk5, "01")
    assert s.n == 12 and s.r == 7
    assert any(is_isomorphic(s, e) is not None for e in build_e0())


def test_two_sum_errors():
    u = uniform(2, 3, "abc")
    with pytest.raises(BasepointMissing):
        two_sum(u, "z", uniform(2, 3, "xyw"), "x")
    with pytest.raises(GroundOverlap):
        two_sum(u, "a", uniform(2, 3, "bxy"), "x")


def test_two_sum_is_symmetric():
    k4 = cycle_matroid(complete_graph(4))
    m1 = k4.relabel({x: "k" + x for x in k4.ground})
    m2 = uniform(2, 4, "abcd")
    s1 = two_sum(m1, "k01", m2, "a")
    s2 = two_sum(m2, "a", m1, "k01")
    assert is_isomorphic(s1, s2) is not None


def test_two_sum_rank_and_connectivity():
    s = two_sum(uniform(2, 4, "abcp"), "p", cycle_matroid(complete_graph(4)), "01")
    assert s.r == 2 + 3 - 1 and is_connected(s)
    assert connectivity(s) == 2


# -- decomposition -------------------------------------------------------------------------

def test_decompose_c4():
    m1, p1, m2, p2 = decompose_two_sum(c4(), {"a", "b"})
    assert is_isomorphic(m1, uniform(2, 3)) is not None
    assert is_isomorphic(m2, uniform(2, 3)) is not None
    assert two_sum(m1, p1, m2.relabel({p2: p2 + "'"}), p2 + "'") == c4()


def test_decompose_n9_at_u24_triangle():
    n9 = build_n9()
    side = {"c/u0", "c/u1", "c/u2"}
    m1, p, m2, q = decompose_two_sum(n9, side)
    assert is_isomorphic(m1, uniform(2, 4)) is not None
    assert m2.n == 7 and m2.r == 4
    assert two_sum(m1, p, m2.relabel({q: "q"}), "q") == n9


def test_decompose_three_connected_rejected():
    with pytest.raises(NotA2Separation):
        decompose_two_sum(uniform(2, 4, "abcd"), {"a", "b"})


@pytest.mark.parametrize("m", build_e0()[:5] + [build_n9()], ids=lambda m: f"n{m.n}")
def test_decompose_recomposes_on_every_two_separation(m):
    seen = 0
    for k in range(2, m.n // 2 + 1):
        for side in itertools.combinations(m.ground, k):
            if connectivity_lambda(m, side) != 2:
                continue
            m1, p, m2, q = decompose_two_sum(m, side)
            assert m1.n < m.n and m2.n < m.n
            assert two_sum(m1, p, m2.relabel({q: "#q"}), "#q") == m
            seen += 1
            if seen >= 30:
                return
    assert seen > 0


@given(st.integers(0, 10**6))
def test_decompose_round_trip_on_corpus(seed):
    m = random_matroid(seed)
    if not is_connected(m):
        return
    sep = find_2_separation(m)
    if sep is None:
        return
    m1, p, m2, q = decompose_two_sum(m, sep)
    assert two_sum(m1, p, m2.relabel({q: "#q"}), "#q") == m
    assert is_connected(m1) and is_connected(m2)


# -- connectivity ---------------------------------------------------------------------------

def brute_connectivity(m):
    if m.n < 2:
        return float("inf")
    best = float("inf")
    for k in range(1, m.n // 2 + 1):
        for side in itertools.combinations(m.ground, k):
            lam = connectivity_lambda(m, side)
            if lam <= k:
                best = min(best, lam)
    return best


def test_connectivity_examples():
    assert is_k_connected(uniform(2, 4), 3)
    ds = direct_sum(uniform(2, 3, "abc"), uniform(2, 3, "xyz"))
    assert connectivity(ds) == 1 and len(components(ds)) == 2
    assert connectivity(build_n9()) == 2


@given(st.integers(0, 10**6))
def test_connectivity_matches_partition_scan(seed):
    m = random_matroid(seed)
    assert connectivity(m) == brute_connectivity(m)


# -- simple / cosimple -------------------------------------------------------------------------

def test_parallel_and_series_examples():
    u12 = uniform(1, 2, "ab")
    assert parallel_classes(u12) == [frozenset("ab")] and not is_simple(u12)
    path = cycle_matroid(Multigraph.build([("a", 0, 1), ("b", 1, 2), ("c", 2, 0), ("d", 2, 3), ("e", 3, 0)]))
    assert frozenset("de") in series_classes(path) and not is_cosimple(path)


def test_e0_members_simple_and_cosimple():
    for m in build_e0():
        assert is_simple(m) and is_cosimple(m)


# -- binary -------------------------------------------------------------------------------------

def test_binary_examples():
    assert not is_binary(uniform(2, 4))
    assert is_binary(cycle_matroid(complete_graph(4)))
    assert not is_binary(two_sum(uniform(2, 4, "abcp"), "p", uniform(2, 4, "xyzq"), "q"))
    assert is_binary(build_named("F7"))


@given(st.integers(0, 10**6))
def test_binary_matches_parity_oracle(seed):
    m = random_matroid(seed)
    assert is_binary(m) == parity_binary(m)


# -- isomorphism -----------------------------------------------------------------------------------

def test_isomorphism_examples():
    u = uniform(2, 4, "abcd")
    v = uniform(2, 4, "wxyz")
    f = is_isomorphic(u, v)
    assert f is not None and set(f.values()) == set("wxyz")
    assert is_isomorphic(u, uniform(2, 5)) is None
    assert is_isomorphic(u, uniform(3, 4)) is None


@given(st.integers(0, 10**6))
def test_isomorphism_finds_random_relabels(seed):
    m = random_matroid(seed)
    rng = random.Random(seed)
    img = [f"z{i}" for i in range(m.n)]
    rng.shuffle(img)
    other = m.relabel(dict(zip(m.ground, img)))
    f = is_isomorphic(m, other)
    assert f is not None
    assert m.relabel(f) == other


def test_isomorphism_respects_marked_sets():
    k4 = cycle_matroid(complete_graph(4))
    assert is_isomorphic(k4, k4, {"01", "23"}, {"02", "13"}) is not None
    assert is_isomorphic(k4, k4, {"01", "23"}, {"01", "02"}) is None
