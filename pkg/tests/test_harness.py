import itertools
import json
import random

import pytest

from framekit import io
from framekit.biased import BiasedGraph
from framekit.cli import main
from framekit.corpus import random_biased_graph
from framekit.frame import frame_matroid
from framekit.graph import Multigraph
from framekit.matroid import (
    connectivity_lambda,
    cycle_matroid,
    dual,
    is_connected,
    is_isomorphic,
    uniform,
)
from framekit.named import (
    E_PRIME,
    NAMED,
    UnknownName,
    attach_u24,
    build_e0,
    build_m0,
    build_m8,
    build_n9,
    build_named,
    complete_graph,
    e0_members,
    k33,
    prism,
)
from framekit.represent import Solver
from framekit.verify import (
    CONFIRMED,
    REFUTED,
    enumerate_excluded_matroidals,
    matroidal_minors,
    pairwise_distinct,
    verify_excluded_matroidal,
    verify_excluded_minor,
)

# -- named matroids -------------------------------------------------------------------------------


@pytest.mark.parametrize("name,n,r", [
    ("U24", 4, 2), ("U23", 3, 2), ("MK5*", 10, 6), ("MK33*", 9, 4), ("MK33p*", 10, 5),
    ("MK4", 6, 3), ("MW4", 8, 4), ("F7", 7, 3), ("F7*", 7, 4),
])
def test_named_sizes(name, n, r):
    m = build_named(name)
    assert (m.n, m.r) == (n, r)
    assert build_named(name).ground == m.ground


def test_named_structure():
    assert build_named("MK5*") == dual(cycle_matroid(complete_graph(5)))
    mk = build_named("MK33p*")
    assert E_PRIME in mk.ground
    e = k33(extra=True).edge(E_PRIME)
    assert e.u.startswith("a") and e.v.startswith("a")
    mw = build_named("MW4")
    assert mw.rank(["e1", "e2"]) == 2 and set(NAMED) >= {"U24", "F7", "MW4"}
    with pytest.raises(UnknownName):
        build_named("K7")


def test_e0_members():
    ms = build_e0()
    assert len(ms) == 9
    assert pairwise_distinct(ms)
    sizes = {name: (m.n, m.r) for name, m in e0_members()}
    # a 2-sum drops both basepoints: 3 + 8 elements, rank 2 + 4 - 1
    assert sizes["U24+MK33*"] == (11, 5)
    assert sizes["U24+MK5*"] == (12, 7)
    assert sizes["MK5*+MK5*"] == (18, 11)
    assert all(is_connected(m) for m in ms)


def test_n9_and_m0():
    n9 = build_n9()
    assert (n9.n, n9.r) == (9, 5)
    m0, l0 = build_m0()
    assert is_isomorphic(attach_u24(m0, l0), n9) is not None


def test_m8_sum_size():
    m8, l8 = build_m8()
    s = attach_u24(m8, l8)
    assert (s.n, s.r) == (12, 6)


# -- verification ----------------------------------------------------------------------------------

def test_verify_n9(solver):
    rep = verify_excluded_minor(build_n9(), "N9", solver)
    assert rep.verdict == CONFIRMED
    assert len(rep.claims) == 3 + 1 + 18
    minors = [c for c in rep.claims if c.name.startswith(("delete", "contract"))]
    assert all("witness" in c.detail for c in minors)


def test_verify_u24_plus_mk33(solver):
    m = dict(e0_members())["U24+MK33*"]
    assert verify_excluded_minor(m, "U24+MK33*", solver).verdict == CONFIRMED


def test_u24_alone_is_rejected(solver):
    rep = verify_excluded_minor(uniform(2, 4, "abcd"), "U24", solver)
    assert rep.verdict == REFUTED
    assert next(c for c in rep.claims if c.name == "not-frame").status == REFUTED


def test_verify_excluded_matroidal_examples(solver):
    u23 = build_named("U23")
    assert verify_excluded_matroidal(u23, u23.ground, solver=solver).verdict == CONFIRMED
    m8, l8 = build_m8()
    assert verify_excluded_matroidal(m8, l8, solver=solver).verdict == CONFIRMED
    u25 = uniform(2, 5)
    assert verify_excluded_matroidal(u25, u25.ground[:2], solver=solver).verdict == REFUTED


def test_matroidal_minors_list():
    u23 = build_named("U23")
    names = [n for n, _, _ in matroidal_minors(u23, {"a", "b"})]
    assert names == ["delete c", "contract c", "unmark a", "unmark b"]


def test_enumeration_small_cases(solver):
    classes, status = enumerate_excluded_matroidals(2, 8, solver)
    assert classes == [] and status == CONFIRMED
    classes, status = enumerate_excluded_matroidals(4, 8, solver, graphic_only=True)
    assert status == CONFIRMED and len(classes) == 1
    m8, l8 = build_m8()
    assert is_isomorphic(classes[0].matroid, m8, classes[0].l, l8) is not None
    with pytest.raises(ValueError):
        enumerate_excluded_matroidals(5, 8, solver)


# -- properties ------------------------------------------------------------------------------------

def small_matroidals(seed, count):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        m = frame_matroid(random_biased_graph(rng, 4, 6, True))
        if m.loops() or m.n < 3 or not is_connected(m):
            continue
        k = rng.randint(1, min(3, m.n))
        out.append((m, frozenset(rng.sample(m.ground, k))))
    return out


def test_u24_sums_are_frame_iff_matroidal_is_frame():
    verdicts = {True: 0, False: 0}
    for n, l in small_matroidals(21, 30):
        s = attach_u24(n, l)
        lhs = Solver(cache_dir=None, fast_path=False).is_frame(s)
        rhs = Solver(cache_dir=None).is_frame_matroidal(n, l)
        assert lhs.frame is not None and lhs.frame == rhs.frame, (n, l)
        verdicts[rhs.frame] += 1
    assert verdicts[True] > 0 and verdicts[False] > 0


def test_excluded_matroidals_with_three_marked_are_u23(solver):
    u23 = build_named("U23")
    found = 0
    seen = []
    for n, _ in small_matroidals(33, 60):
        if n.n > 6 or any(is_isomorphic(n, o) is not None for o in seen):
            continue
        seen.append(n)
        for l in itertools.combinations(n.ground, 3):
            if solver.is_frame_matroidal(n, l).frame:
                continue
            rep = verify_excluded_matroidal(n, l, solver=solver)
            if rep.verdict == CONFIRMED:
                assert is_isomorphic(n, u23, l, u23.ground) is not None
                found += 1
    assert found > 0


def two_separations(m):
    out = []
    for k in range(2, m.n - 1):
        for a in itertools.combinations(m.ground, k):
            if m.ground[0] not in a:
                continue
            if connectivity_lambda(m, m.mask(a)) == 2:
                out.append(frozenset(a))
    return out


def triangle_side(m, a):
    b = frozenset(m.ground) - a
    for side in (a, b):
        if len(side) == 3 and any(set(m.labels(c)) == side for c in m.circuits):
            return side
    return None


def test_triangle_sides_of_two_separations_are_equal_or_disjoint():
    rng = random.Random(4)
    checked = 0
    attempts = 0
    while checked < 15 and attempts < 1000:
        attempts += 1
        n = frame_matroid(random_biased_graph(rng, 4, 6, True))
        if n.loops() or n.n < 3 or not is_connected(n):
            continue
        l = rng.sample(n.ground, rng.randint(1, min(3, n.n)))
        m = attach_u24(n, l)
        if m.n < 6 or m.n > 12:
            continue
        seps = two_separations(m)
        tri = [triangle_side(m, a) for a in seps]
        if not seps or any(t is None for t in tri):
            continue
        for s, t in itertools.combinations(set(tri), 2):
            assert s == t or not s & t
        checked += 1
    assert checked >= 10


# -- io ---------------------------------------------------------------------------------------------

def test_io_round_trips(tmp_path):
    m = build_named("MK33p*")
    back, l = io.matroid_from_dict(io.matroid_to_dict(m, {E_PRIME}))
    assert back == m and l == {E_PRIME}
    g = prism()
    assert io.graph_from_dict(io.graph_to_dict(g)) == g
    omega = BiasedGraph.from_signature(g, [{"t0", "u0"}])
    again = io.biased_from_dict(io.biased_to_dict(omega))
    assert again.balanced == omega.balanced
    plain = BiasedGraph(g, omega.balanced)
    assert io.biased_from_dict(json.loads(json.dumps(io.biased_to_dict(plain)))).balanced == plain.balanced
    path = tmp_path / "m.json"
    io.write_json(path, io.matroid_to_dict(m))
    assert io.load_any(path)["kind"] == "matroid"
    io.write_json(path, {"x": 1})
    with pytest.raises(ValueError):
        io.load_any(path)


# -- CLI --------------------------------------------------------------------------------------------

def run(capsys, *argv):
    code = main(["--cache-dir", "none", *argv])
    return code, capsys.readouterr().out


def test_cli_representations(capsys):
    code, out = run(capsys, "representations", "U24")
    assert code == 0 and out.startswith("U24: 3 representation(s)")
    code, out = run(capsys, "--report", "json", "representations", "U23", "--l", "a,b,c")
    assert code == 0 and json.loads(out)["count"] == 0 and json.loads(out)["status"] == "not-frame-exhausted"


def test_cli_check_frame_files(capsys, tmp_path):
    path = tmp_path / "w4.json"
    io.write_json(path, io.matroid_to_dict(build_named("MW4"), {"e1", "e2"}))
    code, out = run(capsys, "check-frame", str(path))
    assert code == 0 and "not-frame-exhausted" in out
    gpath = tmp_path / "k4.json"
    io.write_json(gpath, io.graph_to_dict(complete_graph(4)))
    code, out = run(capsys, "--report", "json", "check-frame", str(gpath))
    assert code == 0 and json.loads(out)["status"] == "frame-with-witness"
    bpath = tmp_path / "theta.json"
    theta = BiasedGraph.contrabalanced(Multigraph.build([("a", 0, 1), ("b", 0, 1), ("c", 0, 1)]))
    io.write_json(bpath, io.biased_to_dict(theta))
    code, out = run(capsys, "check-frame", str(bpath))
    assert code == 0 and "frame-with-witness" in out


def test_cli_verify_n9(capsys):
    code, out = run(capsys, "verify", "n9")
    assert code == 0 and out.startswith("N9: confirmed")


def test_cli_enumerate_exit_codes(capsys):
    code, out = run(capsys, "enumerate-matroidals", "--rank", "2", "--max-elements", "6")
    assert code == 0 and "0 class(es)" in out
    code, out = run(capsys, "--report", "json", "enumerate-matroidals", "--rank", "4", "--max-elements", "8")
    doc = json.loads(out)
    assert code == 0 and doc["count"] == 1 and doc["graphic_only"] is True


def test_cli_rooted_minor(capsys, tmp_path):
    path = tmp_path / "prism.json"
    io.write_json(path, {**io.graph_to_dict(prism()), "simple": True})
    code, out = run(capsys, "rooted-minor", str(path), "--e1", "t0", "--e2", "u1")
    assert code == 0 and "minor on t0, u1" in out
    code, _ = run(capsys, "rooted-minor", str(path), "--e1", "t0", "--e2", "t1")
    assert code == 2


def test_cli_bad_input(capsys, tmp_path):
    assert main(["--cache-dir", "none", "check-frame", str(tmp_path / "missing.json")]) == 1
    with pytest.raises(SystemExit):
        main(["--cache-dir", "none", "verify", "nothing"])


def test_reports_are_deterministic(capsys):
    first = run(capsys, "--report", "json", "verify", "n9")
    second = run(capsys, "--report", "json", "verify", "n9")
    assert first == second
    assert "elapsed" not in first[1] and "runtime" not in first[1]
    code, out = run(capsys, "--report", "json", "--timings", "verify", "n9")
    assert "runtime" in out
