"""Named graphs and matroids used by the verification campaigns."""

from __future__ import annotations

import itertools
from functools import reduce

from .graph import Multigraph
from .matroid import Matroid, MatroidError, _minimal, cycle_matroid, dual, two_sum, uniform

E_PRIME = "e'"


class UnknownName(MatroidError):
    pass


def complete_graph(n: int) -> Multigraph:
    return Multigraph.build([(f"{i}{j}", i, j) for i, j in itertools.combinations(range(n), 2)], range(n))


def k33(extra: bool = False) -> Multigraph:
    edges = [(f"a{i}b{j}", f"a{i}", f"b{j}") for i in range(3) for j in range(3)]
    if extra:
        edges.append((E_PRIME, "a0", "a1"))
    return Multigraph.build(edges)


def wheel(k: int) -> Multigraph:
    """W_k with hub h; rim edges r0r1 and r2r3 are labelled e1 and e2 when k = 4."""
    edges = [(f"s{i}", "h", f"r{i}") for i in range(k)]
    for i in range(k):
        label = f"r{i}{(i + 1) % k}"
        if k == 4 and i == 0:
            label = "e1"
        elif k == 4 and i == 2:
            label = "e2"
        edges.append((label, f"r{i}", f"r{(i + 1) % k}"))
    return Multigraph.build(edges)


def prism() -> Multigraph:
    edges = [("t0", 0, 1), ("t1", 1, 2), ("t2", 2, 0), ("u0", 3, 4), ("u1", 4, 5), ("u2", 5, 3),
             ("m0", 0, 3), ("m1", 1, 4), ("m2", 2, 5)]
    return Multigraph.build(edges)


def binary_matroid(labels, vectors) -> Matroid:
    """Circuits are minimal nonempty subsets summing to zero over GF(2)."""
    n = len(vectors)
    deps = []
    for size in range(1, n + 1):
        for combo in itertools.combinations(range(n), size):
            if reduce(lambda a, b: a ^ b, (vectors[i] for i in combo)) == 0:
                deps.append(sum(1 << i for i in combo))
    return Matroid(labels, _minimal(deps))


def fano() -> Matroid:
    return binary_matroid([f"f{i}" for i in range(1, 8)], list(range(1, 8)))


def build_named(name: str) -> Matroid:
    key = name.strip()
    table = {
        "U24": lambda: uniform(2, 4, ["a", "b", "c", "d"]),
        "U23": lambda: uniform(2, 3, ["a", "b", "c"]),
        "MK5*": lambda: dual(cycle_matroid(complete_graph(5))),
        "MK33*": lambda: dual(cycle_matroid(k33())),
        "MK33p*": lambda: dual(cycle_matroid(k33(extra=True))),
        "MK4": lambda: cycle_matroid(complete_graph(4)),
        "MW4": lambda: cycle_matroid(wheel(4)),
        "F7": fano,
        "F7*": lambda: dual(fano()),
    }
    if key not in table:
        raise UnknownName(f"unknown matroid {name!r}; known: {sorted(table)}")
    return table[key]()


NAMED = ("U24", "U23", "MK5*", "MK33*", "MK33p*", "MK4", "MW4", "F7", "F7*")

# basepoint used when a cographic piece enters a 2-sum
_BASE = {"MK5*": "01", "MK33*": "a0b0", "MK33p*": E_PRIME}


def prefixed(m: Matroid, prefix: str) -> Matroid:
    return m.relabel({x: f"{prefix}{x}" for x in m.ground})


def e0_members() -> list[tuple[str, Matroid]]:
    """The nine 2-sums: U24 with each M*(H), and M*(H1) with M*(H2) for H1 <= H2."""
    hs = ["MK5*", "MK33*", "MK33p*"]
    out = []
    u = prefixed(build_named("U24"), "u.")
    for h in hs:
        mh = prefixed(build_named(h), "x.")
        out.append((f"U24+{h}", two_sum(u, "u.a", mh, "x." + _BASE[h])))
    for h1, h2 in itertools.combinations_with_replacement(hs, 2):
        m1 = prefixed(build_named(h1), "x.")
        m2 = prefixed(build_named(h2), "y.")
        out.append((f"{h1}+{h2}", two_sum(m1, "x." + _BASE[h1], m2, "y." + _BASE[h2])))
    return out


def build_e0() -> list[Matroid]:
    return [m for _, m in e0_members()]


def attach_u24(n: Matroid, l) -> Matroid:
    """N 2-summed with a fresh copy of U_{2,4} on every element of L."""
    out = n
    for k, e in enumerate(sorted(l)):
        u = uniform(2, 4, [f"{e}/u{j}" for j in range(3)] + [f"{e}/p"])
        out = two_sum(out, e, u, f"{e}/p")
    return out


def build_n9() -> Matroid:
    return attach_u24(build_named("U23"), ["a", "b", "c"])


def build_m0() -> tuple[Matroid, frozenset]:
    """U_{2,3} with U_{2,4} attached on one element; L is the other two."""
    n = attach_u24(build_named("U23"), ["c"])
    return n, frozenset(["a", "b"])


def build_m8() -> tuple[Matroid, frozenset]:
    return build_named("MW4"), frozenset(["e1", "e2"])


def build_m4() -> tuple[Matroid, frozenset]:
    """M(K4) with a pair of nonadjacent edges."""
    return build_named("MK4"), frozenset(["01", "23"])
