"""Seeded random instances for property checks and experiments."""

from __future__ import annotations

import random

from .biased import BiasedGraph, validate_theta
from .graph import Multigraph, cycles


def random_multigraph(rng: random.Random, max_vertices: int = 5, max_edges: int = 8,
                      loop_rate: float = 0.2, connected: bool = False) -> Multigraph:
    nv = rng.randint(1, max_vertices)
    ne = rng.randint(1, max_edges)
    edges = []
    if connected:
        for v in range(1, nv):
            edges.append((f"e{len(edges)}", rng.randrange(v), v))
    while len(edges) < ne:
        u = rng.randrange(nv)
        v = u if rng.random() < loop_rate else rng.randrange(nv)
        edges.append((f"e{len(edges)}", u, v))
    return Multigraph.build(edges, range(nv))


def random_bias(rng: random.Random, g: Multigraph, p: float = 0.5, tries: int = 50) -> BiasedGraph:
    """A theta-valid bias: a random signature, a random cycle set that passes, or all unbalanced."""
    kind = rng.random()
    if kind < 0.4:
        sigma = [e.id for e in g.edges if rng.random() < 0.5]
        return BiasedGraph.from_signature(g, [sigma])
    cs = cycles(g)
    for _ in range(tries):
        bal = [c for c in cs if rng.random() < p]
        omega = BiasedGraph(g, bal, check=False)
        if validate_theta(omega) is None:
            return omega
    return BiasedGraph.contrabalanced(g)


def random_biased_graph(rng: random.Random, max_vertices: int = 5, max_edges: int = 8,
                        connected: bool = False) -> BiasedGraph:
    return random_bias(rng, random_multigraph(rng, max_vertices, max_edges, connected=connected))


def corpus(seed: int, size: int, **kw) -> list[BiasedGraph]:
    rng = random.Random(seed)
    return [random_biased_graph(rng, **kw) for _ in range(size)]


def random_cycle_collection(rng: random.Random, g: Multigraph, p: float = 0.5) -> BiasedGraph:
    """Any collection of cycles, theta-valid or not."""
    return BiasedGraph(g, [c for c in cycles(g) if rng.random() < p], check=False)


__all__ = ["random_multigraph", "random_bias", "random_biased_graph", "corpus", "random_cycle_collection"]
