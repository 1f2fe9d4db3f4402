"""Frame matroids, biased graphs and excluded-minor verification."""

from .biased import BiasedGraph, b_classes, balancing_vertices, biased_isomorphic, biased_minor, validate_theta
from .frame import (
    classify_biseparation,
    extract_summands,
    frame_matroid,
    frame_rank,
    link_sum,
    loop_sum,
    pinch,
    roll_up,
    split,
    twisted_flip,
    unroll,
)
from .graph import Edge, Multigraph
from .matroid import Matroid, cycle_matroid, decompose_two_sum, dual, from_circuits, minor, two_sum, uniform
from .named import build_e0, build_n9, build_named
from .represent import RepVerdict, Solver, enumerate_l_biased, is_frame, is_frame_matroidal, is_graphic
from .rooted import RootedMinorWitness, rooted_k4_w4_minor
from .search import SearchLimits, search

__all__ = [
    "BiasedGraph", "Edge", "Matroid", "Multigraph", "RepVerdict", "RootedMinorWitness", "SearchLimits",
    "Solver", "b_classes", "balancing_vertices", "biased_isomorphic", "biased_minor", "build_e0",
    "build_n9", "build_named", "classify_biseparation", "cycle_matroid", "decompose_two_sum", "dual",
    "enumerate_l_biased", "extract_summands", "frame_matroid", "frame_rank", "from_circuits",
    "is_frame", "is_frame_matroidal", "is_graphic", "link_sum", "loop_sum", "minor", "pinch",
    "roll_up", "rooted_k4_w4_minor", "search", "split", "twisted_flip", "two_sum", "uniform",
    "unroll", "validate_theta",
]
