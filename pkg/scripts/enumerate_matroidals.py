"""Enumerate excluded matroidals (N, L) with |L| = 2 and describe each class.

    python3 scripts/enumerate_matroidals.py [--max-elements 8] [--out results/matroidals.json]
"""

from __future__ import annotations

import argparse
import time

from framekit import io
from framekit.matroid import is_binary, is_isomorphic, uniform
from framekit.named import build_named
from framekit.represent import Solver
from framekit.verify import enumerate_excluded_matroidals, three_connected_frame_matroids


def describe(m) -> str:
    """A recognisable name for the small matroids that turn up."""
    if m.r == 3 and m.n == 5 and is_isomorphic(m, uniform(3, 5)) is not None:
        return "U35"
    if is_isomorphic(m, build_named("MK4")) is not None:
        return "M(K4)"
    if is_isomorphic(m, build_named("MW4")) is not None:
        return "M(W4)"
    lines = sorted(len(c) for c in m.circuit_sets() if len(c) == 3)
    return f"rank {m.r}, {m.n} elements, {len(lines)} three-point lines, {'binary' if is_binary(m) else 'non-binary'}"


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-elements", type=int, default=8)
    ap.add_argument("--out", help="write a JSON summary here")
    args = ap.parse_args(argv)
    solver = Solver(cache_dir=None)
    out = []
    for rank, graphic in ((2, False), (3, False), (4, True)):
        t0 = time.monotonic()
        pool = three_connected_frame_matroids(rank, args.max_elements, graphic)
        classes, status = enumerate_excluded_matroidals(rank, args.max_elements, solver, graphic_only=graphic)
        dt = time.monotonic() - t0
        kind = "graphic " if graphic else ""
        print(f"rank {rank}: {len(pool)} {kind}3-connected candidates, {len(classes)} class(es) [{status}] {dt:.1f}s")
        for c in classes:
            print(f"  {describe(c.matroid)}; L = {sorted(c.l)}")
            out.append({"rank": rank, "description": describe(c.matroid), **c.to_dict()})
    if args.out:
        io.write_json(args.out, {"classes": out})
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
