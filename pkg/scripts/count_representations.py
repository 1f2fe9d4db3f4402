"""Count biased-graph representations of the named matroids, up to isomorphism.

    python3 scripts/count_representations.py [--out results/representations.json]
"""

from __future__ import annotations

import argparse
import time

from framekit import io
from framekit.named import build_named
from framekit.represent import Solver

NAMES = ("U23", "U24", "MK33*", "MK33p*", "MK5*")


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", help="write a JSON summary here")
    args = ap.parse_args(argv)
    solver = Solver(cache_dir=None)
    rows = []
    for name in NAMES:
        m = build_named(name)
        t0 = time.monotonic()
        v = solver.enumerate_l_biased(m)
        dt = time.monotonic() - t0
        shapes = sorted((len(w.graph.vertices), sum(e.is_loop for e in w.graph.edges), len(w.balanced))
                        for w in v.witnesses)
        rows.append({"name": name, "elements": m.n, "rank": m.r, "count": len(v.witnesses),
                     "status": v.status, "shapes": shapes, "seconds": round(dt, 2)})
        print(f"{name:7s} n={m.n:2d} r={m.r}  {len(v.witnesses)} representation(s)  [{v.status}]  {dt:.2f}s")
    if args.out:
        io.write_json(args.out, {"representations": rows})
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
