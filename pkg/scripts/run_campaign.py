"""Run the verification campaigns and write one JSON report per campaign.

    python3 scripts/run_campaign.py --out results/ [--only n9 e0 e-family]
"""

from __future__ import annotations

import argparse
import time
from pathlib import Path

from framekit import io
from framekit.represent import Solver
from framekit.verify import summarise, verify_e0, verify_e_family, verify_n9


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="results")
    ap.add_argument("--only", nargs="*", default=["n9", "e0", "e-family"], choices=["n9", "e0", "e-family"])
    ap.add_argument("--cache-dir", default=None)
    args = ap.parse_args(argv)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    solver = Solver(cache_dir=args.cache_dir)
    verdicts = []
    for target in args.only:
        t0 = time.monotonic()
        if target == "n9":
            rep = verify_n9(solver)
            doc, verdict = rep.to_dict(), rep.verdict
        elif target == "e0":
            reps = verify_e0(solver)
            verdict = summarise(r.verdict for r in reps)
            doc = {"verdict": verdict, "members": [r.to_dict() for r in reps]}
        else:
            doc = verify_e_family(solver)
            doc.pop("runtime")
            verdict = doc["verdict"]
        io.write_json(out / f"{target}.json", doc)
        verdicts.append(verdict)
        print(f"{target}: {verdict} ({time.monotonic() - t0:.1f}s) -> {out / (target + '.json')}")
    return {"confirmed": 0, "refuted": 2, "partial": 3}[summarise(verdicts)]


if __name__ == "__main__":
    raise SystemExit(main())
