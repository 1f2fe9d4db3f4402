"""Command line entry point: ``framekit <command> ...``.

Exit codes: 0 when every claim is confirmed, 2 when any claim is refuted,
3 when some check ran out of budget.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import io
from .frame import frame_matroid
from .matroid import MatroidError
from .named import NAMED, build_named
from .represent import INCONCLUSIVE, Solver
from .rooted import InvalidInput, NoWitness, rooted_k4_w4_minor
from .search import SearchLimits
from .verify import (
    CONFIRMED,
    PARTIAL,
    REFUTED,
    enumerate_excluded_matroidals,
    summarise,
    verify_e0,
    verify_e_family,
    verify_n9,
)

EXIT = {CONFIRMED: 0, REFUTED: 2, PARTIAL: 3}

# class counts the enumeration is compared against
EXPECTED_CLASSES = {(2, False): 0, (3, False): 7, (4, True): 1}


def _default_cache() -> str:
    return os.path.join(os.path.expanduser("~"), ".cache", "framekit")


def _solver(args, fast_path: bool = True) -> Solver:
    limits = SearchLimits(node_budget=args.node_budget, time_budget=args.time_budget)
    cache = None if args.cache_dir in ("", "none") else args.cache_dir
    return Solver(limits, cache_dir=cache, fast_path=fast_path)


def _emit(args, payload: dict, text: str) -> None:
    if args.report == "json":
        sys.stdout.write(io.dumps(payload))
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _load_matroid(source: str):
    if source in NAMED:
        return build_named(source), frozenset()
    doc = io.load_any(source)
    if doc["kind"] == "matroid":
        return io.matroid_from_dict(doc["data"])
    if doc["kind"] == "biased":
        return frame_matroid(io.biased_from_dict(doc["data"])), frozenset(doc["data"].get("l", ()))
    if doc["kind"] == "graph":
        from .matroid import cycle_matroid

        return cycle_matroid(io.graph_from_dict(doc["data"])), frozenset()
    raise SystemExit(f"cannot read a matroid from {source}")


# -- commands --------------------------------------------------------------------

def cmd_verify(args) -> int:
    solver = _solver(args)
    if args.target == "n9":
        rep = verify_n9(solver)
        payload = rep.to_dict(args.timings)
        lines = [f"N9: {rep.verdict}"] + [f"  {c.name}: {c.status}" for c in rep.claims]
        _emit(args, payload, "\n".join(lines))
        return EXIT[rep.verdict]
    if args.target == "e0":
        reps = verify_e0(solver)
        verdict = summarise(r.verdict for r in reps)
        payload = {"verdict": verdict, "members": [r.to_dict(args.timings) for r in reps]}
        lines = [f"E0: {verdict}"] + [f"  {r.subject}: {r.verdict} ({len(r.claims)} claims)" for r in reps]
        _emit(args, payload, "\n".join(lines))
        return EXIT[verdict]
    summary = verify_e_family(solver)
    runtime = summary.pop("runtime")
    if args.timings:
        summary["runtime"] = round(runtime, 3)
    lines = [f"E family: {summary['verdict']}",
             f"  members: {summary['members']} (expected 18)",
             f"  pairwise non-isomorphic: {summary['pairwise_non_isomorphic']}",
             f"  M0 sum is N9: {summary['m0_sum_is_n9']}"]
    lines += [f"  {r['subject']}: {r['verdict']}" for r in summary["reports"]]
    lines += [f"  equivalence {e['member']}: {e['status']}" for e in summary["equivalence"]]
    _emit(args, summary, "\n".join(lines))
    return EXIT[summary["verdict"]]


def cmd_representations(args) -> int:
    m, l = _load_matroid(args.source)
    if args.l:
        l = frozenset(x.strip() for x in args.l.split(",") if x.strip())
    v = _solver(args).enumerate_l_biased(m, l)
    payload = {
        "matroid": args.source,
        "l": sorted(l),
        "status": v.status,
        "count": len(v.witnesses),
        "witnesses": [io.biased_to_dict(w) for w in v.witnesses],
        "stats": {k: val for k, val in v.stats.items() if args.timings or k != "elapsed"},
    }
    text = f"{args.source}: {len(v.witnesses)} representation(s) up to isomorphism [{v.status}]"
    _emit(args, payload, text)
    return 3 if v.status == INCONCLUSIVE else 0


def cmd_check_frame(args) -> int:
    m, l = _load_matroid(args.file)
    solver = _solver(args)
    v = solver.is_frame_matroidal(m, l) if l else solver.is_frame(m)
    payload = {"file": args.file, "l": sorted(l), "status": v.status, "route": v.route}
    if v.witness is not None:
        payload["witness"] = io.biased_to_dict(v.witness)
    _emit(args, payload, f"{args.file}: {v.status} (via {v.route})")
    return 3 if v.status == INCONCLUSIVE else 0


def cmd_enumerate(args) -> int:
    solver = _solver(args)
    classes, status = enumerate_excluded_matroidals(args.rank, args.max_elements, solver,
                                                   graphic_only=args.graphic)
    key = (args.rank, args.graphic or args.rank == 4)
    expected = EXPECTED_CLASSES.get(key) if args.max_elements == 8 or args.rank == 2 else None
    verdict = status
    flag = None
    if expected is not None and status == CONFIRMED and len(classes) != expected:
        verdict = REFUTED
        flag = (f"found {len(classes)} classes, expected {expected}; the search was exhaustive "
                f"within the element bound, so the bound is the first suspect")
    payload = {
        "rank": args.rank,
        "max_elements": args.max_elements,
        "graphic_only": args.graphic,
        "classes": [c.to_dict() for c in classes],
        "count": len(classes),
        "expected": expected,
        "status": status,
        "verdict": verdict,
        "flag": flag,
    }
    lines = [f"rank {args.rank}, at most {args.max_elements} elements: {len(classes)} class(es) [{status}]"]
    for c in classes:
        lines.append(f"  {c.matroid.n} elements, L = {sorted(c.l)}")
    if flag:
        lines.append(f"  note: {flag}")
    _emit(args, payload, "\n".join(lines))
    return EXIT[verdict]


def cmd_rooted(args) -> int:
    data = io.read_json(args.graphfile)
    g = io.graph_from_dict(data)
    try:
        w = rooted_k4_w4_minor(g, args.e1, args.e2)
    except InvalidInput as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 2
    except NoWitness as exc:
        _emit(args, {"status": REFUTED, "error": str(exc)}, f"ALARM: {exc}")
        return 2
    payload = {"status": CONFIRMED, "witness": w.to_dict()}
    text = f"{w.terminal} minor on {w.e1}, {w.e2} after {len(w.steps)} step(s)"
    _emit(args, payload, text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="framekit", description=__doc__.splitlines()[0])
    p.add_argument("--node-budget", type=int, default=10**8)
    p.add_argument("--time-budget", type=float, default=600.0, help="seconds per leaf search")
    p.add_argument("--cache-dir", default=_default_cache(), help='"none" disables the disk cache')
    p.add_argument("--report", choices=("json", "text"), default="text")
    p.add_argument("--timings", action="store_true", help="include wall-clock times in reports")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification campaign")
    v.add_argument("target", choices=("e0", "n9", "e-family"))
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("representations", help="all L-biased graphs representing a matroid")
    r.add_argument("source", help=f"a named matroid ({', '.join(NAMED)}) or a JSON file")
    r.add_argument("--l", default="", help="comma separated elements to place as unbalanced loops")
    r.set_defaults(func=cmd_representations)

    c = sub.add_parser("check-frame", help="decide whether a matroid or matroidal is frame")
    c.add_argument("file")
    c.set_defaults(func=cmd_check_frame)

    e = sub.add_parser("enumerate-matroidals", help="excluded matroidals with |L| = 2")
    e.add_argument("--rank", type=int, required=True)
    e.add_argument("--max-elements", type=int, required=True)
    e.add_argument("--graphic", action="store_true", help="restrict to graphic matroids")
    e.set_defaults(func=cmd_enumerate)

    k = sub.add_parser("rooted-minor", help="rooted K4 or W4 minor on two disjoint edges")
    k.add_argument("graphfile")
    k.add_argument("--e1", required=True)
    k.add_argument("--e2", required=True)
    k.set_defaults(func=cmd_rooted)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "enumerate-matroidals" and args.rank == 4:
        args.graphic = True
    try:
        return args.func(args)
    except (MatroidError, ValueError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
