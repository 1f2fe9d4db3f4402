"""Content-addressed store of search verdicts.

Entries are keyed by the sha256 of an isomorphism-invariant profile of
(M, L, mode).  A hit is only used after an explicit isomorphism has been
found, and cached witnesses are relabelled through it.  Files are JSON lines,
appended to, never rewritten.
"""

from __future__ import annotations

import hashlib
import json
import os
from collections import Counter
from pathlib import Path

from .biased import BiasedGraph
from .io import biased_from_dict, biased_to_dict, matroid_from_dict, matroid_to_dict
from .matroid import Matroid, _element_profiles, is_isomorphic, popcount

FORMAT_VERSION = 1


def profile(m: Matroid, l=(), mode: str = "frame") -> str:
    colour = m.mask(l)
    body = {
        "v": FORMAT_VERSION,
        "mode": mode,
        "n": m.n,
        "r": m.r,
        "l": popcount(colour),
        "sizes": sorted(Counter(popcount(c) for c in m.circuits).items()),
        "elements": sorted(json.dumps(p) for p in _element_profiles(m, colour)),
    }
    return hashlib.sha256(json.dumps(body, sort_keys=True).encode()).hexdigest()


def relabel_witness(w: BiasedGraph, mapping: dict) -> BiasedGraph:
    return w.relabel_edges(mapping)


class MemoryStore:
    """In-process store with the same lookup semantics as the disk cache."""

    def __init__(self):
        self._items: dict[str, list[tuple[Matroid, frozenset, dict]]] = {}
        self.hits = 0

    def get(self, m: Matroid, l, mode: str):
        key = profile(m, l, mode)
        for cm, cl, payload in self._items.get(key, ()):
            mp = is_isomorphic(cm, m, cl, l)
            if mp is not None:
                self.hits += 1
                return payload, mp
        return None

    def put(self, m: Matroid, l, mode: str, payload: dict) -> None:
        self._items.setdefault(profile(m, l, mode), []).append((m, frozenset(l), payload))


class DiskCache:
    def __init__(self, root):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self.hits = 0

    def _path(self, key: str) -> Path:
        return self.root / f"{key}.jsonl"

    def get(self, m: Matroid, l, mode: str):
        path = self._path(profile(m, l, mode))
        if not path.exists():
            return None
        for line in path.read_text().splitlines():
            if not line.strip():
                continue
            rec = json.loads(line)
            if rec.get("version") != FORMAT_VERSION or rec.get("mode") != mode:
                continue
            cm, cl = matroid_from_dict(rec["matroid"], check=False)
            mp = is_isomorphic(cm, m, cl, l)
            if mp is None:
                continue
            self.hits += 1
            payload = {
                "status": rec["status"],
                "witnesses": [biased_from_dict(w, check=False) for w in rec["witnesses"]],
                "stats": rec.get("stats", {}),
            }
            return payload, mp
        return None

    def put(self, m: Matroid, l, mode: str, payload: dict) -> None:
        rec = {
            "version": FORMAT_VERSION,
            "mode": mode,
            "matroid": matroid_to_dict(m, l),
            "status": payload["status"],
            "witnesses": [biased_to_dict(w) for w in payload["witnesses"]],
            "stats": payload.get("stats", {}),
        }
        line = json.dumps(rec, sort_keys=True) + "\n"
        path = self._path(profile(m, l, mode))
        existing = path.read_text() if path.exists() else ""
        if line in existing.splitlines(keepends=True):
            return
        with open(path, "a") as fh:
            fh.write(line)
            fh.flush()
            os.fsync(fh.fileno())
