"""Finite matroids stored by their circuits.

Subsets of the ground set are int bitmasks indexed by position in
``Matroid.ground``.  Public functions accept either masks or iterables of
element labels.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator

from .graph import Multigraph, cycles

MAX_GROUND = 64
MEMO_LIMIT = 18
BINARY_LIMIT = 14


class MatroidError(ValueError):
    pass


class CircuitAxiomViolation(MatroidError):
    def __init__(self, axiom: str, witnesses):
        self.axiom = axiom
        self.witnesses = witnesses
        super().__init__(f"{axiom} violated by {witnesses}")


class OverlappingSets(MatroidError):
    pass


class BasepointMissing(MatroidError):
    pass


class GroundOverlap(MatroidError):
    pass


class NotA2Separation(MatroidError):
    pass


class NotConnected(MatroidError):
    pass


class SizeLimitExceeded(MatroidError):
    pass


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def _minimal(masks: Iterable[int]) -> set[int]:
    """Inclusion-minimal nonempty members."""
    out: list[int] = []
    for m in sorted(set(masks), key=popcount):
        if m and not any(c & ~m == 0 for c in out):
            out.append(m)
    return set(out)


class Matroid:
    """A matroid on an ordered ground set, given by its circuits (as masks).

    The constructor trusts its input; use :func:`from_circuits` to validate.
    """

    __slots__ = ("ground", "circuits", "_index", "_by_elem", "_memo", "_full_rank")

    def __init__(self, ground: Iterable[str], circuits: Iterable[int]):
        self.ground = tuple(ground)
        if len(self.ground) > MAX_GROUND:
            raise SizeLimitExceeded(f"ground set capped at {MAX_GROUND} elements")
        self.circuits = frozenset(circuits)
        self._index = {x: i for i, x in enumerate(self.ground)}
        if len(self._index) != len(self.ground):
            raise MatroidError("duplicate ground elements")
        by: list[list[int]] = [[] for _ in self.ground]
        for c in sorted(self.circuits, key=popcount):
            for i in bits(c):
                by[i].append(c)
        self._by_elem = by
        self._memo = {} if len(self.ground) <= MEMO_LIMIT else None
        self._full_rank = None

    # -- subsets ---------------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.ground)

    @property
    def full(self) -> int:
        return (1 << len(self.ground)) - 1

    def index(self, x: str) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise MatroidError(f"{x!r} is not in the ground set") from None

    def mask(self, xs) -> int:
        if isinstance(xs, int):
            return xs
        if isinstance(xs, str):
            xs = [xs]
        m = 0
        for x in xs:
            m |= 1 << self.index(x)
        return m

    def labels(self, mask: int) -> frozenset[str]:
        return frozenset(self.ground[i] for i in bits(mask))

    def circuit_sets(self) -> list[frozenset[str]]:
        return sorted((self.labels(c) for c in self.circuits), key=lambda s: (len(s), sorted(s)))

    # -- rank ------------------------------------------------------------
    def rank(self, xs=None) -> int:
        return self._rank(self.full if xs is None else self.mask(xs))

    def _rank(self, x: int) -> int:
        memo = self._memo
        if memo is not None:
            r = memo.get(x)
            if r is not None:
                return r
        indep = 0
        r = 0
        by = self._by_elem
        m = x
        while m:
            low = m & -m
            m ^= low
            cand = indep | low
            for c in by[low.bit_length() - 1]:
                if c & ~cand == 0:
                    break
            else:
                indep = cand
                r += 1
        if memo is not None:
            memo[x] = r
        return r

    @property
    def r(self) -> int:
        if self._full_rank is None:
            self._full_rank = self._rank(self.full)
        return self._full_rank

    def is_independent(self, xs) -> bool:
        x = self.mask(xs)
        return not any(c & ~x == 0 for c in self.circuits)

    def closure(self, xs) -> int:
        x = self.mask(xs)
        rx = self._rank(x)
        out = x
        for i in range(self.n):
            b = 1 << i
            if not x & b and self._rank(x | b) == rx:
                out |= b
        return out

    def coclosure(self, xs) -> int:
        x = self.mask(xs)
        rest = self.full & ~x
        rr = self._rank(rest)
        out = x
        for i in bits(rest):
            if self._rank(rest & ~(1 << i)) < rr:
                out |= 1 << i
        return out

    def loops(self) -> int:
        return sum(c for c in self.circuits if popcount(c) == 1)

    def coloops(self) -> int:
        covered = 0
        for c in self.circuits:
            covered |= c
        return self.full & ~covered

    # -- misc ------------------------------------------------------------
    def relabel(self, mapping: dict) -> "Matroid":
        return Matroid((mapping.get(x, x) for x in self.ground), self.circuits)

    def restrict_order(self, order: Iterable[str]) -> "Matroid":
        """Same matroid with the ground reordered."""
        order = tuple(order)
        if sorted(order) != sorted(self.ground):
            raise MatroidError("reorder must be a permutation of the ground set")
        pos = [self.index(x) for x in order]
        circ = []
        for c in self.circuits:
            m = 0
            for j, i in enumerate(pos):
                if c >> i & 1:
                    m |= 1 << j
            circ.append(m)
        return Matroid(order, circ)

    def key(self) -> tuple:
        return (frozenset(self.ground), frozenset(self.circuit_sets()))

    def __eq__(self, other) -> bool:
        return isinstance(other, Matroid) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"Matroid(n={self.n}, rank={self.r}, circuits={len(self.circuits)})"


@dataclass(frozen=True)
class Matroidal:
    matroid: Matroid
    l_set: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, "l_set", frozenset(self.l_set))
        extra = self.l_set - set(self.matroid.ground)
        if extra:
            raise MatroidError(f"L not inside the ground set: {sorted(extra)}")


@dataclass(frozen=True)
class Separation:
    side_a: frozenset[str]
    side_b: frozenset[str]
    order: int


# -- construction --------------------------------------------------------

def from_circuits(ground: Iterable[str], circuits: Iterable[Iterable[str]], check: bool = True) -> Matroid:
    ground = tuple(str(x) for x in ground)
    idx = {x: i for i, x in enumerate(ground)}
    if len(idx) != len(ground):
        raise CircuitAxiomViolation("distinct ground elements", [x for x, c in Counter(ground).items() if c > 1])
    masks = []
    for c in circuits:
        c = list(c)
        bad = [x for x in c if x not in idx]
        if bad:
            raise CircuitAxiomViolation("circuits drawn from ground", bad)
        m = 0
        for x in c:
            m |= 1 << idx[x]
        masks.append(m)
    m = Matroid(ground, masks)
    if check:
        validate(m)
    return m


def validate(m: Matroid) -> None:
    cs = sorted(m.circuits)
    if 0 in m.circuits:
        raise CircuitAxiomViolation("nonempty circuits", [set()])
    for a, b in itertools.permutations(cs, 2):
        if a & ~b == 0:
            raise CircuitAxiomViolation("minimality", [set(m.labels(a)), set(m.labels(b))])
    for a, b in itertools.combinations(cs, 2):
        common = a & b
        if not common:
            continue
        u = a | b
        for i in bits(common):
            rest = u & ~(1 << i)
            if not any(c & ~rest == 0 for c in cs):
                raise CircuitAxiomViolation(
                    "circuit elimination", [set(m.labels(a)), set(m.labels(b)), m.ground[i]]
                )


def uniform(r: int, n: int, labels: Iterable[str] | None = None) -> Matroid:
    ground = tuple(labels) if labels is not None else tuple(f"e{i}" for i in range(n))
    if len(ground) != n:
        raise MatroidError("label count differs from n")
    circ = [sum(1 << i for i in c) for c in itertools.combinations(range(n), r + 1)] if r < n else []
    return Matroid(ground, circ)


def cycle_matroid(g: Multigraph) -> Matroid:
    ground = g.edge_ids
    idx = {x: i for i, x in enumerate(ground)}
    return Matroid(ground, [sum(1 << idx[e] for e in c) for c in cycles(g, limit=MAX_GROUND)])


def direct_sum(m1: Matroid, m2: Matroid) -> Matroid:
    if set(m1.ground) & set(m2.ground):
        raise GroundOverlap(sorted(set(m1.ground) & set(m2.ground)))
    k = m1.n
    return Matroid(m1.ground + m2.ground, list(m1.circuits) + [c << k for c in m2.circuits])


# -- duality and minors --------------------------------------------------

def hyperplanes(m: Matroid) -> set[int]:
    r = m.r
    if r == 0:
        return set()
    found: set[int] = set()
    target = r - 1
    n = m.n

    # independent (r-1)-sets, skipping any whose partial closure is already a found flat
    def grow(indep: int, size: int, start: int):
        if size == target:
            found.add(m.closure(indep))
            return
        for i in range(start, n):
            b = 1 << i
            nxt = indep | b
            if m._rank(nxt) == size + 1:
                if n - i < target - size:
                    return
                grow(nxt, size + 1, i + 1)

    grow(0, 0, 0)
    return found


def dual(m: Matroid) -> Matroid:
    full = m.full
    if m.r == 0:
        return Matroid(m.ground, [])
    return Matroid(m.ground, [full & ~h for h in hyperplanes(m)])


def cocircuits(m: Matroid) -> frozenset[int]:
    return dual(m).circuits


def minor(m: Matroid, delete=(), contract=()) -> Matroid:
    d = m.mask(delete)
    c = m.mask(contract)
    if d & c:
        raise OverlappingSets(sorted(m.labels(d & c)))
    keep = [i for i in range(m.n) if not (d | c) >> i & 1]
    pos = {i: j for j, i in enumerate(keep)}
    new = _minimal(x & ~c for x in m.circuits if not x & d)
    out = []
    for x in new:
        y = 0
        for i in bits(x):
            y |= 1 << pos[i]
        out.append(y)
    return Matroid([m.ground[i] for i in keep], out)


def delete(m: Matroid, xs) -> Matroid:
    return minor(m, delete=xs)


def contract(m: Matroid, xs) -> Matroid:
    return minor(m, contract=xs)


def restriction(m: Matroid, xs) -> Matroid:
    return minor(m, delete=m.full & ~m.mask(xs))


# -- 2-sums --------------------------------------------------------------

def two_sum(m1: Matroid, e1: str, m2: Matroid, e2: str) -> Matroid:
    if e1 not in m1._index:
        raise BasepointMissing(f"{e1!r} not in first matroid")
    if e2 not in m2._index:
        raise BasepointMissing(f"{e2!r} not in second matroid")
    rest1 = [x for x in m1.ground if x != e1]
    rest2 = [x for x in m2.ground if x != e2]
    clash = set(rest1) & set(rest2)
    if clash:
        raise GroundOverlap(sorted(clash))
    ground = rest1 + rest2
    idx = {x: i for i, x in enumerate(ground)}

    def lift(m: Matroid, c: int) -> int:
        return sum(1 << idx[m.ground[i]] for i in bits(c) if m.ground[i] in idx)

    b1 = 1 << m1.index(e1)
    b2 = 1 << m2.index(e2)
    circ = [lift(m1, c) for c in m1.circuits if not c & b1]
    circ += [lift(m2, c) for c in m2.circuits if not c & b2]
    cross2 = [lift(m2, c) for c in m2.circuits if c & b2]
    for c1 in m1.circuits:
        if c1 & b1:
            a = lift(m1, c1)
            circ.extend(a | b for b in cross2)
    return Matroid(ground, circ)


def fresh_label(*grounds: Iterable[str], prefix: str = "p#") -> str:
    used = set()
    for g in grounds:
        used.update(g)
    k = 0
    while f"{prefix}{k}" in used:
        k += 1
    return f"{prefix}{k}"


def decompose_two_sum(m: Matroid, sep: Separation | Iterable[str]) -> tuple[Matroid, str, Matroid, str]:
    """Split ``m`` along a 2-separation into summands sharing a fresh basepoint.

    ``sep`` is a :class:`Separation` or just side A.  Both summands use the
    same basepoint label.
    """
    if not is_connected(m):
        raise NotConnected("decomposition needs a connected matroid")
    side = sep.side_a if isinstance(sep, Separation) else sep
    a = m.mask(side)
    b = m.full & ~a
    if popcount(a) < 2 or popcount(b) < 2 or connectivity_lambda(m, a) != 2:
        raise NotA2Separation(f"{sorted(m.labels(a))} is not a side of a 2-separation")
    p = fresh_label(m.ground)

    def summand(side_mask: int) -> Matroid:
        keep = [i for i in range(m.n) if side_mask >> i & 1]
        pos = {i: j for j, i in enumerate(keep)}
        pb = 1 << len(keep)

        def sub(c):
            return sum(1 << pos[i] for i in bits(c & side_mask))

        inside = [sub(c) for c in m.circuits if c & ~side_mask == 0]
        crossing = _minimal(sub(c) | pb for c in m.circuits if c & side_mask and c & ~side_mask)
        return Matroid([m.ground[i] for i in keep] + [p], _minimal(inside + list(crossing)))

    return summand(a), p, summand(b), p


# -- connectivity --------------------------------------------------------

def connectivity_lambda(m: Matroid, xs) -> int:
    x = m.mask(xs)
    return m._rank(x) + m._rank(m.full & ~x) - m.r + 1


def components(m: Matroid) -> list[frozenset[str]]:
    parent = list(range(m.n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for c in m.circuits:
        idxs = list(bits(c))
        for j in idxs[1:]:
            ra, rb = find(idxs[0]), find(j)
            if ra != rb:
                parent[ra] = rb
    groups: dict[int, list[str]] = {}
    for i in range(m.n):
        groups.setdefault(find(i), []).append(m.ground[i])
    return [frozenset(g) for g in groups.values()]


def is_connected(m: Matroid) -> bool:
    return len(components(m)) <= 1


def _sides(n: int, size: int) -> Iterator[int]:
    for combo in itertools.combinations(range(n), size):
        yield sum(1 << i for i in combo)


def find_separation(m: Matroid, k: int) -> Separation | None:
    """An exact k-separation (lambda = k, both sides >= k), or None."""
    if k == 1:
        comps = components(m)
        if len(comps) > 1:
            a = comps[0]
            return Separation(a, frozenset(m.ground) - a, connectivity_lambda(m, a))
        return None
    if k == 2 and is_connected(m):
        return find_2_separation(m)
    n = m.n
    for size in range(k, n // 2 + 1):
        for a in _sides(n, size):
            if connectivity_lambda(m, a) <= k:
                lam = connectivity_lambda(m, a)
                return Separation(m.labels(a), m.labels(m.full & ~a), lam)
    return None


def find_2_separation(m: Matroid) -> Separation | None:
    """A 2-separation of a connected matroid, or None if it is 3-connected.

    Series and parallel pairs are tried first, then fully closed hulls of
    circuits, then an exhaustive scan by side size.
    """
    n = m.n
    if n < 4:
        return None
    full = m.full

    def found(a: int) -> Separation:
        return Separation(m.labels(a), m.labels(full & ~a), connectivity_lambda(m, a))

    for i, j in itertools.combinations(range(n), 2):
        a = (1 << i) | (1 << j)
        if connectivity_lambda(m, a) <= 2:
            return found(a)
    seen: set[int] = set()
    for c in sorted(m.circuits, key=popcount):
        x = c
        while True:
            y = m.coclosure(m.closure(x))
            if y == x:
                break
            x = y
        if x in seen:
            continue
        seen.add(x)
        if popcount(full & ~x) >= 2 and popcount(x) >= 2 and connectivity_lambda(m, x) <= 2:
            return found(x)
    for size in range(3, n // 2 + 1):
        for a in _sides(n, size):
            if connectivity_lambda(m, a) <= 2:
                return found(a)
    return None


def is_k_connected(m: Matroid, k: int) -> bool:
    return all(find_separation(m, j) is None for j in range(1, k))


def connectivity(m: Matroid) -> float:
    """Least k with a k-separation; ``math.inf`` if there is none."""
    for k in range(1, m.n // 2 + 1):
        if find_separation(m, k) is not None:
            return k
    return float("inf")


# -- simple / cosimple ---------------------------------------------------

def _classes(m: Matroid, pairs: Iterable[tuple[int, int]], members: int) -> list[frozenset[str]]:
    parent = {i: i for i in bits(members)}

    def find(i):
        while parent[i] != i:
            i = parent[i]
        return i

    for i, j in pairs:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
    groups: dict[int, list[str]] = {}
    for i in bits(members):
        groups.setdefault(find(i), []).append(m.ground[i])
    return sorted((frozenset(g) for g in groups.values()), key=lambda s: sorted(s))


def parallel_classes(m: Matroid) -> list[frozenset[str]]:
    pairs = [tuple(bits(c)) for c in m.circuits if popcount(c) == 2]
    return _classes(m, pairs, m.full & ~m.loops())


def series_pairs(m: Matroid) -> list[tuple[int, int]]:
    full, r = m.full, m.r
    live = full & ~m.coloops()
    out = []
    for i, j in itertools.combinations(list(bits(live)), 2):
        rest = full & ~((1 << i) | (1 << j))
        if m._rank(rest) < r and m._rank(rest | 1 << i) == r and m._rank(rest | 1 << j) == r:
            out.append((i, j))
    return out


def series_classes(m: Matroid) -> list[frozenset[str]]:
    return _classes(m, series_pairs(m), m.full & ~m.coloops())


def is_simple(m: Matroid) -> bool:
    return not any(popcount(c) <= 2 for c in m.circuits)


def is_cosimple(m: Matroid) -> bool:
    return not m.coloops() and not series_pairs(m)


# -- binary --------------------------------------------------------------

def u24_minor(m: Matroid, limit: int = BINARY_LIMIT) -> tuple[frozenset[str], frozenset[str]] | None:
    """Find (I, T) with M/I restricted to T isomorphic to U_{2,4}, or None.

    Any minor is M/I\\D with I independent, so I may be taken of size r-2;
    only cl(I) matters, so each flat of rank r-2 is tried once.
    """
    if m.n > limit:
        raise SizeLimitExceeded(f"binary test capped at {limit} elements, got {m.n}")
    r = m.r
    if r < 2 or m.n < 4:
        return None
    seen: set[int] = set()
    for combo in itertools.combinations(range(m.n), r - 2):
        i_mask = sum(1 << i for i in combo)
        if m._rank(i_mask) != r - 2:
            continue
        flat = m.closure(i_mask)
        if flat in seen:
            continue
        seen.add(flat)
        points: list[int] = []
        for x in range(m.n):
            if flat >> x & 1:
                continue
            if all(m._rank(i_mask | 1 << x | 1 << p) == r for p in points):
                points.append(x)
                if len(points) == 4:
                    return m.labels(i_mask), m.labels(sum(1 << p for p in points))
    return None


def is_binary(m: Matroid, limit: int = BINARY_LIMIT) -> bool:
    return u24_minor(m, limit) is None


# -- isomorphism ---------------------------------------------------------

def _element_profiles(m: Matroid, colour: int = 0) -> list[tuple]:
    hist = [Counter() for _ in range(m.n)]
    for c in m.circuits:
        s = popcount(c)
        for i in bits(c):
            hist[i][s] += 1
    return [(colour >> i & 1, tuple(sorted(hist[i].items()))) for i in range(m.n)]


def is_isomorphic(m1: Matroid, m2: Matroid, l1=(), l2=()) -> dict[str, str] | None:
    """A bijection of ground sets carrying circuits to circuits (and L1 to L2), or None."""
    if m1.n != m2.n or len(m1.circuits) != len(m2.circuits):
        return None
    if sorted(map(popcount, m1.circuits)) != sorted(map(popcount, m2.circuits)):
        return None
    c1, c2 = m1.mask(l1), m2.mask(l2)
    if popcount(c1) != popcount(c2):
        return None
    p1, p2 = _element_profiles(m1, c1), _element_profiles(m2, c2)
    if sorted(p1) != sorted(p2):
        return None
    n = m1.n
    if n == 0:
        return {}
    cand = {i: [j for j in range(n) if p2[j] == p1[i]] for i in range(n)}
    # order: fewest candidates first, then whatever closes most circuits
    order: list[int] = []
    placed = 0
    remaining = set(range(n))
    while remaining:
        def score(i):
            b = placed | 1 << i
            closes = sum(1 for c in m1._by_elem[i] if c & ~b == 0)
            touches = sum(1 for c in m1._by_elem[i] if c & placed)
            return (-closes, -touches, len(cand[i]), i)
        nxt = min(remaining, key=score)
        order.append(nxt)
        placed |= 1 << nxt
        remaining.discard(nxt)
    circ2 = m2.circuits
    prefix_counts1 = []
    pm = 0
    for i in order:
        pm |= 1 << i
        prefix_counts1.append(sum(1 for c in m1.circuits if c & ~pm == 0))
    img = [0] * n
    used = [False] * n

    def ok(depth: int, i: int, img_mask: int) -> bool:
        dom = 0
        for k in range(depth + 1):
            dom |= 1 << order[k]
        for c in m1._by_elem[i]:
            if c & ~dom == 0:
                t = 0
                for x in bits(c):
                    t |= 1 << img[x]
                if t not in circ2:
                    return False
        cnt = sum(1 for c in circ2 if c & ~img_mask == 0)
        return cnt == prefix_counts1[depth]

    def search(depth: int, img_mask: int) -> bool:
        if depth == n:
            return True
        i = order[depth]
        for j in cand[i]:
            if used[j]:
                continue
            img[i] = j
            used[j] = True
            nm = img_mask | 1 << j
            if ok(depth, i, nm) and search(depth + 1, nm):
                return True
            used[j] = False
        return False

    if search(0, 0):
        return {m1.ground[i]: m2.ground[img[i]] for i in range(n)}
    return None
