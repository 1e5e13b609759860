"""Windowed subgraphs of the k-Farey graphs and their structure.

Edges join vertices at determinant exactly k (exact-k mode) or at
determinant between 1 and k (at-most-k mode).  Windows truncate by level or
by a numerator/denominator cap; an incremental level sweep tracks component
counts as the window grows.
"""

from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .core import (FareyVertex, INFINITY, InvalidInputError, Level,
                   ResourceLimitError, _ext_gcd, canonicalize, circular_key,
                   det_pair, find_seed_neighbor, level, neighbors_exact)
from .projline import ProjLine, phi

EXACT = "exact-k"
AT_MOST = "at-most-k"

LEVEL_CAP = "level-cap"
DENOM_CAP = "denominator-cap"

DEFAULT_VERTEX_LIMIT = 2_000_000

WORKERS_ENV = "KFAREY_WORKERS"


@dataclass(frozen=True)
class WindowSpec:
    """Finite truncation of the vertex set.

    level-cap m keeps vertices with max(|p|, q) <= m; denominator-cap N
    keeps |p| <= N and q <= N.  Infinity is kept when include_infinity is
    set (its level is 1, so any level cap admits it).
    """

    kind: str
    bound: int
    include_infinity: bool = True

    def __post_init__(self):
        if self.kind not in (LEVEL_CAP, DENOM_CAP):
            raise InvalidInputError(f"unknown window kind {self.kind!r}")
        if self.bound < 1:
            raise InvalidInputError("window bound must be >= 1")

    def contains(self, v: FareyVertex) -> bool:
        if v.q == 0:
            return self.include_infinity
        return abs(v.p) <= self.bound and v.q <= self.bound

    def vertices(self) -> list[FareyVertex]:
        out = [INFINITY] if self.include_infinity else []
        b = self.bound
        for q in range(1, b + 1):
            for p in range(-b, b + 1):
                if math.gcd(abs(p), q) == 1:
                    out.append(FareyVertex(p, q))
        out.sort(key=lambda v: v.key)
        return out

    def to_dict(self):
        return {"kind": self.kind, "bound": self.bound,
                "include_infinity": self.include_infinity}


def level_window(bound: int, include_infinity: bool = True) -> WindowSpec:
    return WindowSpec(LEVEL_CAP, bound, include_infinity)


def denom_window(bound: int, include_infinity: bool = True) -> WindowSpec:
    return WindowSpec(DENOM_CAP, bound, include_infinity)


class _UnionFind:
    def __init__(self):
        self.parent: list[int] = []
        self.size: list[int] = []
        self.count = 0

    def add(self) -> int:
        self.parent.append(len(self.parent))
        self.size.append(1)
        self.count += 1
        return len(self.parent) - 1

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:  # path compression
            parent[x], x = root, parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.count -= 1
        return True


@dataclass
class LevelGraph:
    """Immutable-by-convention windowed graph with precomputed components."""

    mode: str
    k: int
    window: WindowSpec
    vertices: tuple[FareyVertex, ...]
    adj: tuple[frozenset[int], ...]
    _index: dict[FareyVertex, int] = field(repr=False)
    _root: tuple[int, ...] = field(repr=False)

    def index_of(self, v: FareyVertex) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise InvalidInputError(f"{v} is outside the window") from None

    def __contains__(self, v: FareyVertex) -> bool:
        return v in self._index

    def neighbors(self, v: FareyVertex) -> list[FareyVertex]:
        return sorted((self.vertices[i] for i in self.adj[self.index_of(v)]),
                      key=lambda u: u.key)

    def degree(self, v: FareyVertex) -> int:
        return len(self.adj[self.index_of(v)])

    def edge_count(self) -> int:
        return sum(len(s) for s in self.adj) // 2

    def component_rep(self, v: FareyVertex) -> FareyVertex:
        """Smallest vertex of v's component; the component's label."""
        return self.vertices[self._root[self.index_of(v)]]

    def components(self) -> dict[FareyVertex, list[FareyVertex]]:
        """Label -> sorted member list, labels in vertex order."""
        groups: dict[int, list[FareyVertex]] = {}
        for i, r in enumerate(self._root):
            groups.setdefault(r, []).append(self.vertices[i])
        return {self.vertices[r]: groups[r] for r in sorted(groups)}


def _dets_for(mode: str, k: int) -> range:
    return range(k, k + 1) if mode == EXACT else range(1, k + 1)


def _seeded_adjacency(vertices, index, mode, k, bound):
    adj = [set() for _ in vertices]
    for i, v in enumerate(vertices):
        for d in _dets_for(mode, k):
            seed = find_seed_neighbor(v, d)
            for u in neighbors_exact(v, seed, d, bound):
                j = index.get(u)
                if j is not None and j != i:
                    adj[i].add(j)
                    adj[j].add(i)
    return adj


def _scan_chunk(args):
    lo, hi, pairs, lo_k, hi_k = args
    out = []
    for i in range(lo, hi):
        p, q = pairs[i]
        for j in range(i + 1, len(pairs)):
            a, b = pairs[j]
            d = abs(p * b - q * a)
            if lo_k <= d <= hi_k:
                out.append((i, j))
    return out


def _pairwise_adjacency(vertices, mode, k, workers):
    pairs = [(v.p, v.q) for v in vertices]
    lo_k = k if mode == EXACT else 1
    n = len(pairs)
    adj = [set() for _ in vertices]
    if workers <= 1 or n < 512:
        hits = _scan_chunk((0, n, pairs, lo_k, k))
    else:
        step = max(64, n // (workers * 8))
        chunks = [(lo, min(lo + step, n), pairs, lo_k, k)
                  for lo in range(0, n, step)]
        hits = []
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_scan_chunk, chunks):
                hits.extend(part)
    for i, j in hits:
        adj[i].add(j)
        adj[j].add(i)
    return adj


def build(mode: str, k: int, window: WindowSpec, *, adjacency: str = "seeded",
          workers: int | None = None,
          vertex_limit: int = DEFAULT_VERTEX_LIMIT) -> LevelGraph:
    """Materialize the windowed graph.

    adjacency "seeded" walks the two arithmetic neighbor families per vertex
    and determinant; "scan" compares all pairs (parallelizable via workers,
    default from the KFAREY_WORKERS environment variable).  Both must agree;
    the scan exists as the cross-check.
    """
    if mode not in (EXACT, AT_MOST):
        raise InvalidInputError(f"unknown mode {mode!r}")
    if k < 1:
        raise InvalidInputError("k must be >= 1")
    if adjacency not in ("seeded", "scan"):
        raise InvalidInputError(f"unknown adjacency method {adjacency!r}")
    vertices = tuple(window.vertices())
    if len(vertices) > vertex_limit:
        raise ResourceLimitError(
            f"window holds {len(vertices)} vertices, above the limit {vertex_limit}")
    index = {v: i for i, v in enumerate(vertices)}
    if workers is None:
        workers = int(os.environ.get(WORKERS_ENV, "1") or "1")
    if adjacency == "seeded":
        adj = _seeded_adjacency(vertices, index, mode, k, window.bound)
    else:
        adj = _pairwise_adjacency(vertices, mode, k, max(1, workers))
    uf = _UnionFind()
    for _ in vertices:
        uf.add()
    for i, nbrs in enumerate(adj):
        for j in nbrs:
            if j > i:
                uf.union(i, j)
    # label every vertex by the smallest index in its component
    smallest: dict[int, int] = {}
    for i in range(len(vertices)):
        r = uf.find(i)
        if r not in smallest:
            smallest[r] = i  # vertices are sorted, first hit is smallest
    root = tuple(smallest[uf.find(i)] for i in range(len(vertices)))
    return LevelGraph(mode, k, window, vertices,
                      tuple(frozenset(s) for s in adj), index, root)


@dataclass(frozen=True)
class ComponentReport:
    """Component census of a windowed graph, JSON-friendly."""

    k: int
    mode: str
    window: WindowSpec
    b0: int
    sizes: tuple[int, ...]
    reps: tuple[FareyVertex, ...]
    lines: tuple[ProjLine, ...] | None
    isolated: tuple[FareyVertex, ...]

    def to_dict(self):
        return {
            "k": self.k,
            "mode": self.mode,
            "window": self.window.to_dict(),
            "b0": self.b0,
            "sizes": list(self.sizes),
            "reps": [str(v) for v in self.reps],
            "lines": None if self.lines is None else [str(ln) for ln in self.lines],
            "isolated": [str(v) for v in self.isolated],
        }


def count_components(g: LevelGraph) -> ComponentReport:
    """Census the components; in exact-k mode label each by its line mod k."""
    comps = g.components()
    reps = tuple(comps.keys())
    sizes = tuple(len(comps[r]) for r in reps)
    lines = None
    if g.mode == EXACT and g.k >= 2:
        lines = tuple(phi(g.k, r) for r in reps)
    isolated = tuple(v for v, members in zip(reps, (comps[r] for r in reps))
                     if len(members) == 1 and not g.adj[g.index_of(v)])
    return ComponentReport(g.k, g.mode, g.window, len(reps), sizes, reps,
                           lines, isolated)


def _level_slice(m: int) -> list[FareyVertex]:
    """Canonical vertices at level exactly m, sorted."""
    if m == 1:
        return [INFINITY, FareyVertex(0, 1), FareyVertex(1, 1), FareyVertex(-1, 1)]
    out = []
    for p in range(-(m - 1), m):
        if math.gcd(abs(p), m) == 1:
            out.append(FareyVertex(p, m))
    for q in range(1, m):
        if math.gcd(m, q) == 1:
            out.append(FareyVertex(m, q))
            out.append(FareyVertex(-m, q))
    out.sort(key=lambda v: v.key)
    return out


@dataclass
class SweepResult:
    """Level-by-level component counts of the exact-k graph."""

    k: int
    levels: list[int]
    b0: list[int]
    merges: list[tuple[int, FareyVertex, FareyVertex]]
    plateau_value: int | None
    plateau_start: int | None
    stabilized: bool

    def merges_above(self, m_lo: int):
        return [m for m in self.merges if m[0] > m_lo]


def component_sweep(k: int, m_max: int, *, stop_b0: int | None = None,
                    plateau_run: int | None = None,
                    target_plateau: int | None = None) -> SweepResult:
    """Grow the exact-k graph one level at a time, tracking b0.

    Records every merge of two components that both predate the current
    level (the monotonicity violations when they occur above level k).
    Stops early once b0 exceeds stop_b0, or once b0 has been constant for
    plateau_run consecutive levels (and equals target_plateau, if given).
    """
    if k < 1:
        raise InvalidInputError("k must be >= 1")
    if m_max < 1:
        raise InvalidInputError("m_max must be >= 1")
    run_needed = plateau_run if plateau_run is not None else max(k, 10)
    uf = _UnionFind()
    index: dict[FareyVertex, int] = {}
    verts: list[FareyVertex] = []
    old_witness: dict[int, FareyVertex] = {}
    merges: list[tuple[int, FareyVertex, FareyVertex]] = []
    levels: list[int] = []
    curve: list[int] = []
    last_change_level = 0
    prev_b0 = None
    for m in range(1, m_max + 1):
        fresh = _level_slice(m)
        for v in fresh:
            i = uf.add()
            index[v] = i
            verts.append(v)
        for v in fresh:
            i = index[v]
            seed = find_seed_neighbor(v, k)
            for u in neighbors_exact(v, seed, k, m):
                j = index.get(u)
                if j is None or j == i:
                    continue
                ri, rj = uf.find(i), uf.find(j)
                if ri == rj:
                    continue
                wi, wj = old_witness.get(ri), old_witness.get(rj)
                uf.union(ri, rj)
                r = uf.find(ri)
                if wi is not None and wj is not None:
                    merges.append((m, wi, wj))
                keep = wi if wi is not None else wj
                old_witness.pop(ri, None)
                old_witness.pop(rj, None)
                if keep is not None:
                    old_witness[r] = keep
        # every component now existing counts as old for the next level
        seen_roots = set()
        for v in fresh:
            r = uf.find(index[v])
            if r not in seen_roots:
                seen_roots.add(r)
                if r not in old_witness:
                    old_witness[r] = v
        levels.append(m)
        curve.append(uf.count)
        if prev_b0 is None or uf.count != prev_b0:
            last_change_level = m
            prev_b0 = uf.count
        if stop_b0 is not None and uf.count > stop_b0:
            break
        run = m - last_change_level + 1
        if run >= run_needed and (target_plateau is None or prev_b0 == target_plateau):
            break
    run = levels[-1] - last_change_level + 1
    stabilized = run >= run_needed and (target_plateau is None
                                        or curve[-1] == target_plateau)
    return SweepResult(k, levels, curve, merges,
                       curve[-1] if stabilized else None,
                       last_change_level if stabilized else None,
                       stabilized)


@dataclass(frozen=True)
class MonotoneReport:
    k: int
    m_lo: int
    m_hi: int
    passed: bool
    counterexample: tuple[int, FareyVertex, FareyVertex] | None


def verify_monotone(k: int, m_lo: int, m_hi: int) -> MonotoneReport:
    """Check that separation persists: no two components that both exist at
    some level m in (m_lo, m_hi] merge at m+1.  Needs k <= m_lo < m_hi."""
    if not k <= m_lo < m_hi:
        raise InvalidInputError("need k <= m_lo < m_hi")
    sweep = component_sweep(k, m_hi, plateau_run=m_hi + 1)  # never stop early
    bad = [t for t in sweep.merges if t[0] > m_lo]
    return MonotoneReport(k, m_lo, m_hi, not bad, bad[0] if bad else None)


def _prime_power(k: int) -> tuple[int, int] | None:
    """(p, l) if k == p**l for a prime p, else None."""
    if k < 2:
        return None
    for p in range(2, k + 1):
        if p * p > k:
            return (k, 1)
        if k % p == 0:
            l, rest = 0, k
            while rest % p == 0:
                rest //= p
                l += 1
            return (p, l) if rest == 1 else None
    return None


def prime_power_component_count(k: int) -> int | None:
    """p**(l-1) * (p+1) when k is a prime power p**l; None otherwise."""
    pp = _prime_power(k)
    if pp is None:
        return None
    p, l = pp
    return p ** (l - 1) * (p + 1)


def find_isolated_witnesses(k: int, count: int) -> list[tuple[FareyVertex, Level]]:
    """Vertices isolated in the exact-k graph at their own level.

    Only exists for k with at least two prime factors: write k = p**l * c
    with p the smallest prime factor and gcd(c, p) = 1; then (q + p**l * n) /
    p**l is isolated whenever q = c mod p, 0 < q < p**l, and the numerator
    exceeds k.  Each returned vertex is re-verified by a brute-force scan
    over every vertex up to its level.
    """
    if count < 1:
        raise InvalidInputError("count must be >= 1")
    if _prime_power(k) is not None or k < 2:
        raise InvalidInputError("k must have at least two distinct prime factors")
    p = next(d for d in range(2, k + 1) if k % d == 0)
    l, c = 0, k
    while c % p == 0:
        c //= p
        l += 1
    pl = p ** l
    residues = {q % pl for q in range(1, pl) if q % p == c % p}
    out: list[tuple[FareyVertex, Level]] = []
    a = k + 1
    while len(out) < count:
        if a % pl in residues:
            v = canonicalize(a, pl)
            lv = level(v)
            for u in _all_vertices_through(lv):
                if u != v and det_pair(u, v) == k:  # pragma: no cover
                    raise RuntimeError(f"witness {v} has neighbor {u} at level {lv}")
            out.append((v, lv))
        a += 1
    return out


def _all_vertices_through(m: int):
    for mm in range(1, m + 1):
        yield from _level_slice(mm)


def is_forest(g: LevelGraph, component: FareyVertex) -> bool:
    """True when the component of the given vertex contains no cycle."""
    rep = g.component_rep(component)
    members = [i for i, v in enumerate(g.vertices)
               if g.component_rep(v) == rep]
    member_set = set(members)
    edges = sum(len(g.adj[i] & member_set) for i in members) // 2
    return edges == len(members) - 1


def _side_interval(v: FareyVertex, u: FareyVertex) -> int:
    """Unit interval of the normalized coordinate of a neighbor u of v.

    Sending v to 0/1 by a unimodular map puts each neighbor at +-k/y; u
    lands on the positive or negative side according to the sign of y.
    Changing the map slides every y/(+-k) by one common integer, so two
    neighbors are separable by some choice of sides exactly when these
    ratios have different floors.
    """
    _, gamma, delta = _ext_gcd(v.p, v.q)
    n = u.p * v.q - u.q * v.p
    d = gamma * u.p + delta * u.q
    return math.floor(Fraction(d, n))


def cut_vertex_check(g: LevelGraph, v: FareyVertex, margin: Level) -> bool | None:
    """Does removing v separate two of its neighbors?

    Only neighbors on opposite sides of v are guaranteed to land in
    different components, so the check is conclusive when v has two
    neighbors in distinct side intervals at least margin levels inside the
    window (the margin absorbs truncation artifacts).  Reachability runs
    over the full window minus v.  Returns None when inconclusive.
    """
    if g.mode != EXACT or g.k < 2:
        raise InvalidInputError("cut vertex check needs exact-k mode with k >= 2")
    if margin < 0 or margin >= g.window.bound:
        raise InvalidInputError("margin must be in [0, bound)")
    inner = g.window.bound - margin
    vi = g.index_of(v)
    inner_nbrs = [j for j in g.adj[vi] if level(g.vertices[j]) <= inner]
    intervals = {_side_interval(v, g.vertices[j]) for j in inner_nbrs}
    if len(intervals) < 2:
        return None
    # component of v inside the shrunk window
    seen = {vi}
    frontier = [vi]
    while frontier:
        i = frontier.pop()
        for j in g.adj[i]:
            if j not in seen and level(g.vertices[j]) <= inner:
                seen.add(j)
                frontier.append(j)
    if len(seen) < 3:
        return None
    # component labels in the full window with v deleted
    comp: dict[int, int] = {}
    for s in inner_nbrs:
        if s in comp:
            continue
        label = s
        comp[s] = label
        frontier = [s]
        while frontier:
            i = frontier.pop()
            for j in g.adj[i]:
                if j != vi and j not in comp:
                    comp[j] = label
                    frontier.append(j)
    return len({comp[s] for s in inner_nbrs}) >= 2


def planarity_linking_check(g: LevelGraph, line_label: ProjLine | None = None) -> bool:
    """No two edges link in the boundary circular order.

    With a line label (exact-k mode, k >= 2) only that line's preimage is
    examined; with None the whole windowed graph is.  Vertices are placed on
    a circle by rational value with 1/0 last; edges link when their chords
    cross properly.
    """
    if line_label is not None:
        if g.mode != EXACT or g.k < 2:
            raise InvalidInputError("line preimages need exact-k mode with k >= 2")
        keep = [i for i, v in enumerate(g.vertices)
                if phi(g.k, v) == line_label]
    else:
        keep = list(range(len(g.vertices)))
    order = sorted(keep, key=lambda i: circular_key(g.vertices[i]))
    pos = {i: n for n, i in enumerate(order)}
    chords = []
    for i in keep:
        for j in g.adj[i]:
            if j in pos and j > i:
                a, b = sorted((pos[i], pos[j]))
                chords.append((a, b))
    chords.sort()
    for (a, b), (c, d) in itertools.combinations(chords, 2):
        if len({a, b, c, d}) < 4:
            continue
        if (a < c < b) != (a < d < b):
            return False
    return True


def clique_number_exact_k(k: int, window: WindowSpec) -> int:
    """Exact clique number of the windowed exact-k graph.

    The window must contain 1/0, 1/k and 2/k so the extremal triangle (odd
    k) has room to appear.
    """
    for v in (INFINITY, canonicalize(1, k), canonicalize(2, k)):
        if not window.contains(v):
            raise InvalidInputError(f"window must contain {v}")
    g = build(EXACT, k, window)
    from .search import max_clique_masks, masks_from_adj
    size, _, _, completed = max_clique_masks(masks_from_adj(g.adj))
    assert completed
    return size
