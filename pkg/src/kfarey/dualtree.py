"""The trivalent tree dual to the Farey tessellation.

Nodes are ideal triangles (triples of vertices pairwise at determinant 1);
two nodes are adjacent when they share a tessellation edge.  The boundary of
the horoball at a vertex v is the set of nodes containing v.  Geodesics in
the tree between two horoballs decompose into runs along intermediate
horoball boundaries; the run lengths form the left-right sequence, whose
continuant numerator recovers the determinant of the endpoints.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import (FareyVertex, InvalidInputError, INFINITY, canonicalize,
                   circular_key, det_pair, find_seed_neighbor)


@dataclass(frozen=True)
class TriangleNode:
    """Unordered triple of vertices, pairwise at determinant 1."""

    verts: tuple[FareyVertex, FareyVertex, FareyVertex]

    def __post_init__(self):
        vs = tuple(sorted(self.verts, key=lambda v: v.key))
        object.__setattr__(self, "verts", vs)
        if len(set(vs)) != 3:
            raise InvalidInputError("triangle needs three distinct vertices")
        for x, y in itertools.combinations(vs, 2):
            if det_pair(x, y) != 1:
                raise InvalidInputError(
                    f"triangle pair {x}, {y} has determinant {det_pair(x, y)} != 1")

    @property
    def key(self):
        return tuple(v.key for v in self.verts)

    def __str__(self):
        return "{" + ", ".join(str(v) for v in self.verts) + "}"


def root_triangle() -> TriangleNode:
    return TriangleNode((INFINITY, canonicalize(0, 1), canonicalize(1, 1)))


def _reflect(u: FareyVertex, w: FareyVertex, apex: FareyVertex) -> FareyVertex:
    """Third vertex of the other triangle on the edge {u, w}.

    The two completions of a tessellation edge are u+w and u-w; whichever
    is not the apex of the current triangle is the reflection.
    """
    plus = canonicalize(u.p + w.p, u.q + w.q)
    if plus != apex:
        return plus
    return canonicalize(u.p - w.p, u.q - w.q)


def triangle_neighbors(t: TriangleNode) -> list[TriangleNode]:
    """The three nodes adjacent to t, one across each edge."""
    out = []
    for i, j, k in ((0, 1, 2), (0, 2, 1), (1, 2, 0)):
        u, w, apex = t.verts[i], t.verts[j], t.verts[k]
        out.append(TriangleNode((u, w, _reflect(u, w, apex))))
    return out


def _strictly_between(lo, hi, m) -> bool:
    return lo < m < hi


def _separates(u: FareyVertex, w: FareyVertex, apex: FareyVertex,
               target: FareyVertex) -> bool:
    """Does the edge {u, w} separate the apex's side from the target?"""
    lo, hi = sorted((circular_key(u), circular_key(w)))
    return _strictly_between(lo, hi, circular_key(target)) != \
        _strictly_between(lo, hi, circular_key(apex))


def _some_triangle(v: FareyVertex) -> TriangleNode:
    u = find_seed_neighbor(v, 1)
    return TriangleNode((v, u, canonicalize(v.p + u.p, v.q + u.q)))


def _walk_to_horoball(start: TriangleNode, target: FareyVertex) -> list[TriangleNode]:
    """Node path from start to the first triangle containing the target."""
    path = [start]
    node = start
    while target not in node.verts:
        for i, j, k in ((0, 1, 2), (0, 2, 1), (1, 2, 0)):
            u, w, apex = node.verts[i], node.verts[j], node.verts[k]
            if _separates(u, w, apex, target):
                node = TriangleNode((u, w, _reflect(u, w, apex)))
                break
        else:  # pragma: no cover - would indicate a broken invariant
            raise RuntimeError(f"no edge of {node} separates it from {target}")
        path.append(node)
    return path


def horoball_geodesic(src: FareyVertex, dst: FareyVertex) -> list[TriangleNode]:
    """Shortest node path from the horoball at src to the horoball at dst.

    Found by walking toward dst from any triangle containing src, then
    trimming the prefix that stays on src's horoball boundary.
    """
    if src == dst:
        raise InvalidInputError("the two horoballs must be distinct")
    walk = _walk_to_horoball(_some_triangle(src), dst)
    last_on_src = max(i for i, t in enumerate(walk) if src in t.verts)
    return walk[last_on_src:]


@dataclass(frozen=True)
class LRSequence:
    """Run lengths of a horoball-to-horoball geodesic; all terms positive."""

    terms: tuple[int, ...]

    def __post_init__(self):
        if not self.terms or any(t < 1 for t in self.terms):
            raise InvalidInputError("run lengths must be positive")

    def __str__(self):
        return "{" + ",".join(str(t) for t in self.terms) + "}"


def lr_sequence(src: FareyVertex, dst: FareyVertex, co: bool = False) -> LRSequence:
    """Left-right sequence of the geodesic from src's horoball to dst's.

    Every edge of the geodesic lies on two horoball boundaries, so the
    decomposition into runs has two readings.  The primary reading starts
    with a maximal first run; co=True instead splits the first edge off as
    its own run of length 1.  Both have the same continuant numerator.
    Needs det_pair(src, dst) >= 2; neighboring horoballs leave no room for
    a geodesic between them.
    """
    if det_pair(src, dst) < 2:
        raise InvalidInputError("left-right sequences need determinant >= 2")
    path = horoball_geodesic(src, dst)
    crossings = [set(path[i].verts) & set(path[i + 1].verts)
                 for i in range(len(path) - 1)]
    junctions = []
    for i in range(len(crossings) - 1):
        (shared,) = crossings[i] & crossings[i + 1]
        junctions.append(shared)
    if not junctions:  # single-edge geodesic, determinant 2
        return LRSequence((1,))
    runs = [len(list(g)) for _, g in itertools.groupby(junctions)]
    if co:
        return LRSequence((1, *runs))
    return LRSequence((runs[0] + 1, *runs[1:]))


def _continuant(terms: tuple[int, ...]) -> tuple[int, int]:
    # value of t1 + 1/(t2 + 1/(... + 1/(tm + 1))) as a reduced fraction
    num, den = terms[-1] + 1, 1
    for t in reversed(terms[:-1]):
        num, den = t * num + den, num
    return num, den


def continuant_numerator(seq: LRSequence) -> int:
    """Numerator, in lowest terms, of the continued fraction built from seq."""
    terms = seq.terms if isinstance(seq, LRSequence) else tuple(seq)
    if not terms or any(t < 1 for t in terms):
        raise InvalidInputError("run lengths must be positive")
    return _continuant(terms)[0]


def det_via_lr(src: FareyVertex, dst: FareyVertex) -> int:
    """Determinant of (src, dst) recovered from the left-right sequence.

    Cross-checked against det_pair; a mismatch means a bug, not bad input.
    """
    got = continuant_numerator(lr_sequence(src, dst))
    want = det_pair(src, dst)
    if got != want:
        raise RuntimeError(
            f"continuant {got} disagrees with determinant {want} for {src}, {dst}")
    return got


@dataclass(frozen=True)
class DualSubgraph:
    """Finite connected subgraph of the dual tree."""

    nodes: tuple[TriangleNode, ...]
    edges: tuple[tuple[TriangleNode, TriangleNode], ...]
    label: str | None = None

    def to_dict(self):
        index = {t: i for i, t in enumerate(self.nodes)}
        return {
            "nodes": [[str(v) for v in t.verts] for t in self.nodes],
            "edges": [[index[s], index[t]] for s, t in self.edges],
            "label": self.label,
        }


def dual_subgraph(nodes, edges, label: str | None = None) -> DualSubgraph:
    """Canonicalize, validate adjacency, and check connectivity."""
    node_list = sorted(set(nodes), key=lambda t: t.key)
    index = {t: i for i, t in enumerate(node_list)}
    edge_set = set()
    for s, t in edges:
        if s not in index or t not in index:
            raise InvalidInputError("edge endpoint missing from node set")
        if len(set(s.verts) & set(t.verts)) != 2:
            raise InvalidInputError(f"nodes {s} and {t} share no tessellation edge")
        a, b = sorted((s, t), key=lambda n: n.key)
        edge_set.add((a, b))
    edge_list = sorted(edge_set, key=lambda e: (e[0].key, e[1].key))
    # connectivity via union-find over node indices
    parent = list(range(len(node_list)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s, t in edge_list:
        ra, rb = find(index[s]), find(index[t])
        if ra != rb:
            parent[ra] = rb
    roots = {find(i) for i in range(len(node_list))}
    if len(roots) > 1:
        raise InvalidInputError("subgraph must be connected")
    return DualSubgraph(tuple(node_list), tuple(edge_list), label)


@dataclass(frozen=True)
class IncidenceResult:
    """Vertices whose horoball boundary meets a subgraph in more than a point."""

    v_k: tuple[FareyVertex, ...]
    i_k: int


def incident_vertices(sub: DualSubgraph) -> IncidenceResult:
    """V(K) and I(K) for a dual subgraph K.

    A vertex qualifies when K contains an edge on its horoball boundary, or
    two K-edges meeting at a node of that boundary; I(K) is the maximum
    pairwise determinant over the qualifying vertices.
    """
    if not sub.edges:
        raise InvalidInputError("subgraph needs at least one edge")
    marked: set[FareyVertex] = set()
    degree: dict[TriangleNode, int] = {}
    for s, t in sub.edges:
        u, w = set(s.verts) & set(t.verts)
        marked.update((u, w))
        degree[s] = degree.get(s, 0) + 1
        degree[t] = degree.get(t, 0) + 1
    for node, deg in degree.items():
        if deg >= 2:
            marked.update(node.verts)
    v_k = tuple(sorted(marked, key=lambda v: v.key))
    i_k = max(det_pair(x, y) for x, y in itertools.combinations(v_k, 2))
    return IncidenceResult(v_k, i_k)


def _path_node(j: int) -> TriangleNode:
    # j-th triangle along the horoball boundary at infinity
    return TriangleNode((INFINITY, canonicalize(j, 1), canonicalize(j + 1, 1)))


def _opposite(t: TriangleNode, apex: FareyVertex) -> TriangleNode:
    """Neighbor of t across the edge not containing the apex."""
    u, w = (v for v in t.verts if v != apex)
    return TriangleNode((u, w, _reflect(u, w, apex)))


def _expand(nodes, edges, node: TriangleNode, parent: TriangleNode, depth: int):
    # full binary subtree of the given depth hanging off node, away from parent
    if depth == 0:
        return
    for nb in triangle_neighbors(node):
        if nb != parent:
            nodes.append(nb)
            edges.append((node, nb))
            _expand(nodes, edges, nb, node, depth - 1)


def _horocycle_path(length: int):
    nodes = [_path_node(j) for j in range(length + 1)]
    edges = [(nodes[j - 1], nodes[j]) for j in range(1, length + 1)]
    return nodes, edges


def construct_R(n: int) -> DualSubgraph:
    """Path of length n along a horocycle plus a pendant edge at each
    interior node."""
    if n < 2:
        raise InvalidInputError("R_n needs n >= 2")
    nodes, edges = _horocycle_path(n)
    for j in range(1, n):
        child = _opposite(nodes[j], INFINITY)
        edges.append((nodes[j], child))
        nodes.append(child)
    return dual_subgraph(nodes, edges, label=f"R_{n}")


def construct_S(n: int) -> DualSubgraph:
    """R_{2n} plus the two remaining edges at its central pendant node.

    That node is the unique endpoint fixed by the order-2 symmetry of R_{2n}.
    """
    if n < 2:
        raise InvalidInputError("S_n needs n >= 2")
    nodes, edges = _horocycle_path(2 * n)
    pendants = {}
    for j in range(1, 2 * n):
        child = _opposite(nodes[j], INFINITY)
        edges.append((nodes[j], child))
        nodes.append(child)
        pendants[j] = child
    center = pendants[n]
    for nb in triangle_neighbors(center):
        if nb != nodes[n]:
            nodes.append(nb)
            edges.append((center, nb))
    return dual_subgraph(nodes, edges, label=f"S_{n}")


def construct_T(n: int) -> DualSubgraph:
    """Path of length 7n-1 with binary subtrees of depth 1, 2, 3 attached.

    Interior path nodes are numbered 1..7n-2; positions 1..2n-1 and
    5n..7n-2 get a single pendant edge, 2n..3n-1 and 4n..5n-1 a depth-two
    subtree (three edges), 3n..4n-1 a depth-three subtree (seven edges).
    """
    if n < 1:
        raise InvalidInputError("T_n needs n >= 1")
    nodes, edges = _horocycle_path(7 * n - 1)
    path = list(nodes)
    depth_at = {}
    for v in itertools.chain(range(1, 2 * n), range(5 * n, 7 * n - 1)):
        depth_at[v] = 1
    for v in itertools.chain(range(2 * n, 3 * n), range(4 * n, 5 * n)):
        depth_at[v] = 2
    for v in range(3 * n, 4 * n):
        depth_at[v] = 3
    for v, depth in sorted(depth_at.items()):
        child = _opposite(path[v], INFINITY)
        nodes.append(child)
        edges.append((path[v], child))
        _expand(nodes, edges, child, path[v], depth - 1)
    return dual_subgraph(nodes, edges, label=f"T_{n}")
