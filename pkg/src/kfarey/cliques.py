"""Maximum cliques and coloring bounds for the at-most-k graphs.

Lower bounds come from the R/S/T horoball constructions and from exact
search over growing windows; upper bounds come from line counts of the
reduction maps.  Certificates are always re-verified by a pairwise
determinant scan before they are reported.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .core import (FareyVertex, InvalidInputError, ResourceLimitError,
                   det_pair)
from .dualtree import construct_R, construct_S, construct_T, incident_vertices
from .levelgraph import (AT_MOST, LevelGraph, WindowSpec, build, denom_window)
from .projline import ProjLine, line_count, min_line_count_above, next_prime, phi
from .search import lexmin_witness, masks_from_adj, max_clique_masks, peel


@dataclass(frozen=True)
class CliqueResult:
    """A verified clique plus how it was found."""

    k: int
    size: int
    witness: tuple[FareyVertex, ...]
    optimal_within_window: bool
    window: WindowSpec | None
    nodes_explored: int
    elapsed: float
    source: str  # "search" or a construction label like "S_4"

    def to_dict(self):
        return {
            "k": self.k,
            "size": self.size,
            "witness": [str(v) for v in self.witness],
            "optimal_within_window": self.optimal_within_window,
            "window": None if self.window is None else self.window.to_dict(),
            "nodes_explored": self.nodes_explored,
            "elapsed": round(self.elapsed, 3),
            "source": self.source,
        }


def verify_clique(vertices, k: int) -> None:
    """Raise unless the vertices are pairwise at determinant <= k (and > 0)."""
    vs = list(vertices)
    for i, u in enumerate(vs):
        for w in vs[i + 1:]:
            d = det_pair(u, w)
            if not 1 <= d <= k:
                raise InvalidInputError(
                    f"pair {u}, {w} has determinant {d}, outside [1, {k}]")


def _sorted_witness(vertices) -> tuple[FareyVertex, ...]:
    return tuple(sorted(vertices, key=lambda v: v.key))


def max_clique(k: int, window: WindowSpec, *, time_budget: float | None = None,
               initial_lower: int = 0, seed_witness=None,
               target: int | None = None) -> CliqueResult:
    """Exact maximum clique of the windowed at-most-k graph.

    A seed witness (filtered to the window) primes the incumbent so the
    search only has to look for something strictly larger.  A target stops
    the search as soon as a clique that big is found.  When the budget runs
    out early the result carries optimal_within_window=False and the best
    clique seen so far.  The returned witness is the lexicographically
    minimal optimum whenever the search ran to completion and time permits.
    """
    if k < 1:
        raise InvalidInputError("k must be >= 1")
    if time_budget is not None and time_budget <= 0:
        raise InvalidInputError("time budget must be positive")
    start = time.monotonic()
    deadline = None if time_budget is None else start + time_budget
    g = build(AT_MOST, k, window)
    if not g.vertices:
        raise InvalidInputError("window contains no vertices")
    seed_idx: list[int] = []
    if seed_witness:
        verify_clique(seed_witness, k)
        seed_idx = [g.index_of(v) for v in seed_witness if v in g]
    best = max(initial_lower, len(seed_idx))

    def bail():
        # setup ate the whole budget; report the seed rather than start a
        # search that would be cut off immediately
        witness = [g.vertices[i] for i in seed_idx]
        if witness:
            verify_clique(witness, k)
        return CliqueResult(k, best, _sorted_witness(witness), False, window,
                            0, time.monotonic() - start, "search")

    if deadline is not None and time.monotonic() > deadline:
        return bail()
    masks = masks_from_adj(g.adj)
    if deadline is not None and time.monotonic() > deadline:
        return bail()
    # vertices below the incumbent's degree requirement cannot improve on it
    alive = peel(masks, best)
    pruned = [masks[i] & alive if (alive >> i) & 1 else 0
              for i in range(len(masks))]
    size, witness_idx, nodes, completed = max_clique_masks(
        pruned, initial_best=best, deadline=deadline, target=target)
    if witness_idx is None:
        size = best
        witness_idx = seed_idx
    witness = [g.vertices[i] for i in witness_idx]
    if completed and size > 0:
        canon = lexmin_witness(masks, size, deadline)
        if canon is not None:
            witness = [g.vertices[i] for i in canon]
    if witness:
        verify_clique(witness, k)
    return CliqueResult(k, size, _sorted_witness(witness), completed, window,
                        nodes, time.monotonic() - start, "search")


def lower_bound_from_construction(k: int) -> CliqueResult:
    """Best clique certificate the R/S/T constructions give for this k.

    R_{k+1} always yields k+2 vertices; S_{(k+1)/2} yields k+3 for odd
    k >= 3; T_{(k+4)/12} yields k+4 when k = 8 mod 12.
    """
    if k < 1:
        raise InvalidInputError("k must be >= 1")
    start = time.monotonic()
    best = incident_vertices(construct_R(k + 1))
    label = f"R_{k + 1}"
    if k % 2 == 1 and k >= 3:
        cand = incident_vertices(construct_S((k + 1) // 2))
        if len(cand.v_k) > len(best.v_k):
            best, label = cand, f"S_{(k + 1) // 2}"
    if k % 12 == 8:
        cand = incident_vertices(construct_T((k + 4) // 12))
        if len(cand.v_k) > len(best.v_k):
            best, label = cand, f"T_{(k + 4) // 12}"
    if best.i_k > k:
        raise RuntimeError(f"construction {label} exceeds determinant {k}")
    verify_clique(best.v_k, k)
    return CliqueResult(k, len(best.v_k), _sorted_witness(best.v_k), False,
                        None, 0, time.monotonic() - start, label)


def search_with_growing_window(k: int, *, time_budget: float,
                               start_bound: int | None = None,
                               target: int | None = None) -> CliqueResult:
    """Double the denominator cap until the budget or the target is hit.

    The line-count ceiling 1 + p(k) caps every clique, so reaching it stops
    the growth early with a provably global optimum.
    """
    if time_budget <= 0:
        raise InvalidInputError("time budget must be positive")
    start = time.monotonic()
    ceiling = 1 + next_prime(k)
    goal = ceiling if target is None else min(target, ceiling)
    incumbent = lower_bound_from_construction(k)
    bound = start_bound if start_bound is not None else k + 2
    best = incumbent
    window = None
    total_nodes = 0
    last_round = 0.0
    while True:
        remaining = time_budget - (time.monotonic() - start)
        # doubling the cap quadruples the vertex count, so the next round
        # costs several times the last one just to materialize the graph;
        # starting it with less budget than that only burns time
        if remaining <= 3 * last_round:
            break
        round_start = time.monotonic()
        window = denom_window(bound)
        try:
            res = max_clique(k, window, time_budget=remaining,
                             seed_witness=best.witness, target=goal)
        except ResourceLimitError:
            break  # window outgrew the vertex ceiling; keep the best so far
        last_round = time.monotonic() - round_start
        total_nodes += res.nodes_explored
        if res.size > best.size or (res.size == best.size and res.optimal_within_window):
            best = res
        if best.size >= goal:
            break
        if not res.optimal_within_window:
            break  # budget ran dry inside this window
        bound *= 2
    optimal_globally = best.size >= ceiling
    return CliqueResult(k, best.size, best.witness,
                        optimal_globally or best.optimal_within_window,
                        best.window if best.window is not None else window,
                        total_nodes, time.monotonic() - start, best.source)


@dataclass(frozen=True)
class ColoringResult:
    """A proper coloring of a windowed at-most-k graph."""

    k: int
    window: WindowSpec
    colors_used: int
    assignment: dict[FareyVertex, object]
    method: str


def color_by_lines(k: int, r: int, window: WindowSpec) -> ColoringResult:
    """Color by reduction mod r; proper whenever r > k.

    Properness is re-verified edge by edge; a violation is a bug, so it
    raises rather than returning a result.
    """
    if r <= k:
        raise InvalidInputError("the modulus must exceed k")
    g = build(AT_MOST, k, window)
    assignment = {v: phi(r, v) for v in g.vertices}
    for i, v in enumerate(g.vertices):
        for j in g.adj[i]:
            if j > i and assignment[v] == assignment[g.vertices[j]]:
                raise RuntimeError(
                    f"vertices {v} and {g.vertices[j]} share line {assignment[v]}")
    return ColoringResult(k, window, len(set(assignment.values())),
                          assignment, f"phi-line r={r}")


def greedy_color(k: int, window: WindowSpec, order: str = "dsatur") -> ColoringResult:
    """Heuristic proper coloring; order is 'lex', 'degeneracy' or 'dsatur'."""
    g = build(AT_MOST, k, window)
    n = len(g.vertices)
    if order == "lex":
        sequence = list(range(n))
    elif order == "degeneracy":
        from .search import degeneracy_order
        sequence = list(reversed(degeneracy_order(masks_from_adj(g.adj))))
    elif order == "dsatur":
        sequence = None
    else:
        raise InvalidInputError(f"unknown order {order!r}")
    colors: dict[int, int] = {}
    if sequence is not None:
        for i in sequence:
            used = {colors[j] for j in g.adj[i] if j in colors}
            c = 0
            while c in used:
                c += 1
            colors[i] = c
    else:
        saturation = [set() for _ in range(n)]
        degrees = [len(g.adj[i]) for i in range(n)]
        uncolored = set(range(n))
        while uncolored:
            i = max(uncolored, key=lambda x: (len(saturation[x]), degrees[x], -x))
            c = 0
            while c in saturation[i]:
                c += 1
            colors[i] = c
            uncolored.discard(i)
            for j in g.adj[i]:
                saturation[j].add(c)
    for i in range(n):
        for j in g.adj[i]:
            if j > i and colors[i] == colors[j]:  # pragma: no cover
                raise RuntimeError("greedy coloring produced a conflict")
    assignment = {g.vertices[i]: colors[i] for i in range(n)}
    return ColoringResult(k, window, len(set(colors.values())), assignment,
                          f"greedy-{order}")


@dataclass(frozen=True)
class BoundsRow:
    """One line of the clique-number bounds table."""

    k: int
    lower: int
    upper: int
    agol_bound: int
    gap_closed: bool
    lower_source: str
    window: WindowSpec | None

    def to_dict(self):
        return {
            "k": self.k,
            "lower": self.lower,
            "upper": self.upper,
            "agol_bound": self.agol_bound,
            "gap_closed": self.gap_closed,
            "lower_source": self.lower_source,
            "window": None if self.window is None else self.window.to_dict(),
        }


def bounds_table(k_values, *, time_budget_per_k: float | None = None,
                 start_bound: int | None = None) -> list[BoundsRow]:
    """Lower/upper clique bounds per k.

    Without a budget only the constructions feed the lower bound; with one,
    exact search over growing windows tries to improve it.  The upper bound
    is the best line count over moduli in (k, 2k+2], which always includes
    the Agol bound 1 + p(k).
    """
    rows = []
    for k in k_values:
        agol = 1 + next_prime(k)
        _, upper = min_line_count_above(k, 2 * k + 2)
        best = lower_bound_from_construction(k)
        if time_budget_per_k is not None:
            searched = search_with_growing_window(
                k, time_budget=time_budget_per_k, start_bound=start_bound)
            if searched.size > best.size:
                best = searched
        rows.append(BoundsRow(k, best.size, upper, agol,
                              best.size >= upper, best.source, best.window))
    return rows
