"""Exact maximum-clique search on bitset adjacency.

Branch and bound over Python integer bitsets: degeneracy preordering, a
greedy coloring of the candidate set as the bound, and pivoting on the
candidate of highest degree within the candidate set.  Single-threaded and
deterministic; the public wrapper extracts the lexicographically minimal
optimal witness afterwards so repeated runs return identical certificates.
"""

from __future__ import annotations

import heapq
import time

from .core import ResourceLimitError


class BudgetExhausted(Exception):
    """Internal: raised by the search when its deadline passes."""


def masks_from_adj(adj) -> list[int]:
    """Adjacency as bit masks; adj is a sequence of neighbor-index sets."""
    masks = [0] * len(adj)
    for i, nbrs in enumerate(adj):
        m = 0
        for j in nbrs:
            m |= 1 << j
        masks[i] = m
    return masks


def degeneracy_order(masks: list[int]) -> list[int]:
    """Repeatedly remove a minimum-degree vertex; ties to the lowest index."""
    n = len(masks)
    alive = (1 << n) - 1
    deg = [masks[i].bit_count() for i in range(n)]
    heap = [(d, v) for v, d in enumerate(deg)]
    heapq.heapify(heap)
    order = []
    for _ in range(n):
        while True:
            d, v = heapq.heappop(heap)
            if (alive >> v) & 1 and d == deg[v]:
                break  # entries with stale degrees stay behind in the heap
        order.append(v)
        alive &= ~(1 << v)
        rest = masks[v] & alive
        while rest:
            u = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            deg[u] -= 1
            heapq.heappush(heap, (deg[u], u))
    return order


def _color_bound(P: int, masks: list[int]) -> int:
    # number of greedy color classes covering P
    count = 0
    rem = P
    while rem:
        count += 1
        avail = rem
        while avail:
            v = (avail & -avail).bit_length() - 1
            bit = 1 << v
            rem &= ~bit
            avail &= ~(bit | masks[v])
    return count


class _Ctx:
    __slots__ = ("masks", "best", "witness", "nodes", "deadline", "target")

    def __init__(self, masks, best, deadline, target=None):
        self.masks = masks
        self.best = best
        self.witness: list[int] | None = None
        self.nodes = 0
        self.deadline = deadline
        self.target = target


def _expand(ctx: _Ctx, stack: list[int], P: int):
    ctx.nodes += 1
    # near the root a single node costs milliseconds on big graphs, so the
    # check interval has to stay small to keep the overshoot bounded
    if ctx.nodes % 128 == 0 and ctx.deadline is not None \
            and time.monotonic() > ctx.deadline:
        raise BudgetExhausted
    masks = ctx.masks
    if not P:
        if len(stack) > ctx.best:
            ctx.best = len(stack)
            ctx.witness = list(stack)
        return
    if len(stack) + _color_bound(P, masks) <= ctx.best:
        return
    # pivot on the candidate with the most candidate neighbors
    pivot, pivot_deg = -1, -1
    rest = P
    while rest:
        u = (rest & -rest).bit_length() - 1
        rest &= rest - 1
        d = (P & masks[u]).bit_count()
        if d > pivot_deg:
            pivot, pivot_deg = u, d
    branch = P & ~masks[pivot]
    while branch:
        v = (branch & -branch).bit_length() - 1
        bit = 1 << v
        branch &= ~bit
        stack.append(v)
        _expand(ctx, stack, P & masks[v])
        stack.pop()
        P &= ~bit
        if ctx.target is not None and ctx.best >= ctx.target:
            return


def max_clique_masks(masks: list[int], *, initial_best: int = 0,
                     deadline: float | None = None,
                     target: int | None = None):
    """(size, witness indices or None, nodes, completed).

    Searches in degeneracy order.  witness is None when nothing beat
    initial_best.  completed is False when the deadline cut the search
    short (or a target size was reached early), in which case size is only
    a lower bound.
    """
    n = len(masks)
    order = degeneracy_order(masks)
    ctx = _Ctx(masks, initial_best, deadline, target)
    full = (1 << n) - 1
    if target is not None and ctx.best >= target:
        return ctx.best, None, 0, False
    try:
        P = full
        for v in order:
            if deadline is not None and time.monotonic() > deadline:
                raise BudgetExhausted
            bit = 1 << v
            _expand(ctx, [v], P & masks[v])
            P &= ~bit
            if target is not None and ctx.best >= target:
                return ctx.best, ctx.witness, ctx.nodes, False
        return ctx.best, ctx.witness, ctx.nodes, True
    except BudgetExhausted:
        return ctx.best, ctx.witness, ctx.nodes, False


def peel(masks: list[int], min_degree: int) -> int:
    """Mask of vertices surviving iterated removal of degree < min_degree.

    Any clique of size min_degree + 1 survives intact, so searching the
    peeled graph for cliques larger than min_degree is lossless.
    """
    alive = (1 << len(masks)) - 1
    changed = True
    while changed:
        changed = False
        rest = alive
        while rest:
            v = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            if (masks[v] & alive).bit_count() < min_degree:
                alive &= ~(1 << v)
                changed = True
    return alive


def exists_clique(masks: list[int], within: int, size: int,
                  deadline: float | None = None) -> bool:
    """Is there a clique of the given size inside the 'within' mask?

    Raises BudgetExhausted when the deadline passes before an answer.
    """
    if size <= 0:
        return True
    sub = [masks[i] & within for i in range(len(masks))]
    ctx = _Ctx(sub, size - 1, deadline, target=size)
    rest = within
    while rest:
        v = (rest & -rest).bit_length() - 1
        rest &= rest - 1
        _expand(ctx, [v], sub[v] & rest)
        if ctx.best >= size:
            return True
    return False


def lexmin_witness(masks: list[int], size: int,
                   deadline: float | None = None) -> list[int] | None:
    """Lexicographically minimal clique of the given size, as sorted indices.

    Vertices are tried in index order; index order must already reflect the
    intended canonical order.  Returns None if the deadline passes.
    """
    n = len(masks)
    chosen: list[int] = []
    allowed = peel(masks, size - 1)
    try:
        for v in range(n):
            if not (allowed >> v) & 1:
                continue
            need = size - len(chosen) - 1
            if need == 0:
                chosen.append(v)
                break
            cand = allowed & masks[v]
            if cand.bit_count() < need:
                continue
            if exists_clique(masks, cand, need, deadline):
                chosen.append(v)
                allowed = cand
    except BudgetExhausted:
        return None
    return chosen if len(chosen) == size else None


def naive_max_clique(adj) -> int:
    """Plain Bron-Kerbosch without pivoting or bounds; the test oracle.

    Exponential; only sensible on small graphs.  Kept separate from the
    tuned search on purpose.
    """
    n = len(adj)
    if n > 80:
        raise ResourceLimitError("naive enumeration is capped at 80 vertices")
    masks = masks_from_adj(adj)
    best = 0

    def bk(r_size: int, p: int, x: int):
        nonlocal best
        if not p and not x:
            best = max(best, r_size)
            return
        rest = p
        while rest:
            v = (rest & -rest).bit_length() - 1
            bit = 1 << v
            rest &= rest - 1
            bk(r_size + 1, p & masks[v], x & masks[v])
            p &= ~bit
            x |= bit

    bk(0, (1 << n) - 1, 0)
    return best
