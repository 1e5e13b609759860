"""Named verification suites, each a battery of structural checks.

Every suite runs at a fixed desk scale and reports one line per check.
These are the same checks the test suite freezes; the CLI exposes them so
a user can rerun any battery without pytest.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .core import FareyVertex, canonicalize, det_pair, parse_vertex
from .cliques import color_by_lines
from .dualtree import (construct_R, construct_S, construct_T,
                       continuant_numerator, det_via_lr, incident_vertices,
                       lr_sequence)
from .levelgraph import (AT_MOST, EXACT, build, component_sweep,
                         cut_vertex_check, find_isolated_witnesses, is_forest,
                         level_window, planarity_linking_check,
                         prime_power_component_count)
from .projline import (enumerate_lines, line_count, min_line_count_above,
                       next_prime)


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        mark = "pass" if self.ok else "FAIL"
        out = f"[{mark}] {self.name}"
        return f"{out}: {self.detail}" if self.detail else out


def suite_theorem1() -> list[Check]:
    """Component counts: prime powers stabilize to the formula, others grow."""
    out = []
    for k in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]:
        want = prime_power_component_count(k)
        res = component_sweep(k, 200, plateau_run=max(k, 10),
                              target_plateau=want)
        ok = res.stabilized and res.b0[-1] == want
        out.append(Check(f"exact-{k} stabilizes at {want}", ok,
                         f"plateau from level {res.plateau_start}"))
    for k in [6, 10, 12, 14, 15]:
        thresh = 3 * line_count(k)
        res = component_sweep(k, 500, stop_b0=thresh + 1)
        viol = res.merges_above(k)
        ok = not viol and res.b0[-1] > thresh
        out.append(Check(
            f"exact-{k} monotone and passes {thresh}", ok,
            f"b0={res.b0[-1]} at level {res.levels[-1]}, "
            f"{len(viol)} violations"))
        wits = find_isolated_witnesses(k, 10)
        out.append(Check(f"exact-{k} has 10 isolated witnesses",
                         len(wits) == 10,
                         ", ".join(str(v) for v, _ in wits[:3]) + ", ..."))
    return out


def suite_tree() -> list[Check]:
    """Even k: every windowed component is acyclic."""
    out = []
    for k in [2, 4, 6, 8, 10, 12]:
        g = build(EXACT, k, level_window(30))
        bad = [c for c in g.components() if not is_forest(g, c)]
        out.append(Check(f"exact-{k} components acyclic to level 30",
                         not bad,
                         f"{len(g.components())} components" if not bad
                         else f"cycle in component of {bad[0]}"))
    return out


def suite_cut() -> list[Check]:
    """Removing a vertex separates its two sides, 50 samples per k."""
    rng = random.Random(11)
    out = []
    for k in range(2, 9):
        g = build(EXACT, k, level_window(40))
        pool = list(g.vertices)
        rng.shuffle(pool)
        conclusive = failures = 0
        for v in pool:
            res = cut_vertex_check(g, v, 10)
            if res is None:
                continue
            conclusive += 1
            if res is not True:
                failures += 1
            if conclusive >= 50:
                break
        out.append(Check(f"exact-{k} cut vertices, 50 conclusive samples",
                         conclusive == 50 and failures == 0,
                         f"{conclusive} conclusive, {failures} failures"))
    return out


def suite_planarity() -> list[Check]:
    """Line preimages have no linked boundary chords; F_at-most-2 does."""
    out = []
    for k in range(2, 9):
        g = build(EXACT, k, level_window(30))
        bad = [ln for ln in enumerate_lines(k)
               if not planarity_linking_check(g, ln)]
        out.append(Check(f"exact-{k} line preimages unlinked to level 30",
                         not bad,
                         f"{line_count(k)} lines" if not bad
                         else f"linked chords in {bad[0]}"))
    control = planarity_linking_check(build(AT_MOST, 2, level_window(8)))
    out.append(Check("at-most-2 control shows linked chords",
                     control is False, "detector sees crossings"))
    return out


def suite_lr_oracle() -> list[Check]:
    """Left-right sequences reproduce the determinant pairing."""
    out = []
    a, b = parse_vertex("-2/1"), parse_vertex("1/3")
    readings = [
        (lr_sequence(a, b), (2, 2), 3),
        (lr_sequence(a, b, co=True), (1, 1, 2), 4),
        (lr_sequence(b, a), (3, 1), 2),
        (lr_sequence(b, a, co=True), (1, 2, 1), 5),
    ]
    for seq, terms, den in readings:
        ok = seq.terms == terms and continuant_numerator(seq) == 7
        out.append(Check(f"worked reading {seq} = 7/{den}", ok,
                         f"numerator {continuant_numerator(seq)}"))
    rng = random.Random(23)
    pairs = checked = 0
    while checked < 200:
        u = random_vertex(rng, 50)
        w = random_vertex(rng, 50)
        if u == w or det_pair(u, w) < 2:
            continue
        checked += 1
        if det_via_lr(u, w) == det_pair(u, w):
            pairs += 1
    out.append(Check("200 random pairs, level <= 50", pairs == 200,
                     f"{pairs} agree"))
    return out


def random_vertex(rng: random.Random, cap: int) -> FareyVertex:
    """Uniform-ish reduced vertex with level at most cap (may be 1/0)."""
    while True:
        q = rng.randint(0, cap)
        p = rng.randint(-cap, cap) if q else 1
        if math.gcd(abs(p), q) == 1 and (p, q) != (0, 0):
            return canonicalize(p, q)


def suite_constructions() -> list[Check]:
    """R/S/T certificate sizes and their max pairwise determinants."""
    out = []
    for n in range(2, 13):
        cases = [
            ("R", construct_R(n), n + 1, n - 1),
            ("S", construct_S(n), 2 * n + 2, 2 * n - 1),
            ("T", construct_T(n), 12 * n, 12 * n - 4),
        ]
        for fam, sub, want_v, want_i in cases:
            res = incident_vertices(sub)
            scan = max(det_pair(u, w) for i, u in enumerate(res.v_k)
                       for w in res.v_k[i + 1:])
            ok = (len(res.v_k), res.i_k) == (want_v, want_i) and scan == want_i
            out.append(Check(f"{fam}_{n} certificate ({want_v}, {want_i})",
                             ok, f"got ({len(res.v_k)}, {scan})"))
    return out


def suite_coloring() -> list[Check]:
    """Reduction-map colorings are proper and within the prime bound."""
    out = []
    worst = 0
    ok = True
    for k in range(1, 31):
        r = next_prime(k)
        res = color_by_lines(k, r, level_window(60))
        worst = max(worst, res.colors_used)
        if res.colors_used > 1 + r:
            ok = False
    out.append(Check("phi-line coloring proper for k <= 30, level 60", ok,
                     f"max colors used {worst}"))
    got = min_line_count_above(7, 30)
    out.append(Check("best modulus above 7 is 11 with 12 lines",
                     got == (11, 12), f"got {got}"))
    return out


SUITES = {
    "theorem1": suite_theorem1,
    "tree": suite_tree,
    "cut": suite_cut,
    "planarity": suite_planarity,
    "lr-oracle": suite_lr_oracle,
    "constructions": suite_constructions,
    "coloring": suite_coloring,
}


def run_suite(name: str) -> list[Check]:
    try:
        fn = SUITES[name]
    except KeyError:
        from .core import InvalidInputError
        raise InvalidInputError(
            f"unknown suite {name!r}; choose from {', '.join(sorted(SUITES))}")
    return fn()
