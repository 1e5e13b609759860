"""End-to-end acceptance battery.

Ten independent checks, one per headline claim the library is expected to
reproduce at desk scale.  Each test prints a single [pass]/[FAIL] line so a
teed run doubles as a report.  Budgets are generous ceilings; everything
here finishes in well under the stated limits on commodity hardware.
"""

import random

from kfarey.cliques import (color_by_lines, lower_bound_from_construction,
                            max_clique, search_with_growing_window,
                            verify_clique)
from kfarey.core import (InvalidInputError, canonicalize, det_pair,
                         parse_vertex)
from kfarey.dualtree import (construct_R, construct_S, construct_T,
                             continuant_numerator, det_via_lr,
                             incident_vertices, lr_sequence)
from kfarey.levelgraph import (EXACT, build, clique_number_exact_k,
                               component_sweep, cut_vertex_check,
                               denom_window, find_isolated_witnesses,
                               is_forest, level_window,
                               planarity_linking_check,
                               prime_power_component_count, verify_monotone)
from kfarey.projline import (enumerate_lines, line_count,
                             min_line_count_above, next_prime)
from kfarey.search import naive_max_clique


def _report(name: str, ok: bool, detail: str) -> None:
    print(f"[{'pass' if ok else 'FAIL'}] {name}: {detail}")
    assert ok, f"{name}: {detail}"


def _pairwise_max_det(vertices) -> int:
    return max(det_pair(u, w) for i, u in enumerate(vertices)
               for w in vertices[i + 1:])


def test_criterion_01_prime_power_component_plateaus():
    expected = {2: 3, 3: 4, 4: 6, 5: 6, 7: 8, 8: 12, 9: 12, 11: 12,
                13: 14, 16: 24}
    bad = []
    for k, target in expected.items():
        assert prime_power_component_count(k) == target
        sweep = component_sweep(k, 200, target_plateau=target)
        if not (sweep.stabilized and sweep.plateau_value == target
                and sweep.levels[-1] <= 200):
            bad.append((k, sweep.plateau_value, sweep.stabilized))
    _report("prime-power component plateaus", not bad,
            f"10 moduli stabilized at their formula values" if not bad
            else f"mismatches {bad}")


def test_criterion_02_composite_component_growth():
    bad = []
    witness_total = 0
    for k in (6, 10, 12, 14, 15):
        threshold = 3 * line_count(k)
        sweep = component_sweep(k, 500, stop_b0=threshold)
        crossed = sweep.b0[-1] > threshold and sweep.levels[-1] <= 500
        wider = verify_monotone(k, k, 60)
        witnesses = find_isolated_witnesses(k, 10)
        witness_total += len(witnesses)
        if not (crossed and not sweep.merges_above(k) and wider.passed
                and len(witnesses) == 10):
            bad.append(k)
    _report("composite component growth", not bad,
            f"5 moduli crossed 3x their line count with no merges; "
            f"{witness_total} isolated witnesses brute-verified" if not bad
            else f"failures at k={bad}")


def test_criterion_03_lr_sequences_match_determinants():
    a, b = parse_vertex("-2/1"), parse_vertex("1/3")
    readings = [
        (lr_sequence(a, b), (2, 2)),
        (lr_sequence(a, b, co=True), (1, 1, 2)),
        (lr_sequence(b, a), (3, 1)),
        (lr_sequence(b, a, co=True), (1, 2, 1)),
    ]
    for seq, terms in readings:
        assert seq.terms == terms
        assert continuant_numerator(seq) == 7
    rng = random.Random(23)
    checked = 0
    while checked < 200:
        p1, q1 = rng.randint(-50, 50), rng.randint(0, 50)
        p2, q2 = rng.randint(-50, 50), rng.randint(0, 50)
        try:
            u, w = canonicalize(p1, q1), canonicalize(p2, q2)
        except InvalidInputError:
            continue
        d = det_pair(u, w)
        if d < 2:
            continue
        assert det_via_lr(u, w) == d, (u, w)
        checked += 1
    _report("boundary sequences match determinants", True,
            f"4 worked readings and {checked} random pairs agree")


def test_criterion_04_construction_certificates():
    bad = []
    for n in range(2, 13):
        for build_fn, size, det in (
                (construct_R, n + 1, n - 1),
                (construct_S, 2 * n + 2, 2 * n - 1),
                (construct_T, 12 * n, 12 * n - 4)):
            res = incident_vertices(build_fn(n))
            if not (len(res.v_k) == size and res.i_k == det
                    and _pairwise_max_det(res.v_k) == det):
                bad.append((build_fn.__name__, n))
    _report("construction certificates", not bad,
            "33 certificates match their advertised size and determinant"
            if not bad else f"failures {bad}")


def test_criterion_05_construction_clique_floors():
    bad = []
    for k in range(2, 51):
        res = lower_bound_from_construction(k)
        verify_clique(res.witness, k)
        floor = k + 2
        if k % 2 == 1:
            floor = k + 3
        if k % 12 == 8:
            floor = k + 4
        if res.size < floor:
            bad.append((k, res.size, floor))
    _report("construction clique floors", not bad,
            "floors k+2 / k+3 (odd) / k+4 (8 mod 12) hold for k = 2..50"
            if not bad else f"below floor: {bad}")


def test_criterion_06_thirty_clique_at_k24():
    res = search_with_growing_window(24, time_budget=600, target=30)
    verify_clique(res.witness, 24)
    _report("30-clique at k=24", res.size >= 30,
            f"size {res.size} in {res.elapsed:.1f}s "
            f"(window {res.window.kind} {res.window.bound})")


def test_criterion_07_search_floors():
    floors = {7: 10, 13: 16, 19: 23, 23: 27}
    got = {}
    for k, floor in floors.items():
        res = search_with_growing_window(k, time_budget=600, target=floor)
        verify_clique(res.witness, k)
        got[k] = res.size
    ok = all(got[k] >= floors[k] for k in floors)
    _report("windowed search floors", ok, f"sizes {got} vs floors {floors}")


def test_criterion_08_line_coloring():
    bad = []
    for k in range(1, 31):
        r = next_prime(k)
        res = color_by_lines(k, r, level_window(60))
        if res.colors_used > 1 + r:
            bad.append((k, res.colors_used))
    pos = min_line_count_above(7, 30)
    _report("line coloring", not bad and pos == (11, 12),
            "proper with at most 1+p(k) colors for k = 1..30; "
            f"min line count above 7 is {pos}" if not bad
            else f"overshoots {bad}, position {pos}")


def test_criterion_09_structure_suite():
    problems = []
    for k in (2, 4, 6, 8, 10, 12):
        g = build(EXACT, k, level_window(30))
        if not all(is_forest(g, rep) for rep in g.components()):
            problems.append(f"cycle at k={k}")
    rng = random.Random(11)
    for k in range(2, 9):
        g = build(EXACT, k, level_window(40))
        verts = list(g.vertices)
        rng.shuffle(verts)
        conclusive = 0
        for v in verts:
            got = cut_vertex_check(g, v, 10)
            if got is None:
                continue
            if got is not True:
                problems.append(f"non-cut vertex {v} at k={k}")
            conclusive += 1
            if conclusive == 50:
                break
        if conclusive < 50:
            problems.append(f"only {conclusive} conclusive samples at k={k}")
    for k in range(1, 9):
        g = build(EXACT, k, level_window(30))
        labels = enumerate_lines(k) if k >= 2 else [None]
        for ln in labels:
            if not planarity_linking_check(g, ln):
                problems.append(f"linking at k={k} line {ln}")
    for k in range(2, 13):
        want = 2 if k % 2 == 0 else 3
        if clique_number_exact_k(k, level_window(20)) != want:
            problems.append(f"clique number at k={k}")
    _report("structure suite", not problems,
            "trees, cut vertices, per-line planarity and exact-k clique "
            "numbers all hold" if not problems else "; ".join(problems))


def test_criterion_10_solver_matches_naive_enumeration():
    rng = random.Random(1234)
    ks = (3, 5, 8, 13)
    checked = 0
    for trial in range(25):
        k = ks[trial % len(ks)]
        window = denom_window(rng.randint(3, 6),
                              include_infinity=rng.random() < 0.5)
        g = build("at-most-k", k, window)
        assert len(g.vertices) <= 60
        res = max_clique(k, window)
        assert res.optimal_within_window
        assert res.size == naive_max_clique([set(s) for s in g.adj]), \
            (k, window)
        checked += 1
    _report("solver matches naive enumeration", checked == 25,
            f"{checked} random windows agree across k in {ks}")
