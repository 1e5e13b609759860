import random

import pytest

from kfarey.cliques import (bounds_table, color_by_lines, greedy_color,
                            lower_bound_from_construction, max_clique,
                            search_with_growing_window, verify_clique)
from kfarey.core import InvalidInputError, det_pair, parse_vertex
from kfarey.levelgraph import AT_MOST, build, denom_window, level_window
from kfarey.search import (degeneracy_order, lexmin_witness, masks_from_adj,
                           max_clique_masks, naive_max_clique, peel)


def random_adj(rng, n, p):
    adj = [set() for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                adj[i].add(j)
                adj[j].add(i)
    return adj


class TestMasks:
    def test_round_trip(self):
        adj = [{1, 2}, {0}, {0}]
        masks = masks_from_adj(adj)
        assert masks == [0b110, 0b001, 0b001]

    def test_degeneracy_order_is_permutation(self):
        rng = random.Random(0)
        adj = random_adj(rng, 30, 0.3)
        order = degeneracy_order(masks_from_adj(adj))
        assert sorted(order) == list(range(30))

    def test_peel_keeps_cliques(self):
        rng = random.Random(1)
        adj = random_adj(rng, 25, 0.5)
        masks = masks_from_adj(adj)
        opt = naive_max_clique(adj)
        alive = peel(masks, opt - 1)
        sub = [masks[i] & alive if (alive >> i) & 1 else 0
               for i in range(len(masks))]
        assert max_clique_masks(sub)[0] == opt


class TestSolverOracle:
    @pytest.mark.parametrize("seed", range(12))
    def test_random_graphs(self, seed):
        rng = random.Random(seed)
        n = rng.randint(5, 45)
        adj = random_adj(rng, n, rng.choice([0.2, 0.5, 0.8]))
        size, witness, _, completed = max_clique_masks(masks_from_adj(adj))
        assert completed
        assert size == naive_max_clique(adj)
        assert witness is not None and len(witness) == size
        for i in witness:
            for j in witness:
                if i != j:
                    assert j in adj[i]

    def test_target_stops_early(self):
        adj = [set(range(10)) - {i} for i in range(10)]  # K10
        size, _, _, completed = max_clique_masks(masks_from_adj(adj), target=4)
        assert size >= 4
        assert completed is False

    def test_initial_best_suppresses_witness(self):
        adj = [{1}, {0}]
        size, witness, _, completed = max_clique_masks(
            masks_from_adj(adj), initial_best=5)
        assert (size, witness, completed) == (5, None, True)

    def test_lexmin_is_minimal(self):
        rng = random.Random(7)
        adj = random_adj(rng, 20, 0.6)
        masks = masks_from_adj(adj)
        opt = naive_max_clique(adj)
        got = lexmin_witness(masks, opt)
        cliques = []

        def grow(prefix, cand):
            if len(prefix) == opt:
                cliques.append(tuple(prefix))
                return
            for v in range(prefix[-1] + 1 if prefix else 0, 20):
                if all(v in adj[u] for u in prefix):
                    grow(prefix + [v], cand)
        grow([], None)
        assert tuple(got) == min(cliques)


class TestWindowedSearch:
    @pytest.mark.parametrize("k,bound", [(3, 6), (5, 6), (8, 5), (13, 5)])
    def test_matches_naive_on_window(self, k, bound):
        g = build(AT_MOST, k, denom_window(bound))
        assert len(g.vertices) <= 80
        res = max_clique(k, denom_window(bound))
        assert res.optimal_within_window
        assert res.size == naive_max_clique([set(s) for s in g.adj])
        verify_clique(res.witness, k)

    def test_seed_outside_window_filtered(self):
        seed = lower_bound_from_construction(8).witness
        res = max_clique(8, denom_window(12), seed_witness=seed)
        assert res.size >= 10

    def test_bad_seed_rejected(self):
        bad = [parse_vertex("0/1"), parse_vertex("5/1")]
        with pytest.raises(InvalidInputError):
            max_clique(3, denom_window(6), seed_witness=bad)

    def test_budget_validated(self):
        with pytest.raises(InvalidInputError):
            max_clique(3, denom_window(6), time_budget=0)

    def test_result_dict(self):
        d = max_clique(2, denom_window(5)).to_dict()
        assert d["size"] == 4
        assert len(d["witness"]) == 4


class TestConstructions:
    @pytest.mark.parametrize("k,size,source", [
        (6, 8, "R_7"), (9, 12, "S_5"), (20, 24, "T_2"), (24, 26, "R_25"),
    ])
    def test_best_construction(self, k, size, source):
        res = lower_bound_from_construction(k)
        assert (res.size, res.source) == (size, source)
        assert max(det_pair(u, w) for i, u in enumerate(res.witness)
                   for w in res.witness[i + 1:]) <= k

    def test_growing_window_closes_small_k(self):
        res = search_with_growing_window(5, time_budget=60, target=8)
        assert res.size == 8
        assert res.optimal_within_window

    def test_verify_clique_rejects_far_pair(self):
        with pytest.raises(InvalidInputError):
            verify_clique([parse_vertex("0/1"), parse_vertex("7/1")], 3)
        with pytest.raises(InvalidInputError):
            verify_clique([parse_vertex("0/1"), parse_vertex("0/1")], 3)


class TestColoring:
    def test_line_coloring_proper_and_bounded(self):
        res = color_by_lines(6, 7, level_window(25))
        assert res.colors_used <= 8

    def test_modulus_must_exceed_k(self):
        with pytest.raises(InvalidInputError):
            color_by_lines(6, 6, level_window(10))

    @pytest.mark.parametrize("order", ["lex", "degeneracy", "dsatur"])
    def test_greedy_orders(self, order):
        res = greedy_color(4, level_window(15), order=order)
        g = build(AT_MOST, 4, level_window(15))
        for i, v in enumerate(g.vertices):
            for j in g.adj[i]:
                assert res.assignment[v] != res.assignment[g.vertices[j]]
        assert res.colors_used >= max_clique(4, level_window(15)).size

    def test_unknown_order(self):
        with pytest.raises(InvalidInputError):
            greedy_color(4, level_window(10), order="random")


class TestBoundsTable:
    def test_structure_and_known_rows(self):
        rows = bounds_table(range(1, 12), time_budget_per_k=3)
        by_k = {r.k: r for r in rows}
        assert by_k[11].lower == 14
        assert by_k[11].upper == 14
        assert by_k[11].gap_closed
        assert by_k[11].agol_bound == 14
        for r in rows:
            assert r.lower <= r.upper <= r.agol_bound
        d = by_k[2].to_dict()
        assert d["lower"] == 4
