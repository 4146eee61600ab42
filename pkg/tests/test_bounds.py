import itertools
import random

import pytest

from growsched.bounds import (
    binomial_schedule,
    binomial_tree,
    chromatic_number,
    clique_number,
    edge_difference,
    g_bipart,
    g_full,
    g_full_degree_sum,
    hardness_gadget,
    min_edge_difference,
    slot_lower_bound,
)
from growsched.errors import UnsupportedSize
from growsched.graph import Graph, complete_graph, cycle_graph, path_graph, petersen_graph, random_tree, star_graph
from growsched.oracle import all_graphs, binomial_parent
from growsched.schedule import validate


def brute_omega(g):
    return max(r for r in range(1, g.n + 1) for c in itertools.combinations(range(g.n), r)
               if all(g.has_edge(a, b) for a, b in itertools.combinations(c, 2)))


def brute_chi(g):
    for k in range(1, g.n + 1):
        for cols in itertools.product(range(k), repeat=g.n):
            if all(cols[u] != cols[v] for u, v in g.edges):
                return k
    return 0


def brute_ed(g):
    n = g.n
    return min(edge_difference(g, b) for b in itertools.permutations(range(n)))


@pytest.mark.parametrize("n", range(1, 7))
def test_clique_and_chromatic_match_brute_force(n):
    for g in all_graphs(n):
        assert clique_number(g) == (brute_omega(g), True)
        assert chromatic_number(g) == (brute_chi(g), True)


def test_clique_and_chromatic_examples():
    assert clique_number(petersen_graph())[0] == 2
    assert chromatic_number(petersen_graph())[0] == 3
    assert chromatic_number(cycle_graph(7))[0] == 3
    omega, exact = clique_number(complete_graph(25))
    assert omega == 25 and not exact
    chi, exact = chromatic_number(random_tree(30, 1))
    assert chi <= 2 and not exact


def test_slot_lower_bound_examples():
    assert slot_lower_bound(complete_graph(4), 2) == 3
    assert slot_lower_bound(path_graph(5), 1) == 3
    assert slot_lower_bound(path_graph(8), 1) == 4
    assert slot_lower_bound(star_graph(5), 1) == 4
    assert slot_lower_bound(Graph(1), 2) == 0
    assert slot_lower_bound(path_graph(8), 2) == 3


def test_binomial_tree_examples():
    assert binomial_tree(0) == Graph(1)
    assert binomial_tree(1) == path_graph(2)
    b3 = binomial_tree(3)
    assert (b3.n, b3.m, len(b3.adj[0])) == (8, 7, 3)
    for delta in range(6):
        b = binomial_tree(delta)
        m = validate(binomial_schedule(delta), b)
        assert (m.slots, m.excess_edges) == (delta, 0)
    assert [binomial_parent(j) for j in range(8)] == [-1, 0, 0, 1, 0, 1, 2, 3]


def test_min_edge_difference_examples():
    r = min_edge_difference(binomial_tree(3))
    assert r.value == 0 and r.exact
    assert min_edge_difference(star_graph(8)).value == 4
    p8 = path_graph(8)
    r = min_edge_difference(p8)
    assert r.value == brute_ed(p8) >= 1
    assert edge_difference(p8, r.witness) == r.value
    with pytest.raises(UnsupportedSize):
        min_edge_difference(path_graph(6))


def test_min_edge_difference_matches_brute_force_n4_and_random_n8():
    for g in all_graphs(4):
        assert min_edge_difference(g).value == brute_ed(g)
    rng = random.Random(2)
    for _ in range(4):
        g = Graph(8, [(u, v) for u in range(8) for v in range(u + 1, 8) if rng.random() < 0.4])
        assert min_edge_difference(g).value == brute_ed(g)


def test_min_edge_difference_heuristic_is_an_upper_bound():
    g = star_graph(16)
    r = min_edge_difference(g, restarts=4)
    assert not r.exact and r.value >= 16 - 1 - 4
    assert edge_difference(g, r.witness) == r.value


def test_g_full_examples():
    assert g_full(1) == path_graph(2) and g_full_degree_sum(1) == 2
    g2 = g_full(2)
    assert (g2.n, g2.m) == (4, 5)
    g3 = g_full(3)
    assert 2 * g3.m == 38 == g_full_degree_sum(3)
    for delta in range(9):
        assert 2 * g_full(delta).m == g_full_degree_sum(delta)


def test_g_bipart_examples():
    assert g_bipart(1) == path_graph(2)
    assert g_bipart(2).edges == {(0, 2), (1, 3), (0, 3), (1, 2)}
    b3 = g_bipart(3)
    assert b3.n == 8 and b3.m == 2 * g_full(2).m + 4
    for u, v in b3.edges:
        assert (u < 4) != (v < 4)


def test_hardness_gadget_examples():
    assert hardness_gadget(Graph(1)) == path_graph(2)
    g = hardness_gadget(path_graph(2))
    assert g == complete_graph(4) and g.m == 1 + 1 + 4
    c = hardness_gadget(cycle_graph(5))
    assert (c.n, c.m) == (10, 5 + 10 + 25)
