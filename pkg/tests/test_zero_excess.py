import itertools
import random

import pytest

from growsched.bounds import binomial_tree
from growsched.errors import CapExceeded, GraphError, UnsupportedSize
from growsched.graph import Graph, complete_graph, cycle_graph, path_graph, random_tree, star_graph
from growsched.oracle import all_graphs, min_excess_with_budget
from growsched.schedule import validate
from growsched.zero_excess import candidate_set, constant_excess_schedule, elimination_schedule, fast_growth


def _has_ordering(g: Graph) -> bool:
    """Brute force over every vertex order: each vertex must be a candidate
    among itself and its successors."""
    for order in itertools.permutations(range(g.n)):
        ok = True
        for i, v in enumerate(order[:-1]):
            rest = set(order[i:])
            nv = (g.adj[v] & rest) | {v}
            if not any(nv <= (g.adj[w] & rest) | {w} for w in rest if w != v):
                ok = False
                break
        if ok:
            return True
    return False


def test_candidate_set_examples():
    assert [(c.vertex, set(c.parents)) for c in candidate_set(path_graph(3))] == [(0, {1}), (2, {1})]
    assert candidate_set(cycle_graph(4)) == []
    k5 = candidate_set(complete_graph(5))
    assert [c.vertex for c in k5] == list(range(5))
    assert all(c.parents == frozenset(range(5)) - {c.vertex} for c in k5)


def test_candidate_set_matches_definition():
    for g in all_graphs(5):
        got = {c.vertex: set(c.parents) for c in candidate_set(g)}
        want = {}
        for v in range(g.n):
            ps = {w for w in range(g.n) if w != v and g.closed_neighborhood(v) <= g.closed_neighborhood(w)}
            if ps:
                want[v] = ps
        assert got == want


def test_elimination_examples():
    assert elimination_schedule(cycle_graph(4)) is None
    k4 = complete_graph(4)
    m = validate(elimination_schedule(k4), k4)
    assert (m.slots, m.excess_edges) == (3, 0)
    with pytest.raises(GraphError):
        elimination_schedule(Graph(2))
    assert validate(elimination_schedule(Graph(1)), Graph(1)).slots == 0


@pytest.mark.parametrize("n", range(1, 9))
def test_every_tree_is_eliminable(n):
    for seed in range(20):
        t = random_tree(n, seed)
        m = validate(elimination_schedule(t), t)
        assert (m.slots, m.excess_edges) == (n - 1, 0)


def test_elimination_matches_brute_force_ordering():
    for n in range(1, 7):
        for g in all_graphs(n):
            if g.n > 1 and any(not g.adj[v] for v in range(g.n)):
                continue
            try:
                s = elimination_schedule(g)
            except GraphError:
                continue
            assert (s is not None) == _has_ordering(g)


def test_constant_excess_examples():
    c4 = cycle_graph(4)
    m = validate(constant_excess_schedule(c4, 1), c4)
    assert (m.slots, m.excess_edges) == (3, 1)
    t = random_tree(9, 2)
    assert constant_excess_schedule(t, 0) == elimination_schedule(t)
    with pytest.raises(CapExceeded):
        constant_excess_schedule(c4, 9)
    with pytest.raises(ValueError):
        constant_excess_schedule(c4, -1)


def test_constant_excess_c6_agrees_with_oracle():
    c6 = cycle_graph(6)
    best = min_excess_with_budget(c6, 5)
    for ell in range(0, 4):
        s = constant_excess_schedule(c6, ell)
        assert (s is not None) == (ell >= best)
        if s is not None:
            m = validate(s, c6)
            assert (m.slots, m.excess_edges) == (5, ell)


def test_fast_growth_examples():
    p4 = path_graph(4)
    m = validate(fast_growth(p4), p4)
    assert (m.slots, m.excess_edges) == (2, 0)
    assert fast_growth(star_graph(4)) is None
    assert fast_growth(complete_graph(4)) is None
    assert fast_growth(cycle_graph(4)) is None
    assert validate(fast_growth(Graph(1)), Graph(1)).slots == 0
    with pytest.raises(UnsupportedSize):
        fast_growth(path_graph(6))


def test_fast_growth_on_binomial_trees_and_long_paths():
    for delta in range(0, 9):
        b = binomial_tree(delta)
        m = validate(fast_growth(b), b)
        assert (m.slots, m.excess_edges) == (delta, 0)
    # only the two ends of a path are candidates, so one level cannot halve P8
    assert fast_growth(path_graph(8)) is None


# a perfect matching of G itself can pair two vertices neither of which may
# be the other's parent (first graph), and picking any candidate per matched
# edge can leave two children needing one parent (second graph); both have
# 3-slot zero-excess schedules
MATCHING_TRAPS = [
    [(0, 5), (1, 3), (2, 6), (2, 7), (3, 7), (4, 5), (4, 6), (4, 7), (5, 6), (6, 7)],
    [(0, 7), (1, 6), (2, 4), (3, 5), (3, 7), (4, 6), (5, 6), (5, 7), (6, 7)],
]


@pytest.mark.parametrize("edges", MATCHING_TRAPS)
def test_fast_growth_matching_traps(edges):
    g = Graph(8, edges)
    m = validate(fast_growth(g), g)
    assert (m.slots, m.excess_edges) == (3, 0)


def _grown(delta, rng):
    adj = {0: set()}
    for _ in range(delta):
        new = []
        for p in list(adj):
            new.append((len(adj) + len(new), {p} | {w for w in adj[p] if rng.random() < 0.5}))
        for c, act in new:
            adj[c] = set(act)
            for w in act:
                adj[w].add(c)
    perm = list(range(len(adj)))
    rng.shuffle(perm)
    return Graph(len(adj), [(perm[u], perm[w]) for u in adj for w in adj[u] if u < w])


def test_fast_growth_finds_planted_schedules():
    rng = random.Random(8)
    for delta in (4, 5, 6):
        for _ in range(40):
            g = _grown(delta, rng)
            m = validate(fast_growth(g), g)
            assert (m.slots, m.excess_edges) == (delta, 0)
