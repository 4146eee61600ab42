import random

import pytest

from growsched.composite import LEAF_CUT, PATH_CUT, colored_schedule, planar_schedule, tree_decompose, tree_schedule
from growsched.errors import GraphError
from growsched.graph import (
    Coloring,
    Graph,
    complete_graph,
    cycle_graph,
    degeneracy_coloring,
    greedy_coloring,
    grid_graph,
    path_graph,
    petersen_graph,
    random_tree,
    star_graph,
)
from growsched.schedule import validate


def ceil_log2(n):
    return (n - 1).bit_length()


def triple(s, g):
    m = validate(s, g)
    return m.slots, m.excess_edges, m.max_excess_lifetime


def test_decompose_examples():
    phases = tree_decompose(path_graph(8))
    assert [p.kind for p in phases] == [PATH_CUT, LEAF_CUT]
    (start, end, internal), = phases[0].removals
    assert len(internal) == 6 and {start, end} == {0, 7}
    phases = tree_decompose(star_graph(8))
    assert [p.kind for p in phases] == [LEAF_CUT]
    assert tree_decompose(Graph(1)) == []
    with pytest.raises(GraphError):
        tree_decompose(cycle_graph(5))


@pytest.mark.parametrize("seed", range(25))
def test_decompose_removes_every_vertex_once(seed):
    t = random_tree(random.Random(seed).randint(2, 300), seed)
    seen = []
    for ph in tree_decompose(t):
        if ph.kind == PATH_CUT:
            for _, _, internal in ph.removals:
                seen += internal
        else:
            for _, leaves in ph.removals:
                seen += leaves
    assert len(seen) == len(set(seen)) == t.n - 1
    # phase count stays logarithmic
    assert len(tree_decompose(t)) <= 2 * ceil_log2(t.n) + 2


def test_tree_schedule_examples():
    k, _, _ = triple(tree_schedule(path_graph(8)), path_graph(8))
    assert k <= 2 * 3 + 2
    k, ell, _ = triple(tree_schedule(star_graph(8)), star_graph(8))
    assert k == 3
    assert triple(tree_schedule(Graph(1)), Graph(1)) == (0, 0, 0)
    assert triple(tree_schedule(path_graph(2)), path_graph(2)) == (1, 0, 0)


@pytest.mark.parametrize("n", [3, 5, 17, 64, 100, 513, 2000])
def test_tree_schedule_random(n):
    for seed in range(3):
        t = random_tree(n, seed)
        k, ell, _ = triple(tree_schedule(t), t)
        assert k <= 2 * ceil_log2(n) ** 2 + 2 and ell <= 2 * n


def test_colored_examples():
    k4 = complete_graph(4)
    assert triple(colored_schedule(k4, Coloring((0, 1, 2, 3))), k4)[:2] == (3, 0)
    p4 = path_graph(4)
    k, _, _ = triple(colored_schedule(p4, Coloring((0, 1, 0, 1))), p4)
    assert k <= 2 * ceil_log2(3) + 1
    s = star_graph(8)
    triple(colored_schedule(s, Coloring((0,) + (1,) * 7)), s)
    with pytest.raises(GraphError):
        colored_schedule(p4, Coloring((0, 0, 1, 1)))
    with pytest.raises(GraphError):
        colored_schedule(Graph(2), Coloring((0, 1)))


def test_colored_with_many_colourings():
    rng = random.Random(3)
    for g in (petersen_graph(), grid_graph(5, 7), cycle_graph(9), random_tree(40, 1)):
        for _ in range(5):
            order = list(range(g.n))
            rng.shuffle(order)
            col = greedy_coloring(g, order)
            k, _, _ = triple(colored_schedule(g, col), g)
            assert k <= (col.num_colors + 1) * ceil_log2(g.n) + 5


def test_planar_examples():
    grid = grid_graph(8, 8)
    assert degeneracy_coloring(grid).num_colors <= 3
    k, _, _ = triple(planar_schedule(grid), grid)
    assert k <= 3 * 6 + 5
    for seed in range(5):
        assert degeneracy_coloring(random_tree(50, seed)).num_colors <= 2
    k4 = complete_graph(4)
    assert degeneracy_coloring(k4).num_colors == 4
    triple(planar_schedule(k4), k4)
    with pytest.raises(GraphError):
        planar_schedule(Graph(3, [(0, 1)]))
