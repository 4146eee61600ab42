"""Time the compiled kernels against the pure-Python fallback.

Both backends get identical inputs; results are compared before timing so
a speedup is only reported for matching answers.

    python benchmarks/bench_kernels.py [--repeat 3] [--quick]
"""

from __future__ import annotations

import argparse
import random
import sys
import time

from growsched import _purekernels as pure
from growsched.bounds import _bits
from growsched.composite import planar_schedule, tree_schedule
from growsched.graph import grid_graph, random_tree
from growsched.oracle import _tables, binomial_parent, connected_graphs
from growsched.schedule import _pairs, defer_deletions

try:
    from growsched import _speedups as fast
except ImportError:  # pragma: no cover
    sys.exit("compiled extension not built; run: pip install -e . --no-build-isolation")


def _random_graph_adj(n: int, p: float, seed: int) -> list[list[int]]:
    rng = random.Random(seed)
    adj = [[] for _ in range(n)]
    for u in range(n):
        for w in range(u + 1, n):
            if rng.random() < p:
                adj[u].append(w)
                adj[w].append(u)
    return adj


def _random_2cnf(nv: int, nc: int, seed: int) -> list[tuple[int, int]]:
    rng = random.Random(seed)
    return [(rng.randrange(2 * nv), rng.randrange(2 * nv)) for _ in range(nc)]


def workloads(quick: bool):
    scale = 12 if quick else 15
    tree = tree_schedule(random_tree(1 << scale, 1))
    side = 32 if quick else 96
    grid = grid_graph(side, side)
    planar = planar_schedule(grid)
    deferred = defer_deletions(planar)
    graphs8 = connected_graphs(8)[:: 40 if quick else 10]
    closure8 = connected_graphs(8)[::80]
    tab = _tables(8)
    parent = [binomial_parent(j) for j in range(8)]
    madj = _random_graph_adj(300 if quick else 600, 0.02, 7)
    nv = 2000 if quick else 20000
    cnf = _random_2cnf(nv, nv, 3)

    yield f"run  tree n=2^{scale}", lambda k: k.run(2, tree.initiator, _pairs(tree))
    yield f"run  planar grid {side}x{side}", lambda k: k.run(2, planar.initiator, _pairs(planar))
    yield f"run_final tree n=2^{scale}", lambda k: k.run_final(2, tree.initiator, _pairs(tree))
    yield f"normalize grid {side}x{side}", lambda k: k.normalize_core(2, deferred.initiator, _pairs(deferred))
    yield f"matching n={len(madj)}", lambda k: k.matching(len(madj), madj)
    yield f"two_sat vars={nv}", lambda k: k.two_sat(nv, cnf)
    yield f"edge difference x{len(graphs8)} (n=8)", lambda k: [
        k.edge_difference_search(8, parent, _bits(g), 8) for g in graphs8
    ]
    yield f"closure search x{len(closure8)} (n=8)", lambda k: [
        k.closure_search(8, tab.index, tab.closure, tab.feasible, tab.label_req, _bits(g), 64) for g in closure8
    ]


def _same(a, b) -> bool:
    """Equal up to container type (the compiled simulator reports the
    vertex set 0..N-1 as a range)."""
    if isinstance(a, (range, set, frozenset)) or isinstance(b, (range, set, frozenset)):
        return set(a) == set(b)
    if isinstance(a, (list, tuple)) and isinstance(b, (list, tuple)):
        return len(a) == len(b) and all(map(_same, a, b))
    return a == b


def _best(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="smaller inputs")
    args = ap.parse_args(argv)
    print(f"{'kernel':36s} {'pure ms':>10s} {'cython ms':>10s} {'speedup':>8s}")
    for name, call in workloads(args.quick):
        if not _same(call(pure), call(fast)):
            print(f"{name:36s} RESULTS DIFFER")
            return 1
        tp = _best(lambda: call(pure), args.repeat)
        tc = _best(lambda: call(fast), args.repeat)
        print(f"{name:36s} {tp * 1e3:10.1f} {tc * 1e3:10.1f} {tp / tc:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
