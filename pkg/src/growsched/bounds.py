"""Lower bounds and the graphs behind them.

Slot lower bounds from log n, cliques and colourings; the binomial tree
grown when every vertex spawns every slot; the edge difference between a
target and that tree; the dense G_full and bipartite G_bipart families; and
the NP-hardness gadget.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from ._backend import kernels as _k
from .errors import UnsupportedSize
from .graph import Graph, bfs_distances, degeneracy_coloring, is_connected
from .oracle import binomial_parent
from .schedule import Generation, Schedule, Slot

CLIQUE_EXACT_CAP = 20
CHROMATIC_EXACT_CAP = 12
ED_EXACT_CAP = 8


def _ceil_log2(n: int) -> int:
    return (n - 1).bit_length() if n > 1 else 0


def _bits(g: Graph) -> list[int]:
    return [sum(1 << w for w in g.adj[v]) for v in range(g.n)]


# -- clique and chromatic numbers ------------------------------------------------------


def clique_number(g: Graph, exact_cap: int = CLIQUE_EXACT_CAP) -> tuple[int, bool]:
    """(omega, exact).  Bron-Kerbosch with pivoting up to ``exact_cap``
    vertices, otherwise the best greedy clique from every start vertex."""
    if g.n == 0:
        return 0, True
    nbr = _bits(g)
    if g.n > exact_cap:
        best = 1
        for s in range(g.n):
            cand = nbr[s]
            size = 1
            while cand:
                v = max(_iter_bits(cand), key=lambda x: bin(nbr[x] & cand).count("1"))
                size += 1
                cand &= nbr[v]
            best = max(best, size)
        return best, False
    best = [0]

    def expand(size, cand, excl):
        if not cand and not excl:
            best[0] = max(best[0], size)
            return
        if size + bin(cand).count("1") <= best[0]:
            return
        pivot = max(_iter_bits(cand | excl), key=lambda u: bin(cand & nbr[u]).count("1"))
        for v in _iter_bits(cand & ~nbr[pivot]):
            expand(size + 1, cand & nbr[v], excl & nbr[v])
            cand &= ~(1 << v)
            excl |= 1 << v

    expand(0, (1 << g.n) - 1, 0)
    return best[0], True


def _iter_bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def chromatic_number(g: Graph, exact_cap: int = CHROMATIC_EXACT_CAP) -> tuple[int, bool]:
    """(chi, exact).  Backtracking colouring in DSATUR order up to
    ``exact_cap`` vertices; above it the clique bound (a lower bound)."""
    if g.n == 0:
        return 0, True
    if g.n > exact_cap:
        return clique_number(g)[0], False
    upper = degeneracy_coloring(g).num_colors
    lower = clique_number(g)[0]
    for k in range(lower, upper):
        if _colorable(g, k):
            return k, True
    return upper, True


def _colorable(g: Graph, k: int) -> bool:
    colors = [-1] * g.n

    def pick():
        best, key = -1, None
        for v in range(g.n):
            if colors[v] == -1:
                sat = len({colors[w] for w in g.adj[v] if colors[w] >= 0})
                kv = (sat, len(g.adj[v]))
                if key is None or kv > key:
                    best, key = v, kv
        return best

    def rec(done):
        if done == g.n:
            return True
        v = pick()
        used = {colors[w] for w in g.adj[v]}
        top = max(colors) + 1  # colours beyond the first new one are symmetric
        for c in range(min(k, top + 1)):
            if c not in used:
                colors[v] = c
                if rec(done + 1):
                    return True
        colors[v] = -1
        return False

    return rec(0)


# -- slot lower bound ------------------------------------------------------------------


def slot_lower_bound(target: Graph, d: int) -> int:
    """Slots every schedule for ``target`` needs.

    d >= 2: max(ceil log2 n, omega - 1, chi - 1).  d = 1: additionally
    ceil((diameter + 1) / 2) and the maximum degree, both valid for trees.
    """
    n = target.n
    bound = _ceil_log2(n)
    if d >= 2:
        omega, _ = clique_number(target)
        chi, _ = chromatic_number(target)
        return max(bound, omega - 1, chi - 1)
    if n > 1 and is_connected(target):
        far = bfs_distances(target.adj, 0)
        a = max(far, key=lambda v: (far[v], -v))
        diam = max(bfs_distances(target.adj, a).values())
        bound = max(bound, -(-(diam + 1) // 2), target.max_degree())
    return bound


# -- binomial tree and edge difference ---------------------------------------------------


def binomial_tree(delta: int) -> Graph:
    """Graph grown after ``delta`` slots when every vertex spawns each slot.

    Label j has parent j - 2^(bitlen(j)-1) and is born in slot bitlen(j).
    """
    if delta < 0:
        raise ValueError("delta must be non-negative")
    n = 1 << delta
    return Graph(n, ((binomial_parent(j), j) for j in range(1, n)))


def binomial_schedule(delta: int) -> Schedule:
    """The zero-excess schedule growing :func:`binomial_tree`."""
    slots = []
    for t in range(1, delta + 1):
        gens = tuple(Generation(binomial_parent(j), j, (binomial_parent(j),)) for j in range(1 << (t - 1), 1 << t))
        slots.append(Slot(gens))
    return Schedule(2, 0, tuple(slots))


@dataclass(frozen=True)
class EdgeDifferenceResult:
    """min over bijections b of ED_b; ``witness[j]`` is the target vertex of
    binomial label j.  When ``exact`` is false the value is only an upper
    bound on the minimum and certifies nothing."""

    value: int
    witness: tuple[int, ...]
    exact: bool


def edge_difference(target: Graph, witness) -> int:
    return sum(1 for j in range(1, target.n) if not target.has_edge(witness[binomial_parent(j)], witness[j]))


def min_edge_difference(target: Graph, exact_cap: int = ED_EXACT_CAP, restarts: int = 32, seed: int = 0) -> EdgeDifferenceResult:
    """Exact branch and bound up to ``exact_cap`` vertices, otherwise a
    steepest-descent swap search with random restarts."""
    n = target.n
    if n < 1 or n & (n - 1):
        raise UnsupportedSize(f"edge difference needs n to be a power of two, got {n}")
    parent = [binomial_parent(j) for j in range(n)]
    if n <= exact_cap:
        value, witness = _k.edge_difference_search(n, parent, _bits(target), n)
        return EdgeDifferenceResult(value, tuple(witness), True)
    rng = random.Random(seed)
    best = None
    for _ in range(restarts):
        b = list(range(n))
        rng.shuffle(b)
        cost = edge_difference(target, b)
        while True:
            step = None
            for i in range(n):
                for j in range(i + 1, n):
                    b[i], b[j] = b[j], b[i]
                    c = edge_difference(target, b)
                    b[i], b[j] = b[j], b[i]
                    if c < cost and (step is None or c < step[0]):
                        step = (c, i, j)
            if step is None:
                break
            cost, i, j = step
            b[i], b[j] = b[j], b[i]
        if best is None or cost < best[0]:
            best = (cost, tuple(b))
    return EdgeDifferenceResult(best[0], best[1], False)


# -- dense families ------------------------------------------------------------------


def g_full_schedule(delta: int) -> Schedule:
    """Every vertex spawns each slot and the child takes every edge allowed
    at d = 2: its parent and all of the parent's neighbours."""
    if delta < 0:
        raise ValueError("delta must be non-negative")
    adj: dict[int, set[int]] = {0: set()}
    slots = []
    for t in range(1, delta + 1):
        gens = []
        for j in range(1 << (t - 1), 1 << t):
            p = binomial_parent(j)
            gens.append(Generation(p, j, adj[p] | {p}))
        for g in gens:
            adj[g.child] = set(g.activated)
            for w in g.activated:
                adj[w].add(g.child)
        slots.append(Slot(tuple(gens)))
    return Schedule(2, 0, tuple(slots))


def g_full(delta: int) -> Graph:
    s = g_full_schedule(delta)
    return Graph(1 << delta, ((g.child, w) for slot in s.slots for g in slot.generations for w in g.activated))


def g_full_degree_sum(delta: int) -> int:
    """Recurrence f(1) = 0, f(2) = 2, f(2x) = 3 f(x) + 2x."""
    f, x = 0, 1
    for _ in range(delta):
        f = 3 * f + 2 * x if x > 1 else 2
        x *= 2
    return f


def g_bipart(delta: int) -> Graph:
    """Parts a_i = i and b_i = N + i over the N vertices of g_full(delta - 1);
    a_i b_j is an edge when u_i u_j is or i = j."""
    if delta < 1:
        raise ValueError("delta must be at least 1")
    base = g_full(delta - 1)
    N = base.n
    edges = [(i, N + i) for i in range(N)]
    for u, v in base.edges:
        edges.append((u, N + v))
        edges.append((v, N + u))
    return Graph(2 * N, edges)


def hardness_gadget(g: Graph) -> Graph:
    """g on 0..n-1 joined completely to a clique on n..2n-1."""
    n = g.n
    edges = list(g.edges)
    edges += [(n + i, n + j) for i in range(n) for j in range(i + 1, n)]
    edges += [(i, n + j) for i in range(n) for j in range(n)]
    return Graph(2 * n, edges)


__all__ = [
    "EdgeDifferenceResult",
    "binomial_schedule",
    "binomial_tree",
    "chromatic_number",
    "clique_number",
    "edge_difference",
    "g_bipart",
    "g_full",
    "g_full_degree_sum",
    "g_full_schedule",
    "hardness_gadget",
    "min_edge_difference",
    "slot_lower_bound",
]

