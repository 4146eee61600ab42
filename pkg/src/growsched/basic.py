"""Closed-form schedule constructors.

Clique baselines, logarithmic path and star schedules, the optimal d=1
trimming schedule for trees, and the star-spanning (d=4) and
clique-maintaining (d=3) schedules.
"""

from __future__ import annotations

from itertools import repeat

from .errors import GraphError
from .graph import Graph, is_connected, is_tree
from .schedule import Generation, Schedule, Slot


def _require_connected(g: Graph) -> None:
    if g.n < 1:
        raise GraphError("target must have at least one vertex")
    if not is_connected(g):
        raise GraphError("target graph is disconnected")


def clique_schedule(target: Graph) -> Schedule:
    """Grow K_n one vertex per slot from vertex 0, then trim to the target."""
    _require_connected(target)
    n = target.n
    slots = []
    for t in range(1, n):
        slots.append(Slot((Generation(0, t, frozenset(range(t))),)))
    if slots:
        extra = tuple(target.non_edges())
        slots[-1] = Slot(slots[-1].generations, extra)
    return Schedule(2, 0, tuple(slots))


def improved_clique_schedule(target: Graph) -> Schedule:
    """Initiator at a max-degree vertex c; every child is wired to c and its
    target neighbours so far.  Only the c-edges absent from the target are
    excess, n-1-deg(c) of them."""
    _require_connected(target)
    n = target.n
    c = max(range(n), key=lambda v: (target.degree(v), -v))
    born = {c}
    slots = []
    for v in range(n):
        if v == c:
            continue
        act = frozenset({c} | (target.adj[v] & born))
        slots.append(Slot((Generation(c, v, act),)))
        born.add(v)
    if slots:
        extra = tuple((min(c, v), max(c, v)) for v in range(n) if v != c and not target.has_edge(c, v))
        slots[-1] = Slot(slots[-1].generations, extra)
    return Schedule(2, c, tuple(slots))


def _halving_levels(n: int) -> list[list[int]]:
    """levels[t] = labels present after slot t; each level keeps every other label."""
    levels = [list(range(n))]
    while len(levels[-1]) > 1:
        levels.append(levels[-1][::2])
    levels.reverse()
    return levels


def path_schedule(n: int) -> Schedule:
    """Grow the path 0-1-...-(n-1) in ceil(log2 n) slots.

    Working backwards, every other vertex is removed.  Forwards, a vertex x
    born between p and its successor q is wired to both; edge pq is then
    dropped in the same slot.
    """
    if n < 1:
        raise GraphError("n must be positive")
    levels = _halving_levels(n)
    slots = []
    for cur in levels[1:]:
        ps, xs, qs = cur[0::2], cur[1::2], cur[2::2]
        acts = list(zip(ps, qs))
        if len(xs) > len(qs):
            acts.append((ps[len(qs)],))
        dels = tuple(zip(ps, qs))
        slots.append(Slot.presorted(Generation.many(ps, xs, acts), dels))
    return Schedule(2, 0, tuple(slots))


def star_schedule(n: int) -> Schedule:
    """Grow K_{1,n-1} centred at 0 in ceil(log2 n) slots.

    In slot t vertex u spawns u + 2^(t-1).  Children of leaves are wired to
    the centre and lose their parent edge in the same slot.
    """
    if n < 1:
        raise GraphError("n must be positive")
    slots = []
    size = 1
    while size < n:
        top = min(2 * size, n)  # children are size..top-1
        parents = range(top - size)
        acts = [(0,)] + list(zip(repeat(0, top - size - 1), range(1, top - size)))
        dels = tuple(zip(range(1, top - size), range(size + 1, top)))
        slots.append(Slot.presorted(Generation.many(parents, range(size, top), acts), dels))
        size *= 2
    return Schedule(2, 0, tuple(slots))


def trimming_schedule(target: Graph) -> Schedule:
    """Shortest d=1 schedule for a tree.

    Backwards: in each round every leaf (ascending order) whose neighbour is
    not yet claimed claims it as parent and is removed.
    """
    if not is_tree(target):
        raise GraphError("trimming needs a tree")
    adj = {v: set(target.adj[v]) for v in range(target.n)}
    rounds = []
    while len(adj) > 1:
        leaves = sorted(v for v, ws in adj.items() if len(ws) == 1)
        marked: set[int] = set()
        removed: set[int] = set()
        gens = []
        for v in leaves:
            if v in marked:
                continue
            (p,) = adj[v]
            if p in marked or p in removed:
                continue
            marked.add(p)
            removed.add(v)
            gens.append(Generation(p, v, frozenset((p,))))
        for g in gens:
            adj[g.parent].discard(g.child)
            del adj[g.child]
        rounds.append(Slot(tuple(gens)))
    (root,) = adj
    return Schedule(1, root, tuple(reversed(rounds)))


def _independent_peel(target: Graph, keep: int | None = None) -> tuple[int, list[list[tuple[int, int]]]]:
    """Backward peel: each round removes an independent set of at most half
    the remaining vertices and pairs each removed vertex with a distinct
    survivor.  ``keep`` is never removed and ends as the initiator.

    Returns the initiator and the forward list of (parent, child) rounds.
    """
    alive = set(range(target.n))
    rounds = []
    while len(alive) > 1:
        cap = len(alive) // 2
        deg = {v: len(target.adj[v] & alive) for v in alive}
        order = sorted(alive, key=lambda v: (deg[v], v))
        peel: list[int] = []
        blocked: set[int] = set()
        for v in order:
            if len(peel) == cap:
                break
            if v == keep or v in blocked:
                continue
            peel.append(v)
            blocked |= target.adj[v]
        if len(peel) < cap:
            side = _bipartite_side(target, alive, keep, cap)
            if side is not None:
                peel = side
        peel.sort()
        rest = sorted(alive - set(peel))
        rounds.append(list(zip(rest, peel)))
        alive -= set(peel)
    (root,) = alive
    return root, rounds[::-1]


def _bipartite_side(target: Graph, alive: set[int], keep: int | None, cap: int) -> list[int] | None:
    """``cap`` vertices from one colour class of the graph induced on
    ``alive`` (avoiding ``keep``), or None if it is not bipartite."""
    color: dict[int, int] = {}
    for s in sorted(alive):
        if s in color:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for w in target.adj[u] & alive:
                if w not in color:
                    color[w] = 1 - color[u]
                    stack.append(w)
                elif color[w] == color[u]:
                    return None
    for c in (0, 1):
        side = sorted(v for v in alive if color[v] == c and v != keep)
        if len(side) >= cap:
            return side[:cap]
    return None  # pragma: no cover - one side always has cap vertices


def star_spanning_schedule(target: Graph) -> Schedule:
    """d=4 schedule keeping a spanning star around a max-degree centre.

    Each child is wired to its parent, the centre and all earlier target
    neighbours; the diameter-2 star puts everything within distance 3 of
    any parent.  Non-target edges go in the last slot.
    """
    _require_connected(target)
    c = max(range(target.n), key=lambda v: (target.degree(v), -v))
    root, rounds = _independent_peel(target, keep=c)
    return _wire_rounds(target, root, rounds, d=4, center=c)


def clique_maintaining_schedule(target: Graph) -> Schedule:
    """d=3 schedule keeping the grown graph a clique until the last slot."""
    _require_connected(target)
    root, rounds = _independent_peel(target)
    return _wire_rounds(target, root, rounds, d=3, center=None)


def _wire_rounds(target: Graph, root: int, rounds, d: int, center: int | None) -> Schedule:
    born = {root}
    slots = []
    excess = []
    for pairs in rounds:
        gens = []
        for p, c in pairs:
            if center is None:
                act = set(born)
            else:
                act = {p, center} | (target.adj[c] & born)
            gens.append(Generation(p, c, frozenset(act)))
            excess.extend((min(c, w), max(c, w)) for w in act if not target.has_edge(c, w))
        born.update(c for _, c in pairs)
        slots.append(Slot(tuple(gens)))
    if slots:
        slots[-1] = Slot(slots[-1].generations, tuple(excess))
    return Schedule(d, root, tuple(slots))
