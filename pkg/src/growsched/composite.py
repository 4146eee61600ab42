"""Polylogarithmic schedules for trees and colouring-driven schedules.

Trees are taken apart by alternating path cuts (degree-2 chains become a
single shortcut edge) and leaf cuts, then regrown by replaying the phases
backwards with path and star sub-schedules running side by side.  Coloured
graphs are grown one colour class at a time by star schedules around one
initiator.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import GraphError
from .graph import Coloring, Graph, degeneracy_coloring, is_connected, is_tree
from .schedule import Generation, Schedule, Slot, normalize_deletions

PATH_CUT = "PATH_CUT"
LEAF_CUT = "LEAF_CUT"


@dataclass(frozen=True)
class Phase:
    """One decomposition step.

    PATH_CUT removals are ``(start, end, internal)`` with ``internal``
    ordered from ``start``; the regrowth of each path is started by
    ``start``, and these are distinct within a phase.  LEAF_CUT removals
    are ``(parent, leaves)``.
    """

    kind: str
    removals: tuple


def _require_tree(g: Graph) -> None:
    if not is_tree(g):
        raise GraphError("target must be a tree")


def _depths(adj: dict[int, set[int]], root: int) -> dict[int, int]:
    depth = {root: 0}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in depth:
                depth[w] = depth[u] + 1
                queue.append(w)
    return depth


def _path_cut(adj: dict[int, set[int]]) -> list[tuple[int, int, tuple[int, ...]]]:
    inner = sorted(v for v, ws in adj.items() if len(ws) == 2)
    if not inner:
        return []
    depth = _depths(adj, min(v for v, ws in adj.items() if len(ws) != 2))
    seen: set[int] = set()
    paths = []
    for v in inner:
        if v in seen:
            continue
        seen.add(v)
        sides = []
        for start in sorted(adj[v]):
            prev, cur = v, start
            walk = []
            while len(adj[cur]) == 2:
                walk.append(cur)
                seen.add(cur)
                (nxt,) = adj[cur] - {prev}
                prev, cur = cur, nxt
            sides.append((cur, walk))
        (a, wa), (b, wb) = sides
        seq = [a] + wa[::-1] + [v] + wb + [b]
        # start from the deeper end: every vertex is the deeper end of at
        # most one path, so starts are distinct
        if depth[a] < depth[b]:
            seq.reverse()
        paths.append((seq[0], seq[-1], tuple(seq[1:-1])))
    for a, b, mid in paths:
        for x in mid:
            for w in adj.pop(x):
                if w in adj:
                    adj[w].discard(x)
        adj[a].add(b)
        adj[b].add(a)
    return sorted(paths)


def _leaf_cut(adj: dict[int, set[int]]) -> list[tuple[int, tuple[int, ...]]]:
    if len(adj) == 2:
        u, w = sorted(adj)
        groups = {u: [w]}
    else:
        groups: dict[int, list[int]] = {}
        for v, ws in adj.items():
            if len(ws) == 1:
                (p,) = ws
                groups.setdefault(p, []).append(v)
    for p, leaves in groups.items():
        for v in leaves:
            del adj[v]
            adj[p].discard(v)
    return sorted((p, tuple(sorted(ls))) for p, ls in groups.items())


def tree_decompose(target: Graph) -> list[Phase]:
    """Alternate path cuts and leaf cuts until one vertex is left; phases
    that would remove nothing are skipped."""
    _require_tree(target)
    adj = {v: set(target.adj[v]) for v in range(target.n)}
    phases = []
    while len(adj) > 1:
        paths = _path_cut(adj)
        if paths:
            phases.append(Phase(PATH_CUT, tuple(paths)))
        if len(adj) > 1:
            phases.append(Phase(LEAF_CUT, tuple(_leaf_cut(adj))))
    return phases


def _path_regrowth(start: int, end: int, internal) -> list[tuple[list[Generation], list]]:
    """Fill the chain between two adjacent vertices by halving gaps.

    The vertex born into gap (p, q) comes from p, joins p and q, and the
    edge pq goes at the end of that slot.
    """
    seq = [start, *internal, end]
    present = [0, len(seq) - 1]
    out = []
    while len(present) < len(seq):
        gens, dels, nxt = [], [], []
        for i, j in zip(present, present[1:]):
            nxt.append(i)
            if j - i > 1:
                x = (i + j) // 2
                p, q = seq[i], seq[j]
                gens.append(Generation(p, seq[x], (p, q)))
                dels.append((p, q))
                nxt.append(x)
        nxt.append(present[-1])
        present = nxt
        out.append((gens, dels))
    return out


def _star_regrowth(center: int, leaves) -> list[tuple[list[Generation], list]]:
    """Star schedule around ``center``: children of leaves also join the
    centre and drop their parent edge in the same slot."""
    members = [center, *leaves]
    out = []
    size = 1
    while size < len(members):
        gens, dels = [], []
        for u in range(size):
            c = u + size
            if c >= len(members):
                break
            if u == 0:
                gens.append(Generation(center, members[c], (center,)))
            else:
                gens.append(Generation(members[u], members[c], (members[u], center)))
                dels.append((members[u], members[c]))
        out.append((gens, dels))
        size *= 2
    return out


def tree_schedule(target: Graph) -> Schedule:
    """d=2 schedule for a tree in O(log^2 n) slots with O(n) excess.

    Phases are replayed last to first; within a phase all path (or star)
    regrowths share slot indices.  Shortcut edges count as excess.
    """
    phases = tree_decompose(target)
    survivor = set(range(target.n))
    for ph in phases:
        if ph.kind == PATH_CUT:
            for _, _, mid in ph.removals:
                survivor.difference_update(mid)
        else:
            for _, leaves in ph.removals:
                survivor.difference_update(leaves)
    (root,) = survivor
    slots: list[Slot] = []
    for ph in reversed(phases):
        if ph.kind == PATH_CUT:
            subs = [_path_regrowth(a, b, mid) for a, b, mid in ph.removals]
        else:
            subs = [_star_regrowth(p, leaves) for p, leaves in ph.removals]
        for r in range(max(len(s) for s in subs)):
            gens, dels = [], []
            for s in subs:
                if r < len(s):
                    gens.extend(s[r][0])
                    dels.extend(s[r][1])
            slots.append(Slot(tuple(gens), tuple(dels)))
    return Schedule(2, root, tuple(slots))


# -- colouring-driven schedules ----------------------------------------------------------


def _binomial_parent(m: int) -> int:
    return m - (1 << (m.bit_length() - 1))


def colored_schedule(target: Graph, coloring: Coloring) -> Schedule:
    """Grow one colour class after another with star schedules from a
    single initiator, smallest vertex of the largest class.

    Local index m of a class (0 is the initiator) is born in round
    bitlen(m) from m - 2^(bitlen(m)-1).  A new vertex joins its parent, the
    initiator, every earlier-class neighbour and every earlier-class
    neighbour of its descendants, so later children always find their
    earlier-class neighbours next to their parent.  All non-target edges
    are then retimed by normalize_deletions.
    """
    if not is_connected(target) or target.n < 1:
        raise GraphError("target graph is disconnected")
    if not coloring.is_proper(target):
        raise GraphError("colouring is not proper for the target")
    classes = coloring.classes()
    order = sorted(classes, key=lambda c: (-len(classes[c]), c))
    u0 = min(classes[order[0]])
    grown = {u0}
    slots: list[Slot] = []
    excess = set()
    for c in order:
        members = [u0] + [v for v in sorted(classes[c]) if v != u0]
        size = len(members)
        # reach[m]: earlier-class neighbours of m and of all its descendants
        reach = [set(target.adj[v] & grown) for v in members]
        for m in range(size - 1, 0, -1):
            reach[_binomial_parent(m)] |= reach[m]
        rnd = 1
        while (1 << (rnd - 1)) < size:
            gens = []
            for m in range(1 << (rnd - 1), min(1 << rnd, size)):
                p = members[_binomial_parent(m)]
                v = members[m]
                act = reach[m] | {p, u0}
                gens.append(Generation(p, v, act))
                excess.update((min(v, w), max(v, w)) for w in act if not target.has_edge(v, w))
            slots.append(Slot(tuple(gens)))
            rnd += 1
        grown.update(members)
    if slots:
        slots[-1] = Slot(slots[-1].generations, tuple(excess))
    return normalize_deletions(Schedule(2, u0, tuple(slots)), target)


def planar_schedule(target: Graph) -> Schedule:
    """Colour by greedy over the reversed degeneracy ordering (at most k+1
    colours, six on planar graphs), then :func:`colored_schedule`."""
    if target.n < 1 or not is_connected(target):
        raise GraphError("target graph is disconnected")
    return colored_schedule(target, degeneracy_coloring(target))
