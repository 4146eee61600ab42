"""Zero-excess schedules.

A vertex v is a candidate when some other w has N[v] inside N[w]; w is then
a candidate parent.  Peeling candidates backwards and replaying the peel
forwards gives a d=2 schedule that never activates a non-target edge.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import CapExceeded, GraphError, UnsupportedSize
from .graph import Graph, is_connected
from .kernels import TwoSatFormula, max_matching, two_sat
from .schedule import Generation, Schedule, Slot

DEFAULT_ELL_CAP = 3


@dataclass(frozen=True)
class CandidateInfo:
    vertex: int
    parents: frozenset[int]

    @property
    def is_candidate(self) -> bool:
        return bool(self.parents)


def _parents(adj, v: int, alive) -> set[int]:
    """Candidate parents of v among ``alive``; adj maps to neighbour sets."""
    nv = adj[v] & alive
    out = set()
    for w in nv:
        # N[v] within N[w]: every other neighbour of v is a neighbour of w
        if nv <= (adj[w] & alive) | {w}:
            out.add(w)
    return out


def candidate_set(g: Graph) -> list[CandidateInfo]:
    """All candidates of ``g`` with all their candidate parents, by vertex id."""
    alive = frozenset(range(g.n))
    out = []
    for v in range(g.n):
        ps = _parents(g.adj, v, alive)
        if ps:
            out.append(CandidateInfo(v, frozenset(ps)))
    return out


def _require_connected(g: Graph) -> None:
    if g.n < 1 or not is_connected(g):
        raise GraphError("target graph is disconnected")


def elimination_schedule(target: Graph) -> Schedule | None:
    """n-1 slot zero-excess schedule, or None when no candidate elimination
    ordering exists.  Always removes the smallest candidate (smallest parent)."""
    _require_connected(target)
    alive = set(range(target.n))
    peel = []
    while len(alive) > 1:
        for v in sorted(alive):
            ps = _parents(target.adj, v, alive)
            if ps:
                p = min(ps)
                break
        else:
            return None
        alive.discard(v)
        peel.append(Generation(p, v, (target.adj[v] & alive)))
    (root,) = alive
    return Schedule(2, root, tuple(Slot((g,)) for g in reversed(peel)))


def constant_excess_schedule(target: Graph, ell: int, cap: int = DEFAULT_ELL_CAP) -> Schedule | None:
    """n-1 slots and exactly ``ell`` excess edges, or None.

    Tries every set of ``ell`` non-edges in lexicographic order; the first
    supergraph with an elimination ordering wins and the added edges are
    deleted in the last slot.
    """
    if ell < 0:
        raise ValueError("ell must be non-negative")
    if ell > cap:
        raise CapExceeded(f"ell={ell} exceeds cap {cap}")
    _require_connected(target)
    if ell == 0:
        return elimination_schedule(target)
    for extra in itertools.combinations(target.non_edges(), ell):
        s = elimination_schedule(target.with_edges(extra))
        if s is not None:
            slots = list(s.slots)
            slots[-1] = Slot(slots[-1].generations, extra)
            return s.with_slots(slots)
    return None


def _log2_exact(n: int) -> int:
    if n < 1 or n & (n - 1):
        raise UnsupportedSize(f"fast_growth needs n to be a power of two, got {n}")
    return n.bit_length() - 1


def _peel_level(target: Graph, alive: set[int]) -> list[Generation] | None:
    """One backward level: half of ``alive`` leaves, each matched to a parent.

    The perfect matching is taken in the candidate-parent graph H (edge cw
    when N[c] lies in N[w]); the last slot of any schedule is such a
    matching.  2-SAT then picks the child side of every matched edge so that
    the children form an independent set.
    """
    parents = {v: _parents(target.adj, v, alive) for v in alive}
    h = Graph(target.n, ((c, w) for c in alive for w in parents[c]))
    m = max_matching(h)
    if 2 * len(m) != len(alive):
        return None
    pairs = sorted(m.pairs)
    index = {}
    f = TwoSatFormula(len(pairs))
    for i, (u, v) in enumerate(pairs):
        index[u] = (i, False)  # u is in L iff x_i is false
        index[v] = (i, True)   # v is in L iff x_i is true
        u_ok = v in parents[u]
        v_ok = u in parents[v]
        if not u_ok:
            f.unit((i, True))
        elif not v_ok:
            f.unit((i, False))
    for a in alive:
        for b in target.adj[a]:
            if a < b and b in alive:
                ia, sa = index[a]
                ib, sb = index[b]
                if ia != ib:
                    # a and b must not both leave: forbid (side(a) and side(b))
                    f.add((ia, not sa), (ib, not sb))
    sol = two_sat(f)
    if sol is None:
        return None
    gens = []
    rest = set(alive)
    for i, (u, v) in enumerate(pairs):
        child, par = (v, u) if sol[i] else (u, v)
        rest.discard(child)
        gens.append((par, child))
    out = []
    for par, child in gens:
        act = target.adj[child] & rest
        # re-check the peel: independence and N[child] within N[par]
        if par not in act or not act <= (target.adj[par] & rest) | {par}:
            raise AssertionError("fast_growth produced an illegal peel level")
        out.append(Generation(par, child, act))
    return out


def fast_growth(target: Graph) -> Schedule | None:
    """log2 n slot zero-excess schedule via perfect matching and 2-SAT per
    level, or None when none exists."""
    levels = _log2_exact(target.n)
    _require_connected(target)
    alive = set(range(target.n))
    slots = []
    for _ in range(levels):
        gens = _peel_level(target, alive)
        if gens is None:
            return None
        for g in gens:
            alive.discard(g.child)
        slots.append(Slot(tuple(gens)))
    (root,) = alive
    return Schedule(2, root, tuple(reversed(slots)))
