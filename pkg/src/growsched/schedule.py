"""Schedule data model, simulator, validator and deletion retiming.

A schedule starts from a lone initiator.  In every slot each existing vertex
may give birth to at most one child; the child is wired to its parent and to
any vertex within distance ``d - 1`` of the parent in the pre-slot graph.
Edge deletions happen at the end of a slot, one edge at a time in sorted
order, and none of them may disconnect the graph.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import partial
from operator import itemgetter, sub
from typing import Callable, Iterable, Iterator, Mapping

from ._backend import simcore
from .errors import ScheduleError, TargetMismatch
from .graph import Edge, Graph, bfs_distances, norm_edge


class Generation(tuple):
    """``parent`` gives birth to ``child``; edges ``child``-``w`` for w in ``activated``.

    A plain 3-tuple underneath, with ``activated`` kept as a sorted tuple of
    distinct labels.  Tuples of ints drop out of cyclic garbage collection,
    which keeps large schedules cheap to hold.
    """

    __slots__ = ()

    def __new__(cls, parent: int, child: int, activated: Iterable[int]):
        return tuple.__new__(cls, (parent, child, tuple(sorted(set(activated)))))

    parent = property(itemgetter(0))
    child = property(itemgetter(1))
    activated = property(itemgetter(2))

    def __repr__(self) -> str:
        return f"Generation(parent={self[0]}, child={self[1]}, activated={list(self[2])})"

    def __getnewargs__(self):
        return tuple(self)

    @classmethod
    def raw(cls, parent: int, child: int, activated: tuple) -> "Generation":
        """Constructor for hot loops; ``activated`` must already be a sorted
        tuple of distinct labels."""
        return tuple.__new__(cls, (parent, child, activated))

    @classmethod
    def many(cls, parents: Iterable[int], children: Iterable[int], activated: Iterable[tuple]) -> tuple:
        """Bulk :meth:`raw` over parallel iterables, returned as a tuple."""
        return tuple(map(partial(tuple.__new__, cls), zip(parents, children, activated)))


_gen_key = itemgetter(0, 1)


@dataclass(frozen=True)
class Slot:
    generations: tuple[Generation, ...] = ()
    deletions: tuple[Edge, ...] = ()

    def __post_init__(self):
        gens = tuple(sorted(self.generations, key=_gen_key))
        dels = tuple(sorted({norm_edge(e[0], e[1]) for e in self.deletions}))
        object.__setattr__(self, "generations", gens)
        object.__setattr__(self, "deletions", dels)

    @property
    def children(self) -> list[int]:
        return [g.child for g in self.generations]

    @classmethod
    def presorted(cls, generations: tuple, deletions: tuple) -> "Slot":
        """Skip normalization; callers guarantee sorted, normalized input."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "generations", generations)
        object.__setattr__(obj, "deletions", deletions)
        return obj


@dataclass(frozen=True)
class Schedule:
    d: int
    initiator: int
    slots: tuple[Slot, ...] = ()

    def __post_init__(self):
        if not isinstance(self.slots, tuple):
            object.__setattr__(self, "slots", tuple(self.slots))

    @property
    def k(self) -> int:
        return len(self.slots)

    @property
    def n_final(self) -> int:
        return 1 + sum(len(s.generations) for s in self.slots)

    @property
    def excess_edges(self) -> int:
        return sum(len(s.deletions) for s in self.slots)

    def with_slots(self, slots: Iterable[Slot]) -> "Schedule":
        return Schedule(self.d, self.initiator, tuple(slots))


@dataclass(frozen=True)
class Metrics:
    slots: int
    excess_edges: int
    max_excess_lifetime: int

    def as_dict(self) -> dict:
        return {
            "slots": self.slots,
            "excess_edges": self.excess_edges,
            "max_excess_lifetime": self.max_excess_lifetime,
        }


@dataclass(frozen=True)
class Instance:
    """One snapshot G_t: a vertex set plus adjacency keyed by vertex label."""

    vertices: frozenset[int]
    adj: Mapping[int, frozenset[int]]

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def edges(self) -> frozenset[Edge]:
        return frozenset(norm_edge(u, w) for u, ws in self.adj.items() for w in ws)

    def as_graph(self) -> Graph:
        """Dense Graph; requires the labels to be exactly 0..n-1."""
        if self.vertices != frozenset(range(len(self.vertices))):
            raise ValueError("instance labels are not 0..n-1")
        return Graph(len(self.vertices), self.edges)


@dataclass
class Trace:
    """Compact record of a simulation.

    Every edge is activated exactly once (at the birth of its younger
    endpoint) and deleted at most once, so the whole run is captured by
    per-vertex birth data and per-edge activation/deletion slots.
    ``instance(t)`` rebuilds G_t on demand.
    """

    d: int
    initiator: int
    k: int
    birth: dict[int, int]
    parent: dict[int, int | None]
    activation: dict[Edge, int]
    deletion: dict[Edge, int]
    slot_children: list[list[int]] = field(default_factory=list)

    def __len__(self) -> int:
        return self.k + 1

    def instance(self, t: int) -> Instance:
        if not 0 <= t <= self.k:
            raise IndexError(t)
        verts = frozenset(v for v, b in self.birth.items() if b <= t)
        adj: dict[int, set[int]] = {v: set() for v in verts}
        for e, a in self.activation.items():
            if a <= t and self.deletion.get(e, t + 1) > t:
                adj[e[0]].add(e[1])
                adj[e[1]].add(e[0])
        return Instance(verts, {v: frozenset(s) for v, s in adj.items()})

    @property
    def instances(self) -> list[Instance]:
        return [self.instance(t) for t in range(self.k + 1)]

    @property
    def final(self) -> Instance:
        return self.instance(self.k)

    def final_edges(self) -> set[Edge]:
        return self.activation.keys() - self.deletion.keys()

    def metrics(self) -> Metrics:
        born = map(self.activation.__getitem__, self.deletion)
        life = max(map(sub, self.deletion.values(), born), default=0)
        return Metrics(self.k, len(self.deletion), life)

    def replay(self) -> Iterator[tuple[int, dict[int, set[int]]]]:
        """Yield ``(t, adjacency)`` for t = 0..k, mutating one dict in place."""
        acts: list[list[Edge]] = [[] for _ in range(self.k + 1)]
        dels: list[list[Edge]] = [[] for _ in range(self.k + 1)]
        for e, a in self.activation.items():
            acts[a].append(e)
        for e, s in self.deletion.items():
            dels[s].append(e)
        adj: dict[int, set[int]] = {self.initiator: set()}
        for t in range(self.k + 1):
            if t:
                for c in self.slot_children[t - 1]:
                    adj[c] = set()
            for u, w in acts[t]:
                adj[u].add(w)
                adj[w].add(u)
            for u, w in dels[t]:
                adj[u].discard(w)
                adj[w].discard(u)
            yield t, adj

    def ancestors(self, v: int) -> list[int]:
        """Birth path of ``v`` without ``v`` itself, nearest parent first."""
        out = []
        p = self.parent[v]
        while p is not None:
            out.append(p)
            p = self.parent[p]
        return out


# Callables invoked with every Trace that simulate() produces successfully.
# Test suites hook in here to run check_properties on all traces.
trace_listeners: list[Callable[[Trace], None]] = []


# -- simulation ----------------------------------------------------------------


def _pairs(s: Schedule):
    return [(slot.generations, slot.deletions) for slot in s.slots]


def simulate(s: Schedule, notify: bool = True) -> Trace:
    """Run ``s`` slot by slot, enforcing every growth rule."""
    if s.d < 1:
        raise ScheduleError(ScheduleError.ILLEGAL_ACTIVATION, 0, s.d, "d must be at least 1")
    err, birth, parent, activation, deletion, kids = simcore.run(s.d, s.initiator, _pairs(s))
    if err is not None:
        raise ScheduleError(*err)
    tr = Trace(s.d, s.initiator, s.k, birth, parent, activation, deletion, kids)
    if notify:
        for fn in trace_listeners:
            fn(tr)
    return tr


def _compare(k: int, verts: set[int], have: set[Edge], target: Graph) -> None:
    if isinstance(verts, range) and verts == range(target.n):
        verts = want = None
    else:
        verts = set(verts)
        want = set(range(target.n))
    if verts != want:
        extra = sorted(verts - want)[:10]
        lost = sorted(want - verts)[:10]
        raise TargetMismatch(k, [], [], f"vertex sets differ: missing {lost}, unexpected {extra}")
    if have != target.edges:
        raise TargetMismatch(k, target.edges - have, have - target.edges)


def compare_to_target(tr: Trace, target: Graph) -> None:
    """Raise :class:`TargetMismatch` unless the final instance equals ``target``."""
    _compare(tr.k, set(tr.birth), tr.final_edges(), target)


class _DeferredTrace(Trace):
    """Trace of a schedule that already ran cleanly; the per-vertex records
    are rebuilt by a full simulation the first time one is read."""

    _LAZY = frozenset(("birth", "parent", "activation", "deletion", "slot_children"))

    def __init__(self, s: Schedule):
        self.d, self.initiator, self.k = s.d, s.initiator, s.k
        self._schedule = s

    def __getattr__(self, name):
        if name not in self._LAZY or "_schedule" not in self.__dict__:
            raise AttributeError(name)
        s = self.__dict__.pop("_schedule")
        _, self.birth, self.parent, self.activation, self.deletion, self.slot_children = simcore.run(
            s.d, s.initiator, _pairs(s)
        )
        return getattr(self, name)


def validate(s: Schedule, target: Graph) -> Metrics:
    """Simulate ``s`` and require the final graph to equal ``target`` exactly."""
    if s.d < 1:
        raise ScheduleError(ScheduleError.ILLEGAL_ACTIVATION, 0, s.d, "d must be at least 1")
    err, verts, final, deleted, life = simcore.run_final(s.d, s.initiator, _pairs(s))
    if err is not None:
        raise ScheduleError(*err)
    if trace_listeners:
        tr = _DeferredTrace(s)
        for fn in trace_listeners:
            fn(tr)
    _compare(s.k, verts, final, target)
    return Metrics(s.k, deleted, life)


# -- property checks -------------------------------------------------------------


@dataclass
class PropertyReport:
    """Outcome of :func:`check_properties`.

    ``exhaustive`` records whether (b) and (c) looked at everything or at a
    seeded sample sized to the work budget.
    """

    violations: list[tuple[str, object]] = field(default_factory=list)
    exhaustive: bool = True
    checked: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_properties(
    tr: Trace,
    target: Graph | None = None,
    budget: int = 2_000_000,
    seed: int = 0,
    max_violations: int = 20,
) -> PropertyReport:
    """Check the three structural facts every d=2 trace must satisfy.

    (a) children born in one slot are pairwise non-adjacent in the target;
    (b) once two vertices both exist their distance never shrinks;
    (c) if u and w are unrelated by descent and never adjacent, then no
        target edge joins {u} plus the descendants of u whose lineage below
        u is born after both exist to the same set for w.

    The target defaults to the final instance.  Large traces are sampled.
    """
    rep = PropertyReport()
    if tr.d != 2:
        return rep
    rng = random.Random(seed)
    if target is None:
        tedges = tr.final_edges()
    else:
        tedges = set(target.edges)
    tadj: dict[int, set[int]] = {v: set() for v in tr.birth}
    for u, w in tedges:
        tadj.setdefault(u, set()).add(w)
        tadj.setdefault(w, set()).add(u)

    def flag(kind, detail):
        if len(rep.violations) < max_violations:
            rep.violations.append((kind, detail))

    # (a)
    n_a = 0
    for t, kids in enumerate(tr.slot_children, start=1):
        ks = set(kids)
        for c in kids:
            n_a += 1
            for w in tadj.get(c, ()):
                if w in ks and c < w:
                    flag("independent_set", (t, c, w))
    rep.checked["independent_set"] = n_a

    # (b)
    n = len(tr.birth)
    size = n + len(tr.activation)
    full_cost = (tr.k + 1) * n * size
    if full_cost <= budget:
        sources = sorted(tr.birth)
        times = set(range(tr.k + 1))
    else:
        rep.exhaustive = False
        n_times = max(2, min(tr.k + 1, budget // max(size, 1)))
        step = tr.k / (n_times - 1) if n_times > 1 else 1
        times = {round(i * step) for i in range(n_times)} | {tr.k}
        n_src = max(1, budget // (len(times) * max(size, 1)))
        # the initiator exists at every sampled time, so it always compares
        sources = sorted({tr.initiator, *rng.sample(sorted(tr.birth), min(n_src, n))})
    prev: dict[int, dict[int, int]] = {}
    n_b = 0
    for t, adj in tr.replay():
        if t not in times:
            continue
        for s in sources:
            if tr.birth[s] > t:
                continue
            dist = bfs_distances(adj, s)
            old = prev.get(s)
            if old is not None:
                for x, dx in old.items():
                    n_b += 1
                    nx = dist.get(x)
                    if nx is None or nx < dx:
                        flag("distance_monotone", (t, s, x, dx, nx))
            prev[s] = dist
    rep.checked["distance_monotone"] = n_b

    # (c) enumerate target edges (v, z) and all pairs of ancestors-or-self
    ancestry = {}

    def chain(v):
        if v not in ancestry:
            ancestry[v] = [v] + tr.ancestors(v)
        return ancestry[v]

    elist = sorted(tedges)
    depth = max((len(tr.ancestors(v)) + 1 for v in tr.birth), default=1) if n <= 4096 else tr.k + 1
    cost = len(elist) * depth * depth
    if cost > budget:
        rep.exhaustive = False
        keep = max(1, budget // max(depth * depth, 1))
        elist = sorted(rng.sample(elist, min(keep, len(elist))))
    n_c = 0
    for v, z in elist:
        cv, cz = chain(v), chain(z)
        sv, sz = set(cv), set(cz)
        for i, u in enumerate(cv):
            for j, w in enumerate(cz):
                if u == w or u in sz or w in sv:
                    continue  # related by descent
                t2 = max(tr.birth[u], tr.birth[w])
                # the whole lineage below u and w must be born after t2;
                # births increase downwards, so the first step decides
                if (i and tr.birth[cv[i - 1]] <= t2) or (j and tr.birth[cz[j - 1]] <= t2):
                    continue
                n_c += 1
                if norm_edge(u, w) not in tr.activation:
                    flag("birth_path", ((u, w), (v, z)))
    rep.checked["birth_path"] = n_c
    return rep


# -- deletion retiming -------------------------------------------------------------


def defer_deletions(s: Schedule) -> Schedule:
    """Move every deletion to the final slot."""
    if not s.slots:
        return s
    dels = [e for slot in s.slots for e in slot.deletions]
    slots = [Slot.presorted(slot.generations, ()) for slot in s.slots]
    slots[-1] = Slot(slots[-1].generations, tuple(dels))
    return s.with_slots(slots)


def normalize_deletions(s: Schedule, target: Graph) -> Schedule:
    """Retime deletions so each excess edge goes right after its last relay use.

    An edge is used as a relay in slot t when some activation of that slot
    depends on it to meet the distance limit.  Edge (p, w) is the relay for a
    child of p wired to w when d = 2; for larger d one deterministic shortest
    path is charged.  An edge is deleted at the end of max(activation slot,
    last use slot), later only if an earlier deletion would disconnect.
    """
    err, verts, final, dels, carry = simcore.normalize_core(s.d, s.initiator, _pairs(s))
    if err is not None:
        raise ScheduleError(*err)
    _compare(s.k, verts, final, target)
    if not s.excess_edges:
        return s
    if carry:  # pragma: no cover - the final graph is connected
        raise ScheduleError(ScheduleError.DISCONNECTING_DELETION, s.k, carry[0])
    # retime keeps each slot's edges in sorted order
    return s.with_slots(Slot.presorted(slot.generations, tuple(d)) for slot, d in zip(s.slots, dels))
