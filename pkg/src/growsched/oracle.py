"""Exhaustive ground truth for small instances.

Zero-excess search works backwards on vertex bitmasks: with no deletions
the graph after slot t is the target induced on the vertices born so far,
so a state is just that vertex set.  A backward move removes an
independent set of children, each matched to a distinct surviving parent
that can reach all of its neighbours.

Excess is handled through supergraphs: deferring every deletion to the
last slot never breaks a schedule, so a k-slot schedule with excess set F
is a zero-excess schedule of target + F.  When n = 2^k the parent
structure is forced to be the binomial tree, and a search over labelings
of that tree gives the exact minimum directly.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from ._backend import kernels as _k
from .errors import CapExceeded, GraphError
from .graph import Graph, is_connected
from .schedule import Generation, Schedule, Slot

DEFAULT_CAP = 8
DEFAULT_ELL_CAP = 4


def _ceil_log2(n: int) -> int:
    return (n - 1).bit_length() if n > 1 else 0


# -- canonical forms and enumeration --------------------------------------------------


def _refine(nbr: list[int], cells: list[list[int]]) -> list[list[int]]:
    """Split cells by neighbour counts into every cell until stable."""
    while True:
        masks = [sum(1 << v for v in c) for c in cells]
        out = []
        changed = False
        for c in cells:
            if len(c) == 1:
                out.append(c)
                continue
            groups: dict[tuple, list[int]] = {}
            for v in c:
                row = nbr[v]
                sig = tuple([(row & m).bit_count() for m in masks])
                groups.setdefault(sig, []).append(v)
            if len(groups) > 1:
                changed = True
                for sig in sorted(groups):
                    out.append(groups[sig])
            else:
                out.append(c)
        cells = out
        if not changed:
            return cells


def _certificate(nbr: list[int], order: list[int]) -> int:
    pos = [0] * len(order)
    for i, v in enumerate(order):
        pos[v] = i
    n = len(order)
    bits = 0
    for i, v in enumerate(order):
        row = nbr[v]
        for w in order[i + 1:]:
            if (row >> w) & 1:
                bits |= 1 << (pos[w] * n + i)
    return bits


def _canon_bits(nbr: list[int]) -> tuple[int, list[int]]:
    """(certificate, order) for neighbour bitmasks; order[i] gets label i."""
    n = len(nbr)
    best: list = [None, None]

    def search(cells):
        cells = _refine(nbr, cells)
        for i, c in enumerate(cells):
            if len(c) > 1:
                break
        else:
            order = [c[0] for c in cells]
            cert = _certificate(nbr, order)
            if best[0] is None or cert < best[0]:
                best[0] = cert
                best[1] = order
            return
        tried: list[int] = []
        for v in c:
            # twins in the same cell give mirror-image subtrees
            if any(nbr[v] & ~(1 << u) == nbr[u] & ~(1 << v) for u in tried):
                continue
            tried.append(v)
            rest = [u for u in c if u != v]
            search(cells[:i] + [[v], rest] + cells[i + 1:])

    if n:
        search([list(range(n))])
    else:
        best[:] = [0, []]
    return best[0], best[1]


def _canon(g: Graph) -> tuple[int, list[int]]:
    return _canon_bits([sum(1 << w for w in g.adj[v]) for v in range(g.n)])


def canonical_form(g: Graph) -> Graph:
    """Relabelled copy of ``g``; isomorphic graphs give equal results."""
    _, order = _canon(g)
    label = {v: i for i, v in enumerate(order)}
    return g.relabel([label[v] for v in range(g.n)])


def canonical_key(g: Graph) -> tuple[int, int]:
    return g.n, _canon(g)[0]


def _extend(bases, n: int, connected: bool) -> tuple[Graph, ...]:
    """Add vertex n-1 to every base graph in every way; one graph per class.

    Every connected graph has a vertex whose removal keeps it connected, so
    connected classes only need connected bases and a nonempty new row.
    """
    seen: dict[int, list[int]] = {}
    v = n - 1
    for h in bases:
        base = [sum(1 << w for w in h.adj[u]) for u in range(v)]
        for mask in range(1 if connected else 0, 1 << v):
            nbr = [row | (((mask >> u) & 1) << v) for u, row in enumerate(base)]
            nbr.append(mask)
            cert, order = _canon_bits(nbr)
            if cert not in seen:
                seen[cert] = [nbr, order]
    out = []
    for cert in sorted(seen, key=lambda c: (bin(c).count("1"), c)):
        nbr, order = seen[cert]
        label = [0] * n
        for i, x in enumerate(order):
            label[x] = i
        out.append(Graph(n, ((label[u], label[w]) for u in range(n) for w in range(u + 1, n) if (nbr[u] >> w) & 1)))
    return tuple(out)


@lru_cache(maxsize=None)
def _all_graphs(n: int) -> tuple[Graph, ...]:
    if n <= 1:
        return (Graph(n),)
    return _extend(_all_graphs(n - 1), n, False)


@lru_cache(maxsize=None)
def _connected_graphs(n: int) -> tuple[Graph, ...]:
    if n <= 1:
        return (Graph(n),)
    return _extend(_connected_graphs(n - 1), n, True)


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise CapExceeded(f"n={n} exceeds cap {cap}")


def all_graphs(n: int, cap: int = DEFAULT_CAP) -> list[Graph]:
    """One canonical representative per isomorphism class, by edge count."""
    _check_cap(n, cap)
    return list(_all_graphs(n))


def connected_graphs(n: int, cap: int = DEFAULT_CAP) -> list[Graph]:
    _check_cap(n, cap)
    return list(_connected_graphs(n))


# -- zero-excess search -------------------------------------------------------------


class _ZeroSearch:
    """Backward elimination search over vertex bitmasks of one target."""

    def __init__(self, g: Graph, d: int):
        self.g = g
        self.d = d
        self.nbr = [sum(1 << w for w in g.adj[v]) for v in range(g.n)]
        self.memo: dict[tuple[int, int], tuple | None] = {}
        self.seq: dict[int, int | None] = {}

    def _ball(self, p: int, mask: int) -> int:
        """Vertices within d-1 of p in the target induced on mask."""
        seen = front = 1 << p
        for _ in range(self.d - 1):
            nxt = 0
            f = front
            while f:
                low = f & -f
                nxt |= self.nbr[low.bit_length() - 1]
                f ^= low
            nxt &= mask & ~seen
            if not nxt:
                break
            seen |= nxt
            front = nxt
        return seen

    def _ok(self, v: int, p: int, mask: int, rest: int) -> bool:
        """Child v (alive in mask) can be born from p given survivors rest."""
        need = self.nbr[v] & mask
        if not (need >> p) & 1:
            return False
        if self.d == 1:
            return need == 1 << p
        if self.d == 2:
            return need & ~(self.nbr[p] | 1 << p) == 0
        return need & ~self._ball(p, rest) == 0

    def _parents(self, v: int, mask: int, rest: int) -> list[int]:
        out = []
        f = self.nbr[v] & rest
        while f:
            low = f & -f
            p = low.bit_length() - 1
            f ^= low
            if self._ok(v, p, mask, rest):
                out.append(p)
        return out

    def _assign(self, L: list[int], mask: int) -> dict[int, int] | None:
        """Distinct parents for all of L (bipartite augmenting paths)."""
        rest = mask
        for v in L:
            rest &= ~(1 << v)
        opts = {v: self._parents(v, mask, rest) for v in L}
        owner: dict[int, int] = {}

        def augment(v, seen):
            for p in opts[v]:
                if p in seen:
                    continue
                seen.add(p)
                if p not in owner or augment(owner[p], seen):
                    owner[p] = v
                    return True
            return False

        for v in sorted(L, key=lambda x: len(opts[x])):
            if not augment(v, set()):
                return None
        return {v: p for p, v in owner.items()}

    def sequential(self, mask: int) -> int | None:
        """Some removable vertex leading to a full elimination, else None.

        Any valid slot can be split into single removals, so this decides
        existence for unlimited slots.
        """
        if mask & (mask - 1) == 0:
            return -1
        if mask in self.seq:
            return self.seq[mask]
        found = None
        f = mask
        while f:
            low = f & -f
            v = low.bit_length() - 1
            f ^= low
            if self._parents(v, mask, mask & ~low) and self.sequential(mask & ~low) is not None:
                found = v
                break
        self.seq[mask] = found
        return found

    def feasible(self, mask: int, k: int):
        """A move (dict child -> parent) starting a k-slot elimination of
        mask, ``()`` when mask is a single vertex, else None."""
        size = bin(mask).count("1")
        if size == 1:
            return ()
        if k <= 0 or size > 1 << k:
            return None
        key = (mask, k)
        if key in self.memo:
            return self.memo[key]
        result = None
        if k >= size - 1:
            v = self.sequential(mask)
            if v is not None:
                rest = mask & ~(1 << v)
                result = {v: self._parents(v, mask, rest)[0]}
        else:
            need = size - (1 << (k - 1))  # children needed this slot
            removable = []
            f = mask
            while f:
                low = f & -f
                v = low.bit_length() - 1
                f ^= low
                if self.d > 2 or self._parents(v, mask, mask & ~low):
                    removable.append(v)
            result = self._subsets(mask, k, removable, max(need, 1))
        self.memo[key] = result
        return result

    def _subsets(self, mask: int, k: int, removable: list[int], need: int):
        """Independent subsets of removable with at least need vertices."""
        nbr = self.nbr
        chosen: list[int] = []

        def rec(i, blocked):
            if len(chosen) + len(removable) - i < need:
                return None
            if i == len(removable):
                move = self._assign(chosen, mask)
                if move is None:
                    return None
                rest = mask
                for v in chosen:
                    rest &= ~(1 << v)
                if self.feasible(rest, k - 1) is None:
                    return None
                return move
            v = removable[i]
            if not (blocked >> v) & 1:
                chosen.append(v)
                r = rec(i + 1, blocked | nbr[v])
                chosen.pop()
                if r is not None:
                    return r
            return rec(i + 1, blocked)

        return rec(0, 0)

    def witness(self, k: int) -> Schedule | None:
        mask = (1 << self.g.n) - 1
        levels = []
        while True:
            move = self.feasible(mask, k)
            if move is None:
                return None
            if move == ():
                break
            levels.append(move)
            for v in move:
                mask &= ~(1 << v)
            k -= 1
        root = mask.bit_length() - 1
        slots = []
        alive = mask
        for move in reversed(levels):
            for v in move:
                alive |= 1 << v
            gens = tuple(
                Generation(p, v, [w for w in self.g.adj[v] if (alive >> w) & 1])
                for v, p in move.items()
            )
            slots.append(Slot(gens))
        return Schedule(self.d, root, tuple(slots))


def _precheck(target: Graph, d: int, cap: int) -> None:
    _check_cap(target.n, cap)
    if d < 1:
        raise ValueError("d must be at least 1")
    if target.n < 1 or not is_connected(target):
        raise GraphError("target must be a connected graph with at least one vertex")


def zero_excess_witness(target: Graph, k: int, d: int = 2, cap: int = DEFAULT_CAP) -> Schedule | None:
    """A zero-excess schedule of at most k slots, or None."""
    _precheck(target, d, cap)
    search = _ZeroSearch(target, d)
    for kk in range(_ceil_log2(target.n), k + 1):
        s = search.witness(kk)
        if s is not None:
            return s
    return None


def min_slots_zero_excess(target: Graph, d: int = 2, cap: int = DEFAULT_CAP) -> int | None:
    """Fewest slots of any zero-excess schedule, or None when none exists."""
    _precheck(target, d, cap)
    search = _ZeroSearch(target, d)
    full = (1 << target.n) - 1
    if search.sequential(full) is None:
        return None
    for k in range(_ceil_log2(target.n), target.n):
        if search.feasible(full, k) is not None:
            return k
    return target.n - 1  # pragma: no cover - sequential() already succeeded


# -- minimum excess -----------------------------------------------------------------


def binomial_parent(j: int) -> int:
    """Parent label in the binomial tree; label j is born in slot bitlen(j)."""
    return j - (1 << (j.bit_length() - 1)) if j else -1


class _ClosureTables:
    """Pair closure on binomial labels 0..n-1.

    Activating pair (a, b), a < b, at b's birth needs a within distance one
    of parent(b), hence pair (a, parent(b)) unless a is the parent.  Labels
    born in the same slot can never be adjacent.
    """

    def __init__(self, n: int):
        self.n = n
        self.pairs = [(a, b) for b in range(n) for a in range(b)]
        self.index = [[-1] * n for _ in range(n)]
        for i, (a, b) in enumerate(self.pairs):
            self.index[a][b] = self.index[b][a] = i
        self.closure = [0] * len(self.pairs)
        self.feasible = [True] * len(self.pairs)
        for i, (a, b) in enumerate(self.pairs):  # increasing b
            if a.bit_length() == b.bit_length():
                self.feasible[i] = False
                continue
            c = 1 << i
            p = binomial_parent(b)
            if a != p:
                j = self.index[a][p]
                if not self.feasible[j]:
                    self.feasible[i] = False
                    continue
                c |= self.closure[j]
            self.closure[i] = c
        self.label_req = [0] + [1 << self.index[binomial_parent(j)][j] for j in range(1, n)]


@lru_cache(maxsize=None)
def _tables(n: int) -> _ClosureTables:
    return _ClosureTables(n)


def _binomial_min_excess(target: Graph) -> tuple[int, Schedule] | None:
    n = target.n
    t = _tables(n)
    bits = [sum(1 << w for w in target.adj[v]) for v in range(n)]
    best, witness = _k.closure_search(n, t.index, t.closure, t.feasible, t.label_req, bits, len(t.pairs) + 1)
    if witness is None:
        return None  # some target edge joins two labels born in the same slot
    # rebuild the schedule from the labelling
    b = witness
    present = 0
    for j in range(1, n):
        present |= t.label_req[j]
        for i in range(j):
            if target.has_edge(b[i], b[j]):
                present |= t.closure[t.index[i][j]]
    k = _ceil_log2(n)
    slots = []
    excess = []
    for slot in range(1, k + 1):
        gens = []
        for j in range(1 << (slot - 1), 1 << slot):
            act = {b[i] for i in range(j) if (present >> t.index[i][j]) & 1}
            gens.append(Generation(b[binomial_parent(j)], b[j], act))
            excess.extend((b[i], b[j]) for i in range(j) if (present >> t.index[i][j]) & 1 and not target.has_edge(b[i], b[j]))
        slots.append(Slot(tuple(gens)))
    if slots:
        slots[-1] = Slot(slots[-1].generations, tuple(excess))
    return best, Schedule(2, b[0], tuple(slots))


def min_excess_witness(
    target: Graph, k: int, d: int = 2, cap: int = DEFAULT_CAP, ell_cap: int = DEFAULT_ELL_CAP
) -> tuple[int, Schedule] | None:
    """Minimum excess over schedules of at most k slots, with a witness.

    None when no schedule of k slots exists at all.
    Raises CapExceeded when the supergraph search passes ``ell_cap``.
    """
    _precheck(target, d, cap)
    n = target.n
    if k < _ceil_log2(n):
        return None
    if d == 2 and n > 1 and n == 1 << k:
        return _binomial_min_excess(target)
    non_edges = target.non_edges()
    for ell in range(0, min(ell_cap, len(non_edges)) + 1):
        for extra in itertools.combinations(non_edges, ell):
            sup = target.with_edges(extra)
            s = zero_excess_witness(sup, k, d, cap)
            if s is not None:
                if extra:
                    slots = list(s.slots)
                    slots[-1] = Slot(slots[-1].generations, extra)
                    s = s.with_slots(slots)
                return ell, s
    if ell_cap >= len(non_edges):
        return None  # even the complete graph needs more than k slots
    raise CapExceeded(f"no schedule of {k} slots with at most {ell_cap} excess edges")


def min_excess_with_budget(
    target: Graph, k: int, d: int = 2, cap: int = DEFAULT_CAP, ell_cap: int = DEFAULT_ELL_CAP
) -> int | None:
    r = min_excess_witness(target, k, d, cap, ell_cap)
    return None if r is None else r[0]
