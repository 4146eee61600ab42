"""Undirected graphs on dense vertex identifiers 0..n-1.

Everything in the package grows, inspects or bounds one of these.  A
:class:`Graph` is immutable once built; all helpers here are pure.
"""

from __future__ import annotations

import heapq
import math
import random
from collections import deque
from dataclasses import dataclass
from operator import eq
from typing import Iterable, Mapping, Sequence

from .errors import GraphError

Edge = tuple[int, int]


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Simple undirected graph with vertices ``0..n-1``.

    ``edges`` holds normalized pairs ``(u, v)`` with ``u < v``; ``adj[v]`` is
    the frozenset of neighbours of ``v``.
    """

    __slots__ = ("n", "edges", "_adj", "_hash")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise GraphError(f"vertex count must be non-negative, got {n}")
        norm = {(u, v) if u < v else (v, u) for u, v in edges}
        if norm:
            lo, hi = zip(*norm)
            if any(map(eq, lo, hi)):
                raise GraphError(f"self-loop at vertex {min(u for u, v in norm if u == v)}")
            if min(lo) < 0 or max(hi) >= n:
                u, v = next((u, v) for u, v in sorted(norm) if u < 0 or v >= n)
                raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        self.n = n
        self.edges: frozenset[Edge] = frozenset(norm)
        self._adj = None
        self._hash = None

    @property
    def adj(self) -> tuple[frozenset[int], ...]:
        # built on first use: validation only ever compares edge sets
        adj = self._adj
        if adj is None:
            lists: list[list[int]] = [[] for _ in range(self.n)]
            for u, v in self.edges:
                lists[u].append(v)
                lists[v].append(u)
            adj = self._adj = tuple(map(frozenset, lists))
        return adj

    @property
    def m(self) -> int:
        return len(self.edges)

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.edges))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v]

    def closed_neighborhood(self, v: int) -> frozenset[int]:
        return self.adj[v] | {v}

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def edge_list(self) -> list[Edge]:
        return sorted(self.edges)

    def with_edges(self, extra: Iterable[Edge]) -> "Graph":
        return Graph(self.n, list(self.edges) + list(extra))

    def non_edges(self) -> list[Edge]:
        return [
            (u, v)
            for u in range(self.n)
            for v in range(u + 1, self.n)
            if v not in self.adj[u]
        ]

    def relabel(self, mapping: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed to ``mapping[v]``."""
        return Graph(self.n, ((mapping[u], mapping[v]) for u, v in self.edges))


def make_graph(n: int, edges: Iterable[Sequence[int]] = ()) -> Graph:
    return Graph(n, edges)


@dataclass(frozen=True)
class Coloring:
    """Vertex colouring; ``colors[v]`` is the 0-based colour of ``v``."""

    colors: tuple[int, ...]

    @property
    def num_colors(self) -> int:
        return len(set(self.colors))

    def classes(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for v, c in enumerate(self.colors):
            out.setdefault(c, []).append(v)
        return out

    def is_proper(self, g: Graph) -> bool:
        if len(self.colors) != g.n:
            return False
        return all(self.colors[u] != self.colors[v] for u, v in g.edges)

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, int], n: int) -> "Coloring":
        missing = [v for v in range(n) if v not in mapping]
        if missing:
            raise GraphError(f"colouring leaves vertices uncoloured: {missing[:10]}")
        return cls(tuple(int(mapping[v]) for v in range(n)))


# -- traversal ---------------------------------------------------------------


def bfs_distances(adj, source: int, limit: int | None = None) -> dict[int, int]:
    """Hop distances from ``source``; ``adj`` is any ``v -> neighbours`` lookup.

    With ``limit`` the search stops expanding past that depth.
    """
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u]
        if limit is not None and du >= limit:
            continue
        for w in adj[u]:
            if w not in dist:
                dist[w] = du + 1
                queue.append(w)
    return dist


def is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    return len(bfs_distances(g.adj, 0)) == g.n


def distance(g: Graph, u: int, v: int) -> float:
    """Hop distance between ``u`` and ``v``; ``math.inf`` if disconnected."""
    for x in (u, v):
        if not 0 <= x < g.n:
            raise GraphError(f"vertex {x} outside 0..{g.n - 1}")
    if u == v:
        return 0
    dist = bfs_distances(g.adj, u)
    return dist.get(v, math.inf)


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.m == g.n - 1 and is_connected(g)


def diameter_path(g: Graph) -> list[int]:
    """A longest shortest path of a tree (double sweep), as a vertex list."""
    if g.n == 0:
        return []
    d0 = bfs_distances(g.adj, 0)
    a = max(d0, key=lambda v: (d0[v], -v))
    # second sweep with parent pointers
    parent = {a: None}
    queue = deque([a])
    last = a
    while queue:
        u = queue.popleft()
        last = u
        for w in sorted(g.adj[u]):
            if w not in parent:
                parent[w] = u
                queue.append(w)
    path = []
    x = last
    while x is not None:
        path.append(x)
        x = parent[x]
    return path


# -- degeneracy and colouring ---------------------------------------------------


def degeneracy_ordering(g: Graph) -> tuple[list[int], int]:
    """Repeatedly remove a minimum-degree vertex (smallest id on ties).

    Returns the removal order and the degeneracy, i.e. the largest residual
    degree seen at removal time.
    """
    deg = [len(a) for a in g.adj]
    heap = [(deg[v], v) for v in range(g.n)]
    heapq.heapify(heap)
    removed = [False] * g.n
    order: list[int] = []
    k = 0
    while heap:
        d, v = heapq.heappop(heap)
        if removed[v] or d != deg[v]:
            continue
        removed[v] = True
        order.append(v)
        k = max(k, d)
        for w in g.adj[v]:
            if not removed[w]:
                deg[w] -= 1
                heapq.heappush(heap, (deg[w], w))
    return order, k


def greedy_coloring(g: Graph, ordering: Sequence[int]) -> Coloring:
    """First-fit colouring in the given order.

    Feeding the reverse of :func:`degeneracy_ordering` uses at most k+1
    colours.
    """
    if len(ordering) != g.n or set(ordering) != set(range(g.n)):
        raise GraphError("ordering must be a permutation of the vertices")
    colors = [-1] * g.n
    for v in ordering:
        taken = {colors[w] for w in g.adj[v]}
        c = 0
        while c in taken:
            c += 1
        colors[v] = c
    return Coloring(tuple(colors))


def degeneracy_coloring(g: Graph) -> Coloring:
    order, _ = degeneracy_ordering(g)
    return greedy_coloring(g, order[::-1])


# -- families -----------------------------------------------------------------


def path_graph(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def star_graph(n: int) -> Graph:
    """K_{1,n-1} centred at vertex 0."""
    return Graph(n, ((0, i) for i in range(1, n)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def complete_graph(n: int) -> Graph:
    return Graph(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def grid_graph(rows: int, cols: int) -> Graph:
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Graph(rows * cols, edges)


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def random_tree(n: int, seed: int = 0) -> Graph:
    """Uniform labelled tree on n vertices from a random Pruefer sequence."""
    if n <= 0:
        raise GraphError("a tree needs at least one vertex")
    if n == 1:
        return Graph(1)
    if n == 2:
        return Graph(2, [(0, 1)])
    rng = random.Random(seed)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u, v = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((u, v))
    return Graph(n, edges)
