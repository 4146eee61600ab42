"""Pure-Python versions of the hot kernels.

``_speedups.pyx`` provides the same functions with C types; ``_backend``
picks one at import.  Inputs are plain ints and lists so both versions
share a signature.
"""

from ._simcore import (  # noqa: F401  (re-exported for the backend switch)
    bfs_ball,
    connected,
    delete_edges,
    normalize_core,
    reachable,
    relay_last_use,
    retime,
    run,
    run_final,
)


# -- general matching (Edmonds blossom contraction) ------------------------------


def matching(n, adj):
    """Maximum matching; ``adj[v]`` is a sorted neighbour list.

    Seeds greedily over edges in ascending order, then grows one augmenting
    path per free vertex.  Returns ``mate`` with -1 for unmatched vertices.
    """
    mate = [-1] * n
    for u in range(n):
        if mate[u] == -1:
            for w in adj[u]:
                if w > u and mate[w] == -1:
                    mate[u] = w
                    mate[w] = u
                    break
    for root in range(n):
        if mate[root] == -1 and adj[root]:
            end, par = _augmenting_path(n, adj, mate, root)
            v = end
            while v != -1:
                pv = par[v]
                nxt = mate[pv]
                mate[v] = pv
                mate[pv] = v
                v = nxt
    return mate


def _augmenting_path(n, adj, mate, root):
    base = list(range(n))
    par = [-1] * n
    used = [False] * n
    used[root] = True
    queue = [root]
    qi = 0

    def lca(a, b):
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if mate[a] == -1:
                break
            a = par[mate[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = par[mate[b]]

    def mark(v, b, child, blossom):
        while base[v] != b:
            blossom[base[v]] = True
            blossom[base[mate[v]]] = True
            par[v] = child
            child = mate[v]
            v = par[mate[v]]

    while qi < len(queue):
        v = queue[qi]
        qi += 1
        for to in adj[v]:
            if base[v] == base[to] or mate[v] == to:
                continue
            if to == root or (mate[to] != -1 and par[mate[to]] != -1):
                cb = lca(v, to)
                blossom = [False] * n
                mark(v, cb, to, blossom)
                mark(to, cb, v, blossom)
                for i in range(n):
                    if blossom[base[i]]:
                        base[i] = cb
                        if not used[i]:
                            used[i] = True
                            queue.append(i)
            elif par[to] == -1:
                par[to] = v
                if mate[to] == -1:
                    return to, par
                used[mate[to]] = True
                queue.append(mate[to])
    return -1, par


# -- 2-SAT ----------------------------------------------------------------------


def two_sat(num_vars, clauses):
    """Solve 2-CNF; literal ``2*v`` is x_v, ``2*v+1`` is not x_v.

    ``clauses`` is a list of literal pairs.  Returns a list of bools or None.
    Tarjan's SCC numbers components sinks first; x_v is true iff its
    component comes before that of its negation.  Negative literals are
    visited first, so unconstrained variables come out false.
    """
    N = 2 * num_vars
    graph = [[] for _ in range(N)]
    for a, b in clauses:
        graph[a ^ 1].append(b)
        graph[b ^ 1].append(a)
    index = [-1] * N
    low = [0] * N
    comp = [-1] * N
    on_stack = [False] * N
    stack = []
    counter = 0
    ncomp = 0
    for v in range(num_vars):
        for s in (2 * v + 1, 2 * v):
            if index[s] != -1:
                continue
            work = [(s, 0)]
            index[s] = low[s] = counter
            counter += 1
            stack.append(s)
            on_stack[s] = True
            while work:
                u, i = work[-1]
                if i < len(graph[u]):
                    work[-1] = (u, i + 1)
                    w = graph[u][i]
                    if index[w] == -1:
                        index[w] = low[w] = counter
                        counter += 1
                        stack.append(w)
                        on_stack[w] = True
                        work.append((w, 0))
                    elif on_stack[w] and index[w] < low[u]:
                        low[u] = index[w]
                    continue
                work.pop()
                if work:
                    p = work[-1][0]
                    if low[u] < low[p]:
                        low[p] = low[u]
                if low[u] == index[u]:
                    while True:
                        w = stack.pop()
                        on_stack[w] = False
                        comp[w] = ncomp
                        if w == u:
                            break
                    ncomp += 1
    out = []
    for v in range(num_vars):
        if comp[2 * v] == comp[2 * v + 1]:
            return None
        out.append(comp[2 * v] < comp[2 * v + 1])
    return out


# -- bijection searches over the binomial tree ----------------------------------


def edge_difference_search(n, parent, target_bits, bound):
    """Minimum over bijections b of #{j : b(j) b(parent j) not an edge}.

    Labels are assigned in increasing order; the partial count only grows,
    so branches reaching ``best`` are cut.  ``target_bits[x]`` is the
    neighbour bitmask of target vertex x; ``bound`` is an initial upper
    bound (use n for none).  Returns ``(best, witness)`` with
    witness[j] = target vertex of label j, or ``(bound, None)``.
    """
    best = [bound, None]
    assign = [-1] * n
    used = [False] * n

    def rec(j, cost):
        if cost >= best[0]:
            return
        if j == n:
            best[0] = cost
            best[1] = list(assign)
            return
        pj = parent[j]
        for x in range(n):
            if used[x]:
                continue
            add = 0
            if pj >= 0 and not (target_bits[assign[pj]] >> x) & 1:
                add = 1
            used[x] = True
            assign[j] = x
            rec(j + 1, cost + add)
            used[x] = False
        assign[j] = -1

    rec(0, 0)
    return best[0], best[1]


def closure_search(n, pair_index, closure, feasible, label_req, target_bits, bound):
    """Minimum excess of a log n slot schedule over all label bijections.

    ``pair_index[a][b]`` numbers label pairs; ``closure[i]`` is the bitmask
    of pairs that must ever be present once pair i is, and ``feasible[i]``
    says whether pair i can be present at all.  ``label_req[j]`` holds the
    pairs forced by label j's own parent edge.  A pair is excess when its
    two labels map to a target non-edge.
    """
    best = [bound, None]
    assign = [-1] * n
    used = [False] * n

    def rec(j, req, cost):
        if cost >= best[0]:
            return
        if j == n:
            best[0] = cost
            best[1] = list(assign)
            return
        for x in range(n):
            if used[x]:
                continue
            nbrs = target_bits[x]
            r = req | label_req[j]
            ok = True
            for i in range(j):
                if (nbrs >> assign[i]) & 1:
                    p = pair_index[i][j]
                    if not feasible[p]:
                        ok = False
                        break
                    r |= closure[p]
            if not ok:
                continue
            assign[j] = x
            # excess among pairs with both labels assigned: all closure pairs
            # only use labels up to j, so they are all decided now
            c = 0
            for i in range(j + 1):
                for h in range(i):
                    p = pair_index[h][i]
                    if (r >> p) & 1 and not (target_bits[assign[h]] >> assign[i]) & 1:
                        c += 1
            used[x] = True
            rec(j + 1, r, c)
            used[x] = False
        assign[j] = -1

    rec(0, 0, 0)
    return best[0], best[1]
