# cython: language_level=3, cdivision=True, infer_types=True, binding=False
"""Compiled hot kernels.

The simulator loops are the plain-Python source of ``_simcore.py`` compiled
as-is; matching, 2-SAT and the bijection searches are typed rewrites of
the functions in ``_purekernels.py`` with identical results.
"""


from libc.stdlib cimport malloc, free
from libc.string cimport memset
from libcpp.algorithm cimport sort, unique
from libcpp.vector cimport vector

include "_simcore.py"

_generic_run = run
_generic_run_final = run_final
_generic_retime = retime
_generic_normalize_core = normalize_core


# -- dense-label simulator -------------------------------------------------------------


cdef unsigned long long _GOLDEN = 0x9E3779B97F4A7C15


cdef inline long long _ekey(long long u, long long w, long long N):
    return u * N + w if u < w else w * N + u


cdef int _dense_size(initiator, slots):
    """Label bound if all labels are small non-negative ints, else -1."""
    cdef long long top, cnt = 1, x
    if type(initiator) is not int or initiator < 0:
        return -1
    top = initiator
    for gens, dels in slots:
        for g in gens:
            x = g[0]
            if x < 0:
                return -1
            if x > top:
                top = x
            x = g[1]
            if x < 0:
                return -1
            if x > top:
                top = x
            cnt += 1
    if top >= 4 * cnt + 64 or top > 50_000_000:
        return -1
    return <int> (top + 1)


cdef class _Dense:
    """Current graph on labels 0..N-1.

    Edges live in append-only arrays and are found through an open
    addressing table keyed by ``u*N+w``.  Adjacency is a linked list per
    vertex threaded through the edge arrays (slot 2e+i is endpoint i of edge
    e, ``nxt`` links slots, ``head`` starts each vertex's list), so a
    deleted edge is just a cleared ``alive`` flag.  Every edge is created
    once, which is all the growth model ever needs.
    """

    cdef long long N
    cdef vector[int] head, nxt
    cdef vector[long long] hkey
    cdef vector[int] hval
    cdef long long mask
    cdef vector[int] eu, ev, act, last
    cdef vector[char] alive
    cdef vector[int] present
    cdef vector[int] mark
    cdef int stamp
    cdef int count
    cdef int root

    def __cinit__(self, int N, int root):
        self.N = N
        self.head.assign(N, -1)
        self.present.assign(N, 0)
        self.mark.assign(N, 0)
        self.stamp = 0
        self.present[root] = 1
        self.count = 1
        self.root = root
        # room for about 2N edges before the first rehash
        cdef long long size = 64
        while size < 4 * <long long> N:
            size *= 2
        self.mask = size - 1
        self.hkey.assign(size, -1)
        self.hval.assign(size, -1)
        self.eu.reserve(2 * N)
        self.ev.reserve(2 * N)
        self.act.reserve(2 * N)
        self.last.reserve(2 * N)
        self.alive.reserve(2 * N)
        self.nxt.reserve(4 * N)

    cdef inline long long _slot(self, long long k):
        cdef long long h = <long long> ((<unsigned long long> k * _GOLDEN) >> 17) & self.mask
        while self.hkey[h] != -1 and self.hkey[h] != k:
            h = (h + 1) & self.mask
        return h

    cdef void _grow(self):
        cdef vector[long long] ok = self.hkey
        cdef vector[int] ov = self.hval
        cdef size_t i
        cdef long long h
        self.mask = 2 * self.mask + 1
        self.hkey.assign(self.mask + 1, -1)
        self.hval.assign(self.mask + 1, -1)
        for i in range(ok.size()):
            if ok[i] != -1:
                h = self._slot(ok[i])
                self.hkey[h] = ok[i]
                self.hval[h] = ov[i]

    cdef inline int find(self, int u, int w):
        """Edge id of a live edge uw, else -1."""
        if u < 0 or w < 0 or u >= self.N or w >= self.N:
            return -1
        cdef long long k = _ekey(u, w, self.N)
        cdef int e = self.hval[self._slot(k)]
        if e >= 0 and self.alive[e]:
            return e
        return -1

    cdef inline int add(self, int u, int w, int t):
        cdef long long k = _ekey(u, w, self.N)
        cdef long long h = self._slot(k)
        cdef int e = self.hval[h]
        if e >= 0:
            return e
        e = <int> self.eu.size()
        self.hkey[h] = k
        self.hval[h] = e
        self.eu.push_back(u)
        self.ev.push_back(w)
        self.act.push_back(t)
        self.last.push_back(0)
        self.alive.push_back(1)
        self.nxt.push_back(self.head[u])
        self.head[u] = 2 * e
        self.nxt.push_back(self.head[w])
        self.head[w] = 2 * e + 1
        if 2 * self.eu.size() > <size_t> self.mask:
            self._grow()
        return e

    cdef int _walk(self, int src, int stop):
        """Visit from src over live edges; return visited count, or -2 on reaching stop."""
        cdef vector[int] stack
        cdef int u, w, e, j, seen = 1
        self.stamp += 1
        self.mark[src] = self.stamp
        stack.push_back(src)
        while stack.size():
            u = stack.back()
            stack.pop_back()
            j = self.head[u]
            while j >= 0:
                e = j >> 1
                j = self.nxt[j]
                if not self.alive[e]:
                    continue
                w = self.eu[e] ^ self.ev[e] ^ u
                if self.mark[w] == self.stamp:
                    continue
                if w == stop:
                    return -2
                self.mark[w] = self.stamp
                seen += 1
                stack.push_back(w)
        return seen

    cdef bint connected(self):
        return self._walk(self.root, -1) == self.count

    cdef list delete_in_order(self, list todo, list refused):
        """Sequential deletion of live edges; refused edges stay.  Returns deleted edges."""
        cdef vector[int] ids
        cdef int e
        cdef size_t i
        for x in todo:
            ids.push_back(self.find(x[0], x[1]))
        for i in range(ids.size()):
            self.alive[ids[i]] = 0
        if self.connected():
            return list(todo)
        for i in range(ids.size()):
            self.alive[ids[i]] = 1
        done = []
        for i in range(ids.size()):
            e = ids[i]
            self.alive[e] = 0
            if self._walk(self.eu[e], self.ev[e]) == -2:
                done.append(todo[i])
            else:
                self.alive[e] = 1
                refused.append(todo[i])
        return done

    cdef vector[int] delete_ids(self, vector[int]& order, vector[int]& ids, vector[int]& refused):
        """delete_in_order on edge ids: ``order`` indexes ``ids``, the result
        and ``refused`` hold the indices deleted and kept."""
        cdef vector[int] done
        cdef size_t i
        cdef int e
        for i in range(order.size()):
            self.alive[ids[order[i]]] = 0
        if self.connected():
            return order
        for i in range(order.size()):
            self.alive[ids[order[i]]] = 1
        for i in range(order.size()):
            e = ids[order[i]]
            self.alive[e] = 0
            if self._walk(self.eu[e], self.ev[e]) == -2:
                done.push_back(order[i])
            else:
                self.alive[e] = 1
                refused.push_back(order[i])
        return done


cdef tuple _check_gen(_Dense G, int d, int t, vector[int]& used, g, bint mark=False):
    """Error tuple for an illegal generation, else None.

    With ``mark`` every relay edge p-w has its last use set to t.
    """
    cdef int p = g[0], c = g[1], w, e
    act = g[2]
    code = None
    if p < 0 or p >= G.N or not G.present[p]:
        code = "UNKNOWN_PARENT"
    elif used[p] == t:
        code = "DUPLICATE_PARENT"
    elif c < G.N and (G.present[c] or used[c] == -t):
        code = "DUPLICATE_CHILD"
    elif p not in act:
        code = "MISSING_PARENT_EDGE"
    if code is not None:
        return (code, t, (p, c, tuple(sorted(act))), "")
    for wo in act:
        w = wo
        if w == p:
            continue
        e = -1 if d == 1 else G.find(p, w)
        if e >= 0:
            if mark:
                G.last[e] = t
        else:
            far = 0 <= w < G.N and G.present[w]
            why = "farther than %d from parent" % (d - 1) if far else "not present"
            return ("ILLEGAL_ACTIVATION", t, (p, c, tuple(sorted(act))), "vertex %r %s" % (wo, why))
    return None


def run(int d, initiator, slots):
    """Simulator; dense small labels with d <= 2 take a typed path."""
    if d > 2:
        return _generic_run(d, initiator, slots)
    cdef int N = _dense_size(initiator, slots)
    if N < 0:
        return _generic_run(d, initiator, slots)
    cdef _Dense G = _Dense(N, initiator)
    cdef vector[int] used = vector[int](N, 0)
    cdef vector[int] born
    cdef int t = 0, p, c, w, e
    cdef size_t i
    birth = {initiator: 0}
    parent = {initiator: None}
    activation = {}
    deletion = {}
    slot_children = []
    for gens, dels in slots:
        t += 1
        for g in gens:
            err = _check_gen(G, d, t, used, g)
            if err is not None:
                return err, None, None, None, None, None
            used[<int> g[0]] = t
            used[<int> g[1]] = -t
        kids = []
        for g in gens:
            c = g[1]
            G.present[c] = 1
            G.count += 1
            birth[c] = t
            parent[c] = g[0]
            kids.append(c)
        for g in gens:
            c = g[1]
            for wo in g[2]:
                w = wo
                G.add(c, w, t)
                activation[(c, w) if c < w else (w, c)] = t
        if dels:
            for x in dels:
                if G.find(x[0], x[1]) < 0:
                    return ("UNKNOWN_EDGE_DELETION", t, x, ""), None, None, None, None, None
            refused = []
            G.delete_in_order(list(dels), refused)
            if refused:
                return ("DISCONNECTING_DELETION", t, refused[0], ""), None, None, None, None, None
            for x in dels:
                deletion[x] = t
        slot_children.append(kids)
    return None, birth, parent, activation, deletion, slot_children


def run_final(int d, initiator, slots):
    """Validation-only simulator: ``(error, vertices, final_edges, deleted,
    max_lifetime)``, without the per-vertex trace dictionaries."""
    if d > 2:
        return _generic_run_final(d, initiator, slots)
    cdef int N = _dense_size(initiator, slots)
    if N < 0:
        return _generic_run_final(d, initiator, slots)
    cdef _Dense G = _Dense(N, initiator)
    cdef vector[int] used = vector[int](N, 0)
    cdef vector[int] gone
    cdef vector[char] was_deleted
    cdef int t = 0, c, w, e, deleted = 0, life = 0
    for gens, dels in slots:
        t += 1
        for g in gens:
            err = _check_gen(G, d, t, used, g)
            if err is not None:
                return err, None, None, 0, 0
            used[<int> g[0]] = t
            used[<int> g[1]] = -t
        for g in gens:
            c = g[1]
            G.present[c] = 1
            G.count += 1
        for g in gens:
            c = g[1]
            for wo in g[2]:
                w = wo
                G.add(c, w, t)
        if dels:
            gone.clear()
            for x in dels:
                e = G.find(x[0], x[1])
                if e < 0:
                    return ("UNKNOWN_EDGE_DELETION", t, x, ""), None, None, 0, 0
                gone.push_back(e)
            refused = []
            G.delete_in_order(list(dels), refused)
            if refused:
                return ("DISCONNECTING_DELETION", t, refused[0], ""), None, None, 0, 0
            was_deleted.resize(G.eu.size(), 0)
            for e in gone:
                if not was_deleted[e]:  # a repeated pair counts once
                    was_deleted[e] = 1
                    deleted += 1
                    if t - G.act[e] > life:
                        life = t - G.act[e]
    if G.count == N:
        verts = range(N)
    else:
        verts = {x for x in range(N) if G.present[x]}
    final = set()
    for e in range(<int> G.eu.size()):
        if G.alive[e]:
            c = G.eu[e]
            w = G.ev[e]
            final.add((c, w) if c < w else (w, c))
    return None, verts, final, deleted, life


cdef tuple _dense_retime(_Dense G, slots, due):
    cdef int t = 0, c
    carry = []
    out = []
    for gens, _ in slots:
        t += 1
        for g in gens:
            c = g[1]
            G.present[c] = 1
            G.count += 1
        for g in gens:
            c = g[1]
            for w in g[2]:
                G.add(c, w, t)
        todo = due.get(t)
        if carry:
            todo = sorted(set(carry) | set(todo or ()))
        elif todo:
            todo = sorted(todo)
        if todo:
            carry = []
            done = G.delete_in_order(todo, carry)
        else:
            done = []
        out.append(done)
    return out, carry


def retime(initiator, slots, due):
    """Same contract as the pure version; typed when labels are dense."""
    cdef int N = _dense_size(initiator, slots)
    if N < 0:
        return _generic_retime(initiator, slots, due)
    return _dense_retime(_Dense(N, initiator), slots, due)


def normalize_core(int d, initiator, slots):
    """Same contract as the pure version; typed when labels are dense and d <= 2."""
    if d > 2:
        return _generic_normalize_core(d, initiator, slots)
    cdef int N = _dense_size(initiator, slots)
    if N < 0:
        return _generic_normalize_core(d, initiator, slots)
    cdef _Dense G = _Dense(N, initiator)
    cdef vector[int] used = vector[int](N, 0)
    cdef int t = 0, p, c, w, e, a, k
    cdef vector[long long] keys
    cdef bint plain = True
    for gens, dels in slots:
        t += 1
        for g in gens:
            err = _check_gen(G, d, t, used, g, True)
            if err is not None:
                return err, None, None, None, None
            used[<int> g[0]] = t
            used[<int> g[1]] = -t
        for g in gens:
            c = g[1]
            G.present[c] = 1
            G.count += 1
        for g in gens:
            c = g[1]
            for wo in g[2]:
                G.add(c, wo, t)
        for x in dels:
            if plain and type(x[0]) is int and type(x[1]) is int and 0 <= x[0] < x[1] < N:
                keys.push_back(_ekey(x[0], x[1], N))
            else:
                plain = False
    if not plain:  # malformed deletions: let the generic code report them
        return _generic_normalize_core(d, initiator, slots)
    k = t
    # integer keys u*N+w sort like the pairs (u, w)
    sort(keys.begin(), keys.end())
    keys.erase(unique(keys.begin(), keys.end()), keys.end())
    todo = [(<int> (q // N), <int> (q % N)) for q in keys]
    cdef int m = len(todo)
    cdef vector[int] ids = vector[int](m)
    cdef vector[int] order, refused
    for i in range(m):
        x = todo[i]
        e = G.find(x[0], x[1])
        if e < 0:
            return ("UNKNOWN_EDGE_DELETION", k, x, ""), None, None, None, None
        ids[i] = e
        order.push_back(i)
    if m:
        G.delete_ids(order, ids, refused)
        if refused.size():
            return ("DISCONNECTING_DELETION", k, todo[refused[0]], ""), None, None, None, None
    if G.count == N:
        verts = range(N)
    else:
        verts = {x for x in range(N) if G.present[x]}
    final = set()
    for e in range(<int> G.eu.size()):
        if G.alive[e]:
            p = G.eu[e]
            w = G.ev[e]
            final.add((p, w) if p < w else (w, p))
    if not m:
        return None, verts, final, [[] for _ in slots], []
    # deletion slot of each edge; walking todo in order keeps every slot sorted
    cdef vector[vector[int]] due = vector[vector[int]](k + 1)
    for i in range(m):
        e = ids[i]
        a = G.act[e]
        if G.last[e] > a:
            a = G.last[e]
        due[a].push_back(i)
    return (None, verts, final) + _replay_retime(G, initiator, slots, todo, ids, due)


cdef tuple _replay_retime(_Dense G, int initiator, slots, list todo, vector[int]& ids,
                          vector[vector[int]]& due):
    """Retime on the edge table of a finished forward pass.

    Each edge was created in its activation slot, so the replay only flips
    presence and liveness flags slot by slot.  Edges are handled as indices
    into the sorted ``todo`` list, so index order is deletion order.
    """
    cdef int k = len(slots), t, e, c
    cdef size_t i
    cdef vector[vector[int]] born = vector[vector[int]](k + 1)
    cdef vector[vector[int]] made = vector[vector[int]](k + 1)
    cdef vector[int] carry, cur, done
    t = 0
    for gens, _ in slots:
        t += 1
        for g in gens:
            born[t].push_back(<int> g[1])
    for e in range(<int> G.eu.size()):
        made[G.act[e]].push_back(e)
        G.alive[e] = 0
    for c in range(<int> G.N):
        G.present[c] = 0
    G.present[initiator] = 1
    G.count = 1
    out = []
    for t in range(1, k + 1):
        for i in range(born[t].size()):
            G.present[born[t][i]] = 1
        G.count += <int> born[t].size()
        for i in range(made[t].size()):
            G.alive[made[t][i]] = 1
        if carry.size():
            cur = carry
            cur.insert(cur.end(), due[t].begin(), due[t].end())
            sort(cur.begin(), cur.end())
            carry.clear()
        else:
            cur = due[t]
        if cur.size():
            done = G.delete_ids(cur, ids, carry)
            out.append([todo[i] for i in done])
        else:
            out.append([])
    return out, [todo[i] for i in carry]


# -- matching ---------------------------------------------------------------------


cdef int _lca(int n, int a, int b, int* base, int* par, int* mate, char* seen):
    memset(seen, 0, n)
    while True:
        a = base[a]
        seen[a] = 1
        if mate[a] == -1:
            break
        a = par[mate[a]]
    while True:
        b = base[b]
        if seen[b]:
            return b
        b = par[mate[b]]


cdef void _mark(int v, int b, int child, int* base, int* par, int* mate, char* blossom):
    while base[v] != b:
        blossom[base[v]] = 1
        blossom[base[mate[v]]] = 1
        par[v] = child
        child = mate[v]
        v = par[mate[v]]


cdef int _augment(int n, int* off, int* nbr, int* mate, int root,
                  int* base, int* par, char* used, int* queue, char* seen, char* blossom):
    cdef int i, v, to, cb, qh = 0, qt = 0, k
    for i in range(n):
        base[i] = i
        par[i] = -1
        used[i] = 0
    used[root] = 1
    queue[qt] = root
    qt += 1
    while qh < qt:
        v = queue[qh]
        qh += 1
        for k in range(off[v], off[v + 1]):
            to = nbr[k]
            if base[v] == base[to] or mate[v] == to:
                continue
            if to == root or (mate[to] != -1 and par[mate[to]] != -1):
                cb = _lca(n, v, to, base, par, mate, seen)
                memset(blossom, 0, n)
                _mark(v, cb, to, base, par, mate, blossom)
                _mark(to, cb, v, base, par, mate, blossom)
                for i in range(n):
                    if blossom[base[i]]:
                        base[i] = cb
                        if not used[i]:
                            used[i] = 1
                            queue[qt] = i
                            qt += 1
            elif par[to] == -1:
                par[to] = v
                if mate[to] == -1:
                    return to
                used[mate[to]] = 1
                queue[qt] = mate[to]
                qt += 1
    return -1


def matching(int n, adj):
    """Maximum matching; same contract as the pure version."""
    cdef int m2 = 0, v, i, k, root, end, pv, nxt, u, w
    for v in range(n):
        m2 += len(adj[v])
    cdef int* off = <int*> malloc((n + 1) * sizeof(int))
    cdef int* nbr = <int*> malloc((m2 + 1) * sizeof(int))
    cdef int* mate = <int*> malloc((n + 1) * sizeof(int))
    cdef int* base = <int*> malloc((n + 1) * sizeof(int))
    cdef int* par = <int*> malloc((n + 1) * sizeof(int))
    cdef int* queue = <int*> malloc((n + 1) * sizeof(int))
    cdef char* used = <char*> malloc(n + 1)
    cdef char* seen = <char*> malloc(n + 1)
    cdef char* blossom = <char*> malloc(n + 1)
    try:
        k = 0
        for v in range(n):
            off[v] = k
            for w in adj[v]:
                nbr[k] = w
                k += 1
            mate[v] = -1
        off[n] = k
        for u in range(n):
            if mate[u] == -1:
                for k in range(off[u], off[u + 1]):
                    w = nbr[k]
                    if w > u and mate[w] == -1:
                        mate[u] = w
                        mate[w] = u
                        break
        for root in range(n):
            if mate[root] == -1 and off[root + 1] > off[root]:
                end = _augment(n, off, nbr, mate, root, base, par, used, queue, seen, blossom)
                v = end
                while v != -1:
                    pv = par[v]
                    nxt = mate[pv]
                    mate[v] = pv
                    mate[pv] = v
                    v = nxt
        return [mate[i] for i in range(n)]
    finally:
        free(off); free(nbr); free(mate); free(base); free(par); free(queue)
        free(used); free(seen); free(blossom)


# -- 2-SAT ----------------------------------------------------------------------


def two_sat(int num_vars, clauses):
    """2-SAT by Tarjan SCC; same contract as the pure version."""
    cdef int N = 2 * num_vars
    cdef int m = len(clauses)
    cdef int i, a, b, u, w, s, v, p, counter = 0, ncomp = 0, sp = 0, wp = 0
    cdef int* deg = <int*> malloc((N + 1) * sizeof(int))
    cdef int* off = <int*> malloc((N + 1) * sizeof(int))
    cdef int* nbr = <int*> malloc((2 * m + 1) * sizeof(int))
    cdef int* index = <int*> malloc((N + 1) * sizeof(int))
    cdef int* low = <int*> malloc((N + 1) * sizeof(int))
    cdef int* comp = <int*> malloc((N + 1) * sizeof(int))
    cdef char* onst = <char*> malloc(N + 1)
    cdef int* stack = <int*> malloc((N + 1) * sizeof(int))
    cdef int* wnode = <int*> malloc((N + 1) * sizeof(int))
    cdef int* wpos = <int*> malloc((N + 1) * sizeof(int))
    cdef int* la = <int*> malloc((m + 1) * sizeof(int))
    cdef int* lb = <int*> malloc((m + 1) * sizeof(int))
    try:
        for i in range(N):
            deg[i] = 0
            index[i] = -1
            onst[i] = 0
        for i in range(m):
            a, b = clauses[i]
            la[i] = a
            lb[i] = b
            deg[a ^ 1] += 1
            deg[b ^ 1] += 1
        s = 0
        for i in range(N):
            off[i] = s
            s += deg[i]
            deg[i] = 0
        off[N] = s
        # same edge order as the pure version: clause order per source node
        for i in range(m):
            a = la[i]
            b = lb[i]
            nbr[off[a ^ 1] + deg[a ^ 1]] = b
            deg[a ^ 1] += 1
            nbr[off[b ^ 1] + deg[b ^ 1]] = a
            deg[b ^ 1] += 1
        for v in range(num_vars):
            for s in (2 * v + 1, 2 * v):
                if index[s] != -1:
                    continue
                wp = 0
                wnode[wp] = s
                wpos[wp] = off[s]
                wp += 1
                index[s] = counter
                low[s] = counter
                counter += 1
                stack[sp] = s
                sp += 1
                onst[s] = 1
                while wp > 0:
                    u = wnode[wp - 1]
                    if wpos[wp - 1] < off[u + 1]:
                        w = nbr[wpos[wp - 1]]
                        wpos[wp - 1] += 1
                        if index[w] == -1:
                            index[w] = counter
                            low[w] = counter
                            counter += 1
                            stack[sp] = w
                            sp += 1
                            onst[w] = 1
                            wnode[wp] = w
                            wpos[wp] = off[w]
                            wp += 1
                        elif onst[w] and index[w] < low[u]:
                            low[u] = index[w]
                        continue
                    wp -= 1
                    if wp > 0:
                        p = wnode[wp - 1]
                        if low[u] < low[p]:
                            low[p] = low[u]
                    if low[u] == index[u]:
                        while True:
                            sp -= 1
                            w = stack[sp]
                            onst[w] = 0
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
    finally:
        free(deg); free(off); free(nbr); free(index); free(low); free(comp)
        free(onst); free(stack); free(wnode); free(wpos); free(la); free(lb)


# -- bijection searches -------------------------------------------------------------


cdef struct EDState:
    int n
    int* parent
    unsigned long long* tbits
    int* assign
    char* used
    int best
    int* best_assign


cdef void _ed_rec(EDState* st, int j, int cost):
    cdef int x, add, pj, i
    if cost >= st.best:
        return
    if j == st.n:
        st.best = cost
        for i in range(st.n):
            st.best_assign[i] = st.assign[i]
        return
    pj = st.parent[j]
    for x in range(st.n):
        if st.used[x]:
            continue
        add = 0
        if pj >= 0 and not ((st.tbits[st.assign[pj]] >> x) & 1):
            add = 1
        st.used[x] = 1
        st.assign[j] = x
        _ed_rec(st, j + 1, cost + add)
        st.used[x] = 0
    st.assign[j] = -1


def edge_difference_search(int n, parent, target_bits, int bound):
    """Exact minimum edge difference; same contract as the pure version (n <= 64)."""
    cdef EDState st
    cdef int i
    if n > 64:
        raise ValueError("compiled search supports n <= 64")
    st.n = n
    st.parent = <int*> malloc((n + 1) * sizeof(int))
    st.tbits = <unsigned long long*> malloc((n + 1) * sizeof(unsigned long long))
    st.assign = <int*> malloc((n + 1) * sizeof(int))
    st.used = <char*> malloc(n + 1)
    st.best_assign = <int*> malloc((n + 1) * sizeof(int))
    try:
        for i in range(n):
            st.parent[i] = parent[i]
            st.tbits[i] = target_bits[i]
            st.assign[i] = -1
            st.used[i] = 0
            st.best_assign[i] = -1
        st.best = bound
        _ed_rec(&st, 0, 0)
        if st.best_assign[0] == -1 and n > 0:
            return bound, None
        return st.best, [st.best_assign[i] for i in range(n)]
    finally:
        free(st.parent); free(st.tbits); free(st.assign); free(st.used); free(st.best_assign)


cdef struct CLState:
    int n
    int* pidx          # n*n pair numbers
    unsigned long long* closure
    char* feasible
    unsigned long long* label_req
    unsigned long long* tbits
    int* assign
    char* used
    int best
    int* best_assign
    int found


cdef void _cl_rec(CLState* st, int j, unsigned long long req, int cost):
    cdef int x, i, h, p, c, n = st.n
    cdef unsigned long long r, nb
    cdef char ok
    if cost >= st.best:
        return
    if j == n:
        st.best = cost
        st.found = 1
        for i in range(n):
            st.best_assign[i] = st.assign[i]
        return
    for x in range(n):
        if st.used[x]:
            continue
        nb = st.tbits[x]
        r = req | st.label_req[j]
        ok = 1
        for i in range(j):
            if (nb >> st.assign[i]) & 1:
                p = st.pidx[i * n + j]
                if not st.feasible[p]:
                    ok = 0
                    break
                r |= st.closure[p]
        if not ok:
            continue
        st.assign[j] = x
        c = 0
        for i in range(j + 1):
            for h in range(i):
                p = st.pidx[h * n + i]
                if (r >> p) & 1 and not ((st.tbits[st.assign[h]] >> st.assign[i]) & 1):
                    c += 1
        st.used[x] = 1
        _cl_rec(st, j + 1, r, c)
        st.used[x] = 0
    st.assign[j] = -1


def closure_search(int n, pair_index, closure, feasible, label_req, target_bits, int bound):
    """Exact minimum closure excess; same contract as the pure version (<= 64 pairs)."""
    cdef CLState st
    cdef int i, j, npairs = len(closure)
    if npairs > 64:
        raise ValueError("compiled search supports at most 64 label pairs")
    st.n = n
    st.pidx = <int*> malloc((n * n + 1) * sizeof(int))
    st.closure = <unsigned long long*> malloc((npairs + 1) * sizeof(unsigned long long))
    st.feasible = <char*> malloc(npairs + 1)
    st.label_req = <unsigned long long*> malloc((n + 1) * sizeof(unsigned long long))
    st.tbits = <unsigned long long*> malloc((n + 1) * sizeof(unsigned long long))
    st.assign = <int*> malloc((n + 1) * sizeof(int))
    st.used = <char*> malloc(n + 1)
    st.best_assign = <int*> malloc((n + 1) * sizeof(int))
    try:
        for i in range(n):
            for j in range(n):
                st.pidx[i * n + j] = pair_index[i][j] if i != j else -1
            st.label_req[i] = label_req[i]
            st.tbits[i] = target_bits[i]
            st.assign[i] = -1
            st.used[i] = 0
        for i in range(npairs):
            st.closure[i] = closure[i]
            st.feasible[i] = 1 if feasible[i] else 0
        st.best = bound
        st.found = 0
        _cl_rec(&st, 0, 0, 0)
        if not st.found:
            return bound, None
        return st.best, [st.best_assign[i] for i in range(n)]
    finally:
        free(st.pidx); free(st.closure); free(st.feasible); free(st.label_req)
        free(st.tbits); free(st.assign); free(st.used); free(st.best_assign)

