"""Inner loops of the simulator and of deletion retiming.

Plain Python over tuples, dicts and sets.  The compiled extension includes
this very file, so both backends run the same code.  Errors come back as
``(code, slot, item, detail)`` tuples; the caller turns them into
exceptions.
"""

from collections import deque


def reachable(adj, a, b):
    """Bidirectional BFS between a and b, always growing the smaller side."""
    if a == b:
        return True
    seen_a = {a}
    seen_b = {b}
    front_a = [a]
    front_b = [b]
    while front_a and front_b:
        if len(front_a) > len(front_b):
            front_a, front_b = front_b, front_a
            seen_a, seen_b = seen_b, seen_a
        nxt = []
        for u in front_a:
            for w in adj[u]:
                if w in seen_b:
                    return True
                if w not in seen_a:
                    seen_a.add(w)
                    nxt.append(w)
        front_a = nxt
    return False


def connected(adj):
    if not adj:
        return True
    start = next(iter(adj))
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(adj)


def delete_edges(adj, edges):
    """Delete ``edges`` in order, refusing any deletion that would disconnect.

    Returns ``(deleted, refused)``; the graph must be connected on entry.
    If removing everything leaves the graph connected we are done after one
    traversal.  Otherwise edges whose endpoints stay joined without any
    candidate are always safe, and the rest are decided one by one on the
    multigraph of components.
    """
    for u, w in edges:
        adj[u].discard(w)
        adj[w].discard(u)
    if connected(adj):
        return list(edges), []
    comp = {}
    for s in adj:
        if s in comp:
            continue
        comp[s] = s
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in comp:
                    comp[w] = s
                    queue.append(w)
    risky = [e for e in edges if comp[e[0]] != comp[e[1]]]
    cadj = {}
    for u, w in risky:
        a = comp[u]
        b = comp[w]
        cadj.setdefault(a, {})
        cadj.setdefault(b, {})
        cadj[a][b] = cadj[a].get(b, 0) + 1
        cadj[b][a] = cadj[b].get(a, 0) + 1
    refused = []
    for e in risky:
        a = comp[e[0]]
        b = comp[e[1]]
        cadj[a][b] -= 1
        cadj[b][a] -= 1
        if cadj[a][b] == 0:
            del cadj[a][b]
            del cadj[b][a]
            if not reachable(cadj, a, b):
                cadj[a][b] = 1
                cadj[b][a] = 1
                refused.append(e)
    if not refused:
        return list(edges), []
    gone = set(refused)
    for u, w in refused:
        adj[u].add(w)
        adj[w].add(u)
    return [e for e in edges if e not in gone], refused


def bfs_ball(adj, src, radius):
    dist = {src: 0}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        du = dist[u]
        if du >= radius:
            continue
        for w in adj[u]:
            if w not in dist:
                dist[w] = du + 1
                queue.append(w)
    return dist


def run(d, initiator, slots):
    """Simulate; ``slots`` is a sequence of ``(generations, deletions)``.

    Returns ``(error, birth, parent, activation, deletion, slot_children)``
    where ``error`` is None on success.
    """
    adj = {initiator: set()}
    birth = {initiator: 0}
    parent = {initiator: None}
    activation = {}
    deletion = {}
    slot_children = []
    t = 0
    for gens, dels in slots:
        t += 1
        used = set()
        born = set()
        new_edges = []
        balls = {}
        for g in gens:
            p = g[0]
            c = g[1]
            act = g[2]
            code = None
            if p not in adj:
                code = "UNKNOWN_PARENT"
            elif p in used:
                code = "DUPLICATE_PARENT"
            elif c in adj or c in born:
                code = "DUPLICATE_CHILD"
            elif p not in act:
                code = "MISSING_PARENT_EDGE"
            if code is not None:
                return (code, t, (p, c, tuple(sorted(act))), ""), None, None, None, None, None
            used.add(p)
            born.add(c)
            if d == 2:
                near = adj[p]
                for w in act:
                    if w != p and w not in near:
                        return _illegal(adj, t, p, c, act, w, d)
                    new_edges.append((c, w) if c < w else (w, c))
            else:
                if d == 1:
                    legal = {p}
                else:
                    legal = balls.get(p)
                    if legal is None:
                        legal = bfs_ball(adj, p, d - 1)
                        balls[p] = legal
                for w in act:
                    if w not in legal:
                        return _illegal(adj, t, p, c, act, w, d)
                    new_edges.append((c, w) if c < w else (w, c))
        kids = []
        for g in gens:
            c = g[1]
            adj[c] = set()
            birth[c] = t
            parent[c] = g[0]
            kids.append(c)
        for e in new_edges:
            adj[e[0]].add(e[1])
            adj[e[1]].add(e[0])
            activation[e] = t
        if dels:
            for e in dels:
                if e[0] not in adj or e[1] not in adj[e[0]]:
                    return ("UNKNOWN_EDGE_DELETION", t, e, ""), None, None, None, None, None
            done, refused = delete_edges(adj, list(dels))
            if refused:
                return ("DISCONNECTING_DELETION", t, refused[0], ""), None, None, None, None, None
            for e in dels:
                deletion[e] = t
        slot_children.append(kids)
    return None, birth, parent, activation, deletion, slot_children


def run_final(d, initiator, slots):
    """Like :func:`run` but keeps only what validation needs.

    Returns ``(error, vertices, final_edges, deleted, max_lifetime)``.
    """
    err, birth, _, activation, deletion, _ = run(d, initiator, slots)
    if err is not None:
        return err, None, None, 0, 0
    life = max([t - activation[e] for e, t in deletion.items()], default=0)
    return None, set(birth), activation.keys() - deletion.keys(), len(deletion), life


def _illegal(adj, t, p, c, act, w, d):
    why = "not present" if w not in adj else "farther than %d from parent" % (d - 1)
    err = ("ILLEGAL_ACTIVATION", t, (p, c, tuple(sorted(act))), "vertex %r %s" % (w, why))
    return err, None, None, None, None, None


def relay_last_use(d, initiator, slots, excess):
    """Last slot in which each excess edge serves as a relay.

    With d=2 a child of p wired to w relies on edge pw.  For larger d one
    shortest p-w path (smallest labels first) in the deferred graph is
    charged.
    """
    last = {}
    if d == 2:
        t = 0
        for gens, _ in slots:
            t += 1
            for g in gens:
                p = g[0]
                for w in g[2]:
                    if w != p:
                        e = (p, w) if p < w else (w, p)
                        if e in excess:
                            last[e] = t
        return last
    if d == 1:
        return last
    adj = {initiator: set()}
    t = 0
    for gens, _ in slots:
        t += 1
        for g in gens:
            p = g[0]
            for w in g[2]:
                if w == p:
                    continue
                prev = {p: None}
                queue = deque([p])
                while queue:
                    u = queue.popleft()
                    if u == w:
                        break
                    for x in sorted(adj[u]):
                        if x not in prev:
                            prev[x] = u
                            queue.append(x)
                x = w
                while prev[x] is not None:
                    y = prev[x]
                    e = (x, y) if x < y else (y, x)
                    if e in excess:
                        last[e] = t
                    x = y
        for g in gens:
            adj[g[1]] = set()
        for g in gens:
            c = g[1]
            for w in g[2]:
                adj[c].add(w)
                adj[w].add(c)
    return last


def retime(initiator, slots, due):
    """Replay generations, deleting ``due[t]`` at the end of slot t and
    postponing whatever would disconnect.  Returns per-slot deletion lists
    and the edges still pending after the last slot."""
    adj = {initiator: set()}
    carry = []
    out = []
    t = 0
    for gens, _ in slots:
        t += 1
        for g in gens:
            adj[g[1]] = set()
        for g in gens:
            c = g[1]
            for w in g[2]:
                adj[c].add(w)
                adj[w].add(c)
        todo = due.get(t)
        if carry:
            todo = sorted(set(carry) | set(todo or ()))
        elif todo:
            todo = sorted(todo)
        if todo:
            done, carry = delete_edges(adj, todo)
        else:
            done = []
        out.append(done)
    return out, carry


def normalize_core(d, initiator, slots):
    """Simulate with every deletion deferred to the final slot, then retime.

    Returns ``(error, vertices, final_edges, per_slot_deletions, pending)``.
    """
    excess = sorted({e for _, dels in slots for e in dels})
    deferred = [(gens, ()) for gens, _ in slots]
    if deferred and excess:
        deferred[-1] = (deferred[-1][0], excess)
    err, birth, _, activation, deletion, _ = run(d, initiator, deferred)
    if err is not None:
        return err, None, None, None, None
    final = {e for e in activation if e not in deletion}
    if not deletion:
        return None, set(birth), final, [[] for _ in slots], []
    last = relay_last_use(d, initiator, slots, deletion)
    due = {}
    for e in deletion:
        t = activation[e]
        u = last.get(e, 0)
        if u > t:
            t = u
        if t in due:
            due[t].append(e)
        else:
            due[t] = [e]
    out, carry = retime(initiator, slots, due)
    return None, set(birth), final, out, carry
