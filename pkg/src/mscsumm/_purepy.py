"""Reference (pure Python) versions of the hot graph kernels.

Both kernels work on integer node ids and CSR adjacency arrays so the compiled
module in ``_speedups.pyx`` can share the exact same calling convention.  Any
change here must be mirrored there; ``tests/test_kernels.py`` runs both.
"""
from __future__ import annotations

import heapq
import math

INF = math.inf


def core_numbers(n, indptr, indices, weights):
    """Generalized (weighted) k-core peeling.

    Repeatedly removes the node with minimum current weighted degree; ties go to
    the lowest node id.  The core number of a removed node is the max of its
    degree at removal time and every core number assigned before it.
    """
    deg = [0] * n
    for u in range(n):
        s = 0
        for e in range(indptr[u], indptr[u + 1]):
            s += int(weights[e])
        deg[u] = s
    heap = [(deg[u], u) for u in range(n)]
    heapq.heapify(heap)
    removed = [False] * n
    core = [0] * n
    k = 0
    while heap:
        d, u = heapq.heappop(heap)
        if removed[u] or d != deg[u]:
            continue
        removed[u] = True
        if d > k:
            k = d
        core[u] = k
        for e in range(indptr[u], indptr[u + 1]):
            v = indices[e]
            if not removed[v]:
                deg[v] -= int(weights[e])
                heapq.heappush(heap, (deg[v], v))
    return core


def _reverse_dijkstra(n, rptr, rind, rw, target, blocked):
    dist = [INF] * n
    if blocked[target]:
        return dist
    dist[target] = 0.0
    done = [False] * n
    heap = [(0.0, target)]
    while heap:
        d, v = heapq.heappop(heap)
        if done[v]:
            continue
        done[v] = True
        for e in range(rptr[v], rptr[v + 1]):
            u = rind[e]
            if blocked[u] or done[u]:
                continue
            nd = dist[v] + rw[e]
            if nd < dist[u]:
                dist[u] = nd
                heapq.heappush(heap, (nd, u))
    return dist


def _spur_path(n, ptr, ind, w, rptr, rind, rw, spur, target, blocked, banned_next):
    """Lexicographically smallest shortest path spur -> target.

    ``blocked`` nodes (the root path, spur included) are unusable after the
    first step; ``banned_next`` lists successors of ``spur`` that are cut.
    """
    dist = _reverse_dijkstra(n, rptr, rind, rw, target, blocked)
    best = INF
    first = -1
    for e in range(ptr[spur], ptr[spur + 1]):
        v = ind[e]
        if v in banned_next or (blocked[v] and v != target):
            continue
        if v == target:
            total = w[e]
        else:
            if dist[v] == INF:
                continue
            total = w[e] + dist[v]
        if total < best or (total == best and v < first):
            best = total
            first = v
    if first < 0:
        return None
    path = [spur, first]
    u = first
    while u != target:
        nxt = -1
        for e in range(ptr[u], ptr[u + 1]):
            v = ind[e]
            if blocked[v] or dist[v] == INF:
                continue
            if w[e] + dist[v] == dist[u] and (nxt < 0 or v < nxt):
                nxt = v
        u = nxt
        path.append(u)
    return path


def _path_cost(ptr, ind, w, path):
    cost = 0.0
    for a, b in zip(path, path[1:]):
        for e in range(ptr[a], ptr[a + 1]):
            if ind[e] == b:
                cost += w[e]
                break
    return cost


def k_shortest_paths(n, ptr, ind, w, rptr, rind, rw, source, target, k):
    """Yen's loopless K-shortest paths, ordered by (cost, node sequence)."""
    if k <= 0:
        return []
    blocked = [False] * n
    blocked[source] = True
    first = _spur_path(n, ptr, ind, w, rptr, rind, rw, source, target, blocked, ())
    if first is None:
        return []
    found = [(_path_cost(ptr, ind, w, first), tuple(first))]
    seen = {found[0][1]}
    pool = []
    while len(found) < k:
        prev = found[-1][1]
        for i in range(len(prev) - 1):
            root = prev[: i + 1]
            banned = {p[i + 1] for _, p in found if len(p) > i + 1 and p[: i + 1] == root}
            blocked = [False] * n
            for u in root:
                blocked[u] = True
            spur = _spur_path(n, ptr, ind, w, rptr, rind, rw, prev[i], target, blocked, banned)
            if spur is None:
                continue
            cand = root[:-1] + tuple(spur)
            if cand in seen:
                continue
            seen.add(cand)
            heapq.heappush(pool, (_path_cost(ptr, ind, w, cand), cand))
        if not pool:
            break
        found.append(heapq.heappop(pool))
    return found
