# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``_purepy``.

Same signatures and same tie-breaking; results must be identical, including
the floating point path costs (sums are accumulated in the same order).
"""
import heapq

import numpy as np
cimport numpy as cnp
from libc.math cimport INFINITY
from libc.stdlib cimport malloc, free

cnp.import_array()


# -- minimal binary heap keyed on (double key, int node) -------------------

cdef inline bint _less(double ka, int na, double kb, int nb) nogil:
    return ka < kb or (ka == kb and na < nb)


cdef void _push(double* keys, int* nodes, int* size, double k, int v) nogil:
    cdef int i = size[0]
    cdef int parent
    size[0] += 1
    while i > 0:
        parent = (i - 1) >> 1
        if _less(k, v, keys[parent], nodes[parent]):
            keys[i] = keys[parent]
            nodes[i] = nodes[parent]
            i = parent
        else:
            break
    keys[i] = k
    nodes[i] = v


cdef void _pop(double* keys, int* nodes, int* size, double* k, int* v) nogil:
    cdef int n, i, child
    cdef double lk
    cdef int lv
    k[0] = keys[0]
    v[0] = nodes[0]
    size[0] -= 1
    n = size[0]
    if n == 0:
        return
    lk = keys[n]
    lv = nodes[n]
    i = 0
    while True:
        child = 2 * i + 1
        if child >= n:
            break
        if child + 1 < n and _less(keys[child + 1], nodes[child + 1], keys[child], nodes[child]):
            child += 1
        if _less(keys[child], nodes[child], lk, lv):
            keys[i] = keys[child]
            nodes[i] = nodes[child]
            i = child
        else:
            break
    keys[i] = lk
    nodes[i] = lv


def core_numbers(int n, indptr, indices, weights):
    cdef cnp.int64_t[:] ptr = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef cnp.int64_t[:] ind = np.ascontiguousarray(indices, dtype=np.int64)
    cdef cnp.int64_t[:] wt = np.ascontiguousarray(weights, dtype=np.int64)
    cdef cnp.int64_t[:] deg = np.zeros(n, dtype=np.int64)
    cdef cnp.int64_t[:] core = np.zeros(n, dtype=np.int64)
    cdef cnp.uint8_t[:] removed = np.zeros(n, dtype=np.uint8)
    cdef Py_ssize_t m = ind.shape[0]
    cdef int cap = n + <int>m + 1
    cdef double* keys = <double*>malloc(cap * sizeof(double))
    cdef int* nodes = <int*>malloc(cap * sizeof(int))
    cdef int size = 0
    cdef int u, v
    cdef Py_ssize_t e
    cdef double d
    cdef cnp.int64_t k = 0, s
    if keys == NULL or nodes == NULL:
        free(keys)
        free(nodes)
        raise MemoryError()
    try:
        with nogil:
            for u in range(n):
                s = 0
                for e in range(ptr[u], ptr[u + 1]):
                    s += wt[e]
                deg[u] = s
                _push(keys, nodes, &size, <double>s, u)
            while size > 0:
                _pop(keys, nodes, &size, &d, &u)
                if removed[u] or <cnp.int64_t>d != deg[u]:
                    continue
                removed[u] = 1
                if deg[u] > k:
                    k = deg[u]
                core[u] = k
                for e in range(ptr[u], ptr[u + 1]):
                    v = <int>ind[e]
                    if not removed[v]:
                        deg[v] -= wt[e]
                        _push(keys, nodes, &size, <double>deg[v], v)
    finally:
        free(keys)
        free(nodes)
    return [int(c) for c in core]


cdef class _Graph:
    cdef int n
    cdef cnp.int64_t[:] ptr, ind, rptr, rind
    cdef double[:] w, rw
    cdef double[:] dist
    cdef cnp.uint8_t[:] done
    cdef double* hkeys
    cdef int* hnodes

    def __cinit__(self, int n, ptr, ind, w, rptr, rind, rw):
        self.n = n
        self.ptr = np.ascontiguousarray(ptr, dtype=np.int64)
        self.ind = np.ascontiguousarray(ind, dtype=np.int64)
        self.w = np.ascontiguousarray(w, dtype=np.float64)
        self.rptr = np.ascontiguousarray(rptr, dtype=np.int64)
        self.rind = np.ascontiguousarray(rind, dtype=np.int64)
        self.rw = np.ascontiguousarray(rw, dtype=np.float64)
        self.dist = np.empty(n, dtype=np.float64)
        self.done = np.empty(n, dtype=np.uint8)
        cap = n + self.rind.shape[0] + 1
        self.hkeys = <double*>malloc(cap * sizeof(double))
        self.hnodes = <int*>malloc(cap * sizeof(int))
        if self.hkeys == NULL or self.hnodes == NULL:
            raise MemoryError()

    def __dealloc__(self):
        free(self.hkeys)
        free(self.hnodes)

    cdef void reverse_dijkstra(self, int target, cnp.uint8_t[:] blocked) nogil:
        cdef int i, v, u
        cdef int size = 0
        cdef double d, nd
        cdef Py_ssize_t e
        for i in range(self.n):
            self.dist[i] = INFINITY
            self.done[i] = 0
        if blocked[target]:
            return
        self.dist[target] = 0.0
        _push(self.hkeys, self.hnodes, &size, 0.0, target)
        while size > 0:
            _pop(self.hkeys, self.hnodes, &size, &d, &v)
            if self.done[v]:
                continue
            self.done[v] = 1
            for e in range(self.rptr[v], self.rptr[v + 1]):
                u = <int>self.rind[e]
                if blocked[u] or self.done[u]:
                    continue
                nd = self.dist[v] + self.rw[e]
                if nd < self.dist[u]:
                    self.dist[u] = nd
                    _push(self.hkeys, self.hnodes, &size, nd, u)

    cdef list spur_path(self, int spur, int target, cnp.uint8_t[:] blocked, set banned):
        cdef double best = INFINITY
        cdef double total
        cdef int first = -1
        cdef int u, v, nxt
        cdef Py_ssize_t e
        self.reverse_dijkstra(target, blocked)
        for e in range(self.ptr[spur], self.ptr[spur + 1]):
            v = <int>self.ind[e]
            if v in banned or (blocked[v] and v != target):
                continue
            if v == target:
                total = self.w[e]
            else:
                if self.dist[v] == INFINITY:
                    continue
                total = self.w[e] + self.dist[v]
            if total < best or (total == best and v < first):
                best = total
                first = v
        if first < 0:
            return None
        path = [spur, first]
        u = first
        while u != target:
            nxt = -1
            for e in range(self.ptr[u], self.ptr[u + 1]):
                v = <int>self.ind[e]
                if blocked[v] or self.dist[v] == INFINITY:
                    continue
                if self.w[e] + self.dist[v] == self.dist[u] and (nxt < 0 or v < nxt):
                    nxt = v
            u = nxt
            path.append(u)
        return path

    cdef double cost(self, tuple path):
        cdef double c = 0.0
        cdef Py_ssize_t i, e
        cdef int a, b
        for i in range(len(path) - 1):
            a = path[i]
            b = path[i + 1]
            for e in range(self.ptr[a], self.ptr[a + 1]):
                if self.ind[e] == b:
                    c += self.w[e]
                    break
        return c


def k_shortest_paths(int n, ptr, ind, w, rptr, rind, rw, int source, int target, int k):
    if k <= 0:
        return []
    cdef _Graph g = _Graph(n, ptr, ind, w, rptr, rind, rw)
    cdef cnp.uint8_t[:] blocked = np.zeros(n, dtype=np.uint8)
    cdef Py_ssize_t i
    blocked[source] = 1
    first = g.spur_path(source, target, blocked, set())
    if first is None:
        return []
    tfirst = tuple(first)
    found = [(g.cost(tfirst), tfirst)]
    seen = {tfirst}
    pool = []
    while len(found) < k:
        prev = found[len(found) - 1][1]
        for i in range(len(prev) - 1):
            root = prev[: i + 1]
            banned = {p[i + 1] for _, p in found if len(p) > i + 1 and p[: i + 1] == root}
            blocked[:] = 0
            for u in root:
                blocked[u] = 1
            spur = g.spur_path(prev[i], target, blocked, banned)
            if spur is None:
                continue
            cand = root[: len(root) - 1] + tuple(spur)
            if cand in seen:
                continue
            seen.add(cand)
            heapq.heappush(pool, (g.cost(cand), cand))
        if not pool:
            break
        found.append(heapq.heappop(pool))
    return found
