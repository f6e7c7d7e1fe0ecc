# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; same contract as :mod:`delsarte._pykernels`."""
from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free
from libc.string cimport memcpy


def weighted_row_sum(coeffs, rows, Py_ssize_t width):
    cdef list out = [0] * width
    cdef Py_ssize_t x
    cdef object c, r
    cdef list row
    for c, row_obj in zip(coeffs, rows):
        if c:
            row = list(row_obj)
            for x in range(width):
                r = row[x]
                if r:
                    out[x] = out[x] + c * r
    return out


def triple_row(a, b, mat):
    cdef list rows = [list(r) for r in mat]
    cdef Py_ssize_t width = len(rows[0])
    cdef list out = [0] * width
    cdef Py_ssize_t m, k
    cdef object w, e
    cdef list row
    for m in range(len(a)):
        w = a[m] * b[m]
        if w:
            row = rows[m]
            for k in range(width):
                e = row[k]
                if e:
                    out[k] = out[k] + w * e
    return out


cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil
    int __builtin_popcountll(unsigned long long) nogil


cdef inline int _ctz(uint64_t x) nogil:
    return __builtin_ctzll(x)


cdef struct Search:
    int N
    int W
    uint64_t *adj        # N * W
    int *R
    int rlen
    int *best
    int blen
    long long nodes
    long long node_limit
    int aborted


cdef int _colour_sort(Search *s, uint64_t *P, int *order, int *colours) nogil:
    cdef int W = s.W
    cdef uint64_t *U = <uint64_t *> malloc(W * sizeof(uint64_t))
    cdef uint64_t *Q = <uint64_t *> malloc(W * sizeof(uint64_t))
    cdef int cnt = 0, k = 0, w, v, any_u, any_q
    cdef uint64_t low
    cdef uint64_t *row
    memcpy(U, P, W * sizeof(uint64_t))
    while True:
        any_u = 0
        for w in range(W):
            if U[w]:
                any_u = 1
                break
        if not any_u:
            break
        k += 1
        memcpy(Q, U, W * sizeof(uint64_t))
        w = 0
        while w < W:
            if Q[w] == 0:
                w += 1
                continue
            low = Q[w] & (~Q[w] + 1)
            v = w * 64 + _ctz(Q[w])
            row = s.adj + <Py_ssize_t> v * W
            for any_q in range(W):
                Q[any_q] &= ~row[any_q]
            Q[w] &= ~low
            U[w] &= ~low
            order[cnt] = v
            colours[cnt] = k
            cnt += 1
    free(U)
    free(Q)
    return cnt


cdef void _expand(Search *s, uint64_t *P) nogil:
    cdef int W = s.W
    cdef int cnt, idx, v, w, nonempty
    cdef uint64_t *row
    cdef uint64_t *NP
    cdef int *order
    cdef int *colours
    s.nodes += 1
    if s.node_limit > 0 and s.nodes > s.node_limit:
        s.aborted = 1
        return
    NP = <uint64_t *> malloc(W * sizeof(uint64_t))
    order = <int *> malloc(s.N * sizeof(int))
    colours = <int *> malloc(s.N * sizeof(int))
    cnt = _colour_sort(s, P, order, colours)
    idx = cnt - 1
    while idx >= 0 and not s.aborted:
        if s.rlen + colours[idx] <= s.blen:
            break
        v = order[idx]
        s.R[s.rlen] = v
        s.rlen += 1
        row = s.adj + <Py_ssize_t> v * W
        nonempty = 0
        for w in range(W):
            NP[w] = P[w] & row[w]
            if NP[w]:
                nonempty = 1
        if nonempty:
            _expand(s, NP)
        elif s.rlen > s.blen:
            memcpy(s.best, s.R, s.rlen * sizeof(int))
            s.blen = s.rlen
        s.rlen -= 1
        P[v >> 6] &= ~((<uint64_t> 1) << (v & 63))
        idx -= 1
    free(NP)
    free(order)
    free(colours)


def max_clique(adj, cand, best, long long node_limit=0):
    cdef int N = len(adj)
    cdef int W = (N + 63) // 64 if N > 0 else 1
    cdef Search s
    cdef int v, w, i
    cdef object bits
    cdef uint64_t *root
    if not cand:
        return list(best), True, 0
    s.N = N
    s.W = W
    s.adj = <uint64_t *> malloc(<Py_ssize_t> N * W * sizeof(uint64_t))
    root = <uint64_t *> malloc(W * sizeof(uint64_t))
    s.R = <int *> malloc((N + 1) * sizeof(int))
    s.best = <int *> malloc((N + 1) * sizeof(int))
    if s.adj == NULL or root == NULL or s.R == NULL or s.best == NULL:
        free(s.adj); free(root); free(s.R); free(s.best)
        raise MemoryError("max_clique: cannot allocate search buffers")
    mask = (1 << 64) - 1
    for v in range(N):
        bits = adj[v]
        for w in range(W):
            s.adj[<Py_ssize_t> v * W + w] = <uint64_t> ((bits >> (64 * w)) & mask)
    bits = cand
    for w in range(W):
        root[w] = <uint64_t> ((bits >> (64 * w)) & mask)
    s.blen = len(best)
    for i in range(s.blen):
        s.best[i] = best[i]
    s.rlen = 0
    s.nodes = 0
    s.node_limit = node_limit
    s.aborted = 0
    with nogil:
        _expand(&s, root)
    result = [s.best[i] for i in range(s.blen)]
    nodes = s.nodes
    complete = not s.aborted
    free(s.adj); free(root); free(s.R); free(s.best)
    return result, complete, nodes
