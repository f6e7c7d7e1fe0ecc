"""Pure-Python hot kernels (fallback for :mod:`delsarte._ckernels`).

Both modules expose the same three functions with identical results:

* ``weighted_row_sum(coeffs, rows, width)`` -> ``out[x] = sum_r coeffs[r] * rows[r][x]``
* ``triple_row(a, b, mat)`` -> ``out[k] = sum_m a[m] * b[m] * mat[m][k]``
* ``max_clique(adj, cand, best, node_limit)`` -> ``(clique, complete, nodes)``

Integer inputs are arbitrary-precision Python ints.  For ``max_clique``,
``adj[v]`` is the neighbourhood bitset of vertex ``v`` (a Python int over
vertex indices ``0..N-1``), ``cand`` the candidate bitset and ``best`` an
already-known clique used as the incumbent.  Vertices with small indices are
coloured first, so callers should number vertices by non-increasing degree.
"""
from __future__ import annotations


def weighted_row_sum(coeffs, rows, width):
    out = [0] * width
    for c, row in zip(coeffs, rows):
        if c:
            for x in range(width):
                r = row[x]
                if r:
                    out[x] += c * r
    return out


def triple_row(a, b, mat):
    width = len(mat[0])
    out = [0] * width
    for m in range(len(a)):
        w = a[m] * b[m]
        if w:
            row = mat[m]
            for k in range(width):
                if row[k]:
                    out[k] += w * row[k]
    return out


def _colour_sort(adj, P):
    """Greedy sequential colouring of the bitset ``P``; returns (order, colours)."""
    order = []
    colours = []
    k = 0
    U = P
    while U:
        k += 1
        Q = U
        while Q:
            low = Q & -Q
            v = low.bit_length() - 1
            Q &= ~adj[v]
            Q ^= low
            U ^= low
            order.append(v)
            colours.append(k)
    return order, colours


class _NodeLimit(Exception):
    pass


def max_clique(adj, cand, best, node_limit=0):
    best = list(best)
    R = []
    nodes = 0

    def expand(P):
        nonlocal best, nodes
        nodes += 1
        if node_limit and nodes > node_limit:
            raise _NodeLimit
        order, colours = _colour_sort(adj, P)
        for idx in range(len(order) - 1, -1, -1):
            if len(R) + colours[idx] <= len(best):
                return
            v = order[idx]
            R.append(v)
            newP = P & adj[v]
            if newP:
                expand(newP)
            elif len(R) > len(best):
                best = list(R)
            R.pop()
            P &= ~(1 << v)

    complete = True
    try:
        if cand:
            expand(cand)
    except _NodeLimit:
        complete = False
    return best, complete, nodes
