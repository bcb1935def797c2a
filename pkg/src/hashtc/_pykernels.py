"""Pure-Python counting kernel, used when the compiled extension is unavailable.

Mirrors ``_kernels.pyx`` line for line; inputs are plain lists (see ``prepare``).
"""

import itertools
from time import perf_counter_ns as _now

BACKEND = "python"


def prepare(arr):
    return arr.tolist()


def new_table(max_buckets, capacity):
    return [0] * max_buckets, [-1] * (max_buckets * capacity)


def new_cursor():
    # next() on a count is atomic under the GIL; yields chunk indices
    return itertools.count()


def _build(lens, elems, adj, lo, hi, B, C):
    for i in range(B):
        lens[i] = 0
    for k in range(lo, hi):
        v = adj[k]
        home = b = v % B
        while lens[b] == C:
            b += 1
            if b == B:
                b = 0
            if b == home:
                return -1
        elems[lens[b] * B + b] = v
        lens[b] += 1
    return 0


def _probe(lens, elems, w, B, C):
    home = b = w % B
    while True:
        n = lens[b]
        for j in range(n):
            if elems[j * B + b] == w:
                return 1
        if n < C:
            return 0
        b += 1
        if b == B:
            b = 0
        if b == home:
            return 0


def _claim(vertices, cursor, chunk, nverts):
    while True:
        start = next(cursor) * chunk
        if start >= nverts:
            return
        yield from vertices[start:start + chunk]


def count_vertices(vertices, cursor, chunk, hash_begin, hash_adj, hop1_begin, hop1_adj, hop2_begin, hop2_adj,
                   table, prefix, large_threshold, b_small, b_large, w_small, w_large,
                   capacity, edge_centric):
    lens, elems = table
    count = t_build = t_isect = max_len = phi = 0
    failed = -1
    nverts = len(vertices)
    for u in _claim(vertices, cursor, chunk, nverts):
        d1 = hop1_begin[u + 1] - hop1_begin[u]
        if d1 > large_threshold:
            B, W = b_large, w_large
        else:
            B, W = b_small, w_small
        h1 = hop1_begin[u]

        total = 0
        for p in range(d1):
            v = hop1_adj[h1 + p]
            total += hop2_begin[v + 1] - hop2_begin[v]
            prefix[p] = total

        if not edge_centric:
            t0 = _now()
            if _build(lens, elems, hash_adj, hash_begin[u], hash_begin[u + 1], B, capacity):
                failed = u
                break
            t1 = _now()
            t_build += t1 - t0
            m = max(lens[:B])
            max_len = max(max_len, m)
            phi += total * m
            base = 0
            while base < total:
                stop = min(base + W, total)
                lo, hi = 0, d1
                while lo < hi:
                    mid = (lo + hi) >> 1
                    if prefix[mid] <= base:
                        lo = mid + 1
                    else:
                        hi = mid
                p = lo
                for k in range(base, stop):
                    while prefix[p] <= k:
                        p += 1
                    off = k - (prefix[p - 1] if p else 0)
                    v = hop1_adj[h1 + p]
                    count += _probe(lens, elems, hop2_adj[hop2_begin[v] + off], B, capacity)
                base = stop
            t_isect += _now() - t1
        else:
            for p in range(d1):
                v = hop1_adj[h1 + p]
                t0 = _now()
                if _build(lens, elems, hash_adj, hash_begin[u], hash_begin[u + 1], B, capacity):
                    failed = u
                    break
                t1 = _now()
                t_build += t1 - t0
                if p == 0:
                    m = max(lens[:B])
                    max_len = max(max_len, m)
                    phi += total * m
                for e in range(hop2_begin[v], hop2_begin[v + 1]):
                    count += _probe(lens, elems, hop2_adj[e], B, capacity)
                t_isect += _now() - t1
            if failed >= 0:
                break
    return count, t_build, t_isect, max_len, phi, failed
