# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled counting kernel; see _pykernels.py for the reference twin."""

import numpy as np

from posix.time cimport clock_gettime, timespec, CLOCK_MONOTONIC

ctypedef long long i64
ctypedef int i32

cdef extern from *:
    """
    static inline long long hashtc_fetch_add(long long *p, long long v) {
        return __atomic_fetch_add(p, v, __ATOMIC_RELAXED);
    }
    """
    i64 hashtc_fetch_add(i64 *p, i64 v) nogil

BACKEND = "cython"


cdef inline i64 _now() noexcept nogil:
    cdef timespec ts
    clock_gettime(CLOCK_MONOTONIC, &ts)
    return <i64>ts.tv_sec * 1000000000 + ts.tv_nsec


def prepare(arr):
    return np.ascontiguousarray(arr)


def new_table(i64 max_buckets, i64 capacity):
    return (np.zeros(max_buckets, dtype=np.int64),
            np.full(max_buckets * capacity, -1, dtype=np.int32))


def new_cursor():
    return np.zeros(1, dtype=np.int64)


cdef inline i64 _home(i32 v, i64 B) noexcept nogil:
    # ids are non-negative; a mask beats the division when B is a power of two
    if B & (B - 1) == 0:
        return v & (B - 1)
    return <unsigned int>v % <unsigned int>B


cdef inline int _build(i64 *lens, i32 *elems, const i32 *adj, i64 lo, i64 hi,
                       i64 B, i64 C) noexcept nogil:
    cdef i64 i, k, home, b
    cdef i32 v
    for i in range(B):
        lens[i] = 0
    for k in range(lo, hi):
        v = adj[k]
        home = _home(v, B)
        b = home
        while lens[b] == C:
            b += 1
            if b == B:
                b = 0
            if b == home:
                return -1
        elems[lens[b] * B + b] = v
        lens[b] += 1
    return 0


cdef inline int _probe(const i64 *lens, const i32 *elems, i32 w, i64 B, i64 C) noexcept nogil:
    cdef i64 home = _home(w, B)
    cdef i64 b = home
    cdef i64 j, n
    cdef const i32 *row
    while True:
        n = lens[b]
        row = elems + b
        for j in range(n):
            if row[j * B] == w:
                return 1
        if n < C:
            return 0
        b += 1
        if b == B:
            b = 0
        if b == home:
            return 0


cdef inline i64 _maxlen(const i64 *lens, i64 B) noexcept nogil:
    cdef i64 i, m = 0
    for i in range(B):
        if lens[i] > m:
            m = lens[i]
    return m


def count_vertices(const i64[::1] vertices, i64[::1] cursor, i64 chunk,
                   const i64[::1] hash_begin_v, const i32[::1] hash_adj_v,
                   const i64[::1] hop1_begin_v, const i32[::1] hop1_adj_v,
                   const i64[::1] hop2_begin_v, const i32[::1] hop2_adj_v,
                   table, i64[::1] prefix_v,
                   i64 large_threshold, i64 b_small, i64 b_large,
                   i64 w_small, i64 w_large, i64 capacity, bint edge_centric):
    """Claim ``chunk`` vertices at a time from ``cursor`` until ``vertices`` is drained.

    Returns ``(count, construct_ns, intersect_ns, max_len, phi, failed_vertex)``;
    ``failed_vertex`` is -1 unless a table ran out of capacity.
    """
    cdef i64[::1] lens_v = table[0]
    cdef i32[::1] elems_v = table[1]
    cdef i64 *lens = &lens_v[0]
    cdef i32 *elems = &elems_v[0]
    cdef i64 *prefix = &prefix_v[0]
    cdef i64 *cur = &cursor[0]
    cdef const i64 *hash_begin = &hash_begin_v[0]
    cdef const i64 *hop1_begin = &hop1_begin_v[0]
    cdef const i64 *hop2_begin = &hop2_begin_v[0]
    # adjacency arrays may be empty
    cdef const i32 *hash_adj = &hash_adj_v[0] if hash_adj_v.shape[0] else NULL
    cdef const i32 *hop1_adj = &hop1_adj_v[0] if hop1_adj_v.shape[0] else NULL
    cdef const i32 *hop2_adj = &hop2_adj_v[0] if hop2_adj_v.shape[0] else NULL
    cdef const i32 *nbr
    cdef const i32 *two
    cdef i64 nverts = vertices.shape[0]
    cdef i64 count = 0, t_build = 0, t_isect = 0, max_len = 0, phi = 0
    cdef i64 start, end, idx, u, B, W, d1, p, q, total, base, k, stop, off, lo, t0, t1, m, e, v
    cdef i64 failed = -1

    with nogil:
        while failed < 0:
            start = hashtc_fetch_add(cur, chunk)
            if start >= nverts:
                break
            end = start + chunk
            if end > nverts:
                end = nverts
            for idx in range(start, end):
                u = vertices[idx]
                d1 = hop1_begin[u + 1] - hop1_begin[u]
                nbr = hop1_adj + hop1_begin[u]
                if d1 > large_threshold:
                    B = b_large
                    W = w_large
                else:
                    B = b_small
                    W = w_small

                # inclusive prefix of 2-hop list lengths
                total = 0
                for p in range(d1):
                    v = nbr[p]
                    total += hop2_begin[v + 1] - hop2_begin[v]
                    prefix[p] = total

                if not edge_centric:
                    t0 = _now()
                    if _build(lens, elems, hash_adj, hash_begin[u], hash_begin[u + 1],
                              B, capacity):
                        failed = u
                        break
                    t1 = _now()
                    t_build += t1 - t0
                    m = _maxlen(lens, B)
                    if m > max_len:
                        max_len = m
                    phi += total * m
                    # flattened 2-hop list, one lane batch at a time
                    base = 0
                    while base < total:
                        stop = base + W
                        if stop > total:
                            stop = total
                        lo = 0
                        q = d1
                        while lo < q:
                            p = (lo + q) >> 1
                            if prefix[p] <= base:
                                lo = p + 1
                            else:
                                q = p
                        p = lo
                        two = hop2_adj + hop2_begin[nbr[p]]
                        off = base - (prefix[p - 1] if p > 0 else 0)
                        for k in range(base, stop):
                            while prefix[p] <= k:
                                p += 1
                                two = hop2_adj + hop2_begin[nbr[p]]
                                off = 0
                            count += _probe(lens, elems, two[off], B, capacity)
                            off += 1
                        base = stop
                    t_isect += _now() - t1
                else:
                    for p in range(d1):
                        v = nbr[p]
                        t0 = _now()
                        if _build(lens, elems, hash_adj, hash_begin[u], hash_begin[u + 1],
                                  B, capacity):
                            failed = u
                            break
                        t1 = _now()
                        t_build += t1 - t0
                        if p == 0:
                            m = _maxlen(lens, B)
                            if m > max_len:
                                max_len = m
                            phi += total * m
                        for e in range(hop2_begin[v], hop2_begin[v + 1]):
                            count += _probe(lens, elems, hop2_adj[e], B, capacity)
                        t_isect += _now() - t1
                    if failed >= 0:
                        break
    return count, t_build, t_isect, max_len, phi, failed
