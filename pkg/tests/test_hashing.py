import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hashtc import (CapacityExhausted, HashTable, OrientedGraph, SchedulerConfig, build_table,
                    estimate_cost, orient_rank_by_degree, probe, virtual_index)
from hashtc.graph_io import csr_from_lists
from hashtc.synthetic import rmat

from graphs import complete, from_pairs, prepared


class TestHashTable:
    def test_home_bucket(self):
        t = build_table(HashTable(10, 4), [18])
        assert t.bucket(8) == [18]
        assert probe(t, 18) == 1

    def test_mod4_buckets(self):
        t = build_table(HashTable(4, 8), [4, 5, 6, 3, 8])
        assert t.lens.tolist() == [2, 1, 1, 1]
        assert [t.bucket(i) for i in range(4)] == [[4, 8], [5], [6], [3]]
        assert probe(t, 9) == 0
        assert len(t) == 5

    def test_empty_probe(self):
        assert probe(HashTable(32, 128), 7) == 0

    def test_capacity_exhausted(self):
        with pytest.raises(CapacityExhausted):
            build_table(HashTable(1, 2), [0, 1, 2])

    def test_interleaved_slots(self):
        t = build_table(HashTable(4, 8), [4, 5, 6, 3, 8, 12, 7])
        for i in range(4):
            for j, v in enumerate(t.bucket(i)):
                assert t.elements[j * 4 + i] == v
        # row 0 holds the first element of every bucket
        assert t.elements[0:4].tolist() == [4, 5, 6, 3]
        assert t.elements[4:8].tolist()[0] == 8 and t.elements[4 + 3] == 7

    def test_layout_matches_worked_example(self):
        # buckets {4,8,12,20,24}, {5,10}, {6,18,22}, {3,7,11,19} stored row by row
        t = HashTable(4, 5)
        for i, bucket in enumerate([[4, 8, 12, 20, 24], [5, 10], [6, 18, 22], [3, 7, 11, 19]]):
            for j, v in enumerate(bucket):
                t.elements[t.slot(i, j)] = v
            t.lens[i] = len(bucket)
        flat = [int(x) if j < t.lens[i] else None
                for j in range(5) for i, x in enumerate(t.elements[j * 4:(j + 1) * 4])]
        assert flat == [4, 5, 6, 3, 8, 10, 18, 7, 12, None, 22, 11, 20, None, None, 19,
                        24, None, None, None]

    def test_linear_probing_recovery(self):
        t = build_table(HashTable(4, 2), [0, 4, 8, 1])
        # bucket 0 full after 0, 4; 8 spills into bucket 1
        assert t.bucket(0) == [0, 4]
        assert t.bucket(1) == [8, 1]
        assert t.overflowed
        for v in (0, 4, 8, 1):
            assert probe(t, v) == 1
        for w in (12, 5, 9, 2):
            assert probe(t, w) == 0

    def test_probe_chain_wraps(self):
        t = build_table(HashTable(3, 1), [2, 5, 8])
        assert [t.bucket(i) for i in range(3)] == [[5], [8], [2]]
        assert all(probe(t, v) for v in (2, 5, 8))
        assert probe(t, 11) == 0

    def test_reset_only_clears_lens(self):
        t = build_table(HashTable(4, 4), [1, 2, 3])
        stale = t.elements.copy()
        t.reset()
        assert t.lens.sum() == 0 and np.array_equal(t.elements, stale)
        assert probe(t, 1) == 0


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 16), st.integers(1, 8),
       st.lists(st.integers(0, 200), unique=True, max_size=60))
def test_insert_probe_roundtrip(B, C, values):
    t = HashTable(B, C)
    if len(values) > B * C:
        with pytest.raises(CapacityExhausted):
            t.build(values)
        return
    t.build(values)
    assert len(t) == len(values)
    assert all(0 <= x <= C for x in t.lens)
    stored = set(itertools.chain.from_iterable(t.bucket(i) for i in range(B)))
    assert stored == set(values)
    for v in values:
        assert t.probe(v) == 1
        if not t.overflowed:
            assert v in t.bucket(v % B)
    for w in range(201, 260):
        assert t.probe(w) == 0


class TestVirtualIndex:
    prefix = [7, 10, 12, 18, 23]

    def test_thread_11(self):
        p, off = virtual_index(self.prefix, 11)
        assert (p, off) == (2, 1)
        assert [2, 3, 4, 5, 7][p] == 4

    def test_first(self):
        assert virtual_index(self.prefix, 0) == (0, 0)

    def test_last(self):
        combined = [(p, off) for p, d in enumerate([7, 3, 2, 6, 5]) for off in range(d)]
        assert combined[22] == (4, 4)
        assert virtual_index(self.prefix, 22) == (4, 4)

    @pytest.mark.parametrize("k", [-1, 23, 100])
    def test_out_of_range(self, k):
        with pytest.raises(IndexError):
            virtual_index(self.prefix, k)

    def test_zero_degree_neighbors_skipped(self):
        # degrees [0, 2, 0, 1]: prefix [0, 2, 2, 3]
        assert [virtual_index([0, 2, 2, 3], k) for k in range(3)] == [(1, 0), (1, 1), (3, 0)]


def reference_cost(og, B):
    phi = top = 0
    for u in range(og.vertex_count):
        nbrs = [int(v) for v in og.neighbors(u)]
        if not nbrs:
            continue
        coll = sum(len(og.neighbors(v)) for v in nbrs)
        loads = [sum(1 for v in nbrs if v % B == i) for i in range(B)]
        phi += coll * max(loads)
        top = max(top, max(loads))
    return phi, top


class TestEstimateCost:
    def test_no_edges(self):
        og = OrientedGraph(csr_from_lists([[], []]), np.zeros(2, dtype=np.int64))
        assert estimate_cost(og, 32) == (0, 0)

    def test_star(self):
        og = orient_rank_by_degree(from_pairs([(0, i) for i in range(1, 5)]))
        coll = [sum(len(og.neighbors(v)) for v in og.neighbors(u)) for u in range(5)]
        assert estimate_cost(og, 32) == (sum(coll), 1)

    def test_oriented_k3(self):
        og = orient_rank_by_degree(complete(3))
        assert reference_cost(og, 32) == (1, 1)
        assert estimate_cost(og, 32) == (1, 1)

    @pytest.mark.parametrize("B", [1, 3, 32])
    def test_against_reference_loop(self, B):
        _, og = prepared(rmat(8, 8, 11))
        assert estimate_cost(og, B) == reference_cost(og, B)


class TestSchedulerConfig:
    def test_defaults(self):
        cfg = SchedulerConfig()
        assert (cfg.bucket_count_small, cfg.capacity, cfg.large_degree_threshold) == (32, 128, 100)

    @pytest.mark.parametrize("kw", [{"chunk_size": 0}, {"capacity": -1},
                                    {"skip_degree_below": 200}])
    def test_invalid(self, kw):
        with pytest.raises(ValueError):
            SchedulerConfig(**kw)
