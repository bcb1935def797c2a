"""Bucketed hash table with interleaved storage, plus its cost model."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

import numpy as np


class CapacityExhausted(RuntimeError):
    """Every bucket of a hash table is full."""


@dataclass
class SchedulerConfig:
    large_degree_threshold: int = 100
    skip_degree_below: int = 2
    chunk_size: int = 1
    lane_width_small: int = 32
    lane_width_large: int = 256
    bucket_count_small: int = 32
    bucket_count_large: int = 1024
    capacity: int = 128

    def __post_init__(self):
        for name, value in asdict(self).items():
            if int(value) < 1:
                raise ValueError(f"{name} must be >= 1, got {value}")
        if self.skip_degree_below > self.large_degree_threshold:
            raise ValueError("skip_degree_below must not exceed large_degree_threshold")


@dataclass
class CountReport:
    triangles: int = 0
    max_collision: int = 0
    phi: int = 0
    per_worker_nanos: list = field(default_factory=list)
    teps: float = 0.0
    hash_construct_nanos: int = 0
    intersect_nanos: int = 0
    elapsed_nanos: int = 0
    edges: int = 0
    # partitioned runs only
    per_subtask_nanos: list = field(default_factory=list)
    time_ir: float | None = None
    worker_time_ir: float | None = None
    space_ir: float | None = None
    repeat: int = 1
    elapsed_min_nanos: int = 0

    def to_dict(self) -> dict:
        d = {
            "schema": 1,
            "triangles": self.triangles,
            "max_collision": self.max_collision,
            "phi": self.phi,
            "teps": self.teps,
            "construct_ns": self.hash_construct_nanos,
            "intersect_ns": self.intersect_nanos,
            "elapsed_ns": self.elapsed_nanos,
            "per_worker_ns": list(self.per_worker_nanos),
        }
        if self.per_subtask_nanos:
            d["per_subtask_ns"] = list(self.per_subtask_nanos)
            d["time_ir"] = self.time_ir
            d["worker_time_ir"] = self.worker_time_ir
            d["space_ir"] = self.space_ir
        if self.repeat > 1:
            d["repeat"] = self.repeat
            d["elapsed_ns_min"] = self.elapsed_min_nanos
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_csv(self) -> str:
        cols = ["triangles", "max_collision", "phi", "teps", "construct_ns", "intersect_ns",
                "per_worker_ns"]
        d = self.to_dict()
        d["per_worker_ns"] = ";".join(str(x) for x in d["per_worker_ns"])
        return ",".join(cols) + "\n" + ",".join(str(d[c]) for c in cols) + "\n"


class HashTable:
    """Fixed bucket count and bucket capacity, buckets interleaved in memory.

    Element ``j`` of bucket ``i`` is stored at ``elements[j * bucket_count + i]``,
    so row ``j`` of the flat array holds the ``j``-th entry of every bucket.
    A full home bucket spills into the next non-full bucket (wrapping).

    >>> t = HashTable(4, 8)
    >>> t.build([4, 5, 6, 3, 8])
    >>> t.lens.tolist()
    [2, 1, 1, 1]
    >>> t.probe(8), t.probe(9)
    (1, 0)
    """

    def __init__(self, bucket_count: int, capacity: int):
        if bucket_count < 1 or capacity < 1:
            raise ValueError("bucket_count and capacity must be >= 1")
        self.bucket_count = bucket_count
        self.capacity = capacity
        self.lens = np.zeros(bucket_count, dtype=np.int64)
        self.elements = np.full(bucket_count * capacity, -1, dtype=np.int64)
        self.overflowed = False

    def __len__(self):
        return int(self.lens.sum())

    def reset(self):
        # stale elements are left behind; len governs what is visible
        self.lens[:] = 0
        self.overflowed = False

    def slot(self, bucket: int, j: int) -> int:
        return j * self.bucket_count + bucket

    def bucket(self, i: int) -> list:
        return [int(self.elements[self.slot(i, j)]) for j in range(int(self.lens[i]))]

    def insert(self, v: int):
        B, C = self.bucket_count, self.capacity
        home = i = v % B
        while self.lens[i] == C:
            self.overflowed = True
            i = (i + 1) % B
            if i == home:
                raise CapacityExhausted(
                    f"all {B} buckets of capacity {C} are full while inserting {v}")
        self.elements[self.slot(i, int(self.lens[i]))] = v
        self.lens[i] += 1

    def build(self, neighbors):
        self.reset()
        for v in neighbors:
            self.insert(int(v))

    def probe(self, w: int) -> int:
        B, C = self.bucket_count, self.capacity
        home = i = w % B
        while True:
            n = int(self.lens[i])
            for j in range(n):
                if self.elements[j * B + i] == w:
                    return 1
            if n < C:
                return 0
            i = (i + 1) % B
            if i == home:
                return 0

    def max_collision(self) -> int:
        return int(self.lens.max()) if self.bucket_count else 0


def build_table(table: HashTable, neighbors) -> HashTable:
    table.build(neighbors)
    return table


def probe(table: HashTable, w: int) -> int:
    return table.probe(w)


def virtual_index(prefix, k: int) -> tuple[int, int]:
    """Locate flat 2-hop index ``k`` in an inclusive degree prefix sum.

    Returns ``(p, off)``: the position ``p`` in the 1-hop list whose neighbor
    list covers ``k``, and the offset inside that list.

    >>> virtual_index([7, 10, 12, 18, 23], 11)
    (2, 1)
    """
    prefix = np.asarray(prefix)
    if len(prefix) == 0 or not 0 <= k < prefix[-1]:
        raise IndexError(f"flat index {k} outside [0, {prefix[-1] if len(prefix) else 0})")
    p = int(np.searchsorted(prefix, k, side="right"))
    lo = int(prefix[p - 1]) if p else 0
    return p, k - lo


def bucket_lengths(neighbors, bucket_count: int) -> np.ndarray:
    """Per-bucket occupancy of ``x mod bucket_count`` without probing."""
    return np.bincount(np.asarray(neighbors, dtype=np.int64) % bucket_count,
                       minlength=bucket_count)


def estimate_cost(g, bucket_count: int) -> tuple[int, int]:
    """Cost estimate: sum over u of collective degree times max bucket load.

    Returns ``(phi, max_collision)`` where ``max_collision`` is the largest
    bucket occupancy over every vertex's table.
    """
    csr = g.csr
    deg = csr.degrees
    n = csr.vertex_count
    if csr.edge_count == 0:
        return 0, 0
    src = np.repeat(np.arange(n), deg)
    adj = csr.adjacency.astype(np.int64)
    coll = np.zeros(n, dtype=np.int64)
    np.add.at(coll, src, deg[adj])
    # per (vertex, bucket) occupancy, then max per vertex
    key = src * bucket_count + adj % bucket_count
    uniq, counts = np.unique(key, return_counts=True)
    maxlen = np.zeros(n, dtype=np.int64)
    np.maximum.at(maxlen, uniq // bucket_count, counts)
    return int((coll * maxlen).sum()), int(maxlen.max())
