"""Rank-by-degree orientation and collision-reducing vertex reorderings."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph_io import CsrGraph, EdgeList, build_csr

LARGE_DEGREE = 100
SMALL_DEGREE = 2


@dataclass(frozen=True, eq=False)
class OrientedGraph:
    """A DAG in CSR form plus the undirected degrees it was oriented from."""

    csr: CsrGraph
    original_degree: np.ndarray

    @property
    def vertex_count(self) -> int:
        return self.csr.vertex_count

    @property
    def edge_count(self) -> int:
        return self.csr.edge_count

    @property
    def out_degree(self) -> np.ndarray:
        return self.csr.degrees

    @property
    def in_degree(self) -> np.ndarray:
        return np.bincount(self.csr.adjacency, minlength=self.vertex_count)

    def neighbors(self, u):
        return self.csr.neighbors(u)


@dataclass(frozen=True, eq=False)
class Permutation:
    new_of_old: np.ndarray
    old_of_new: np.ndarray

    @classmethod
    def from_order(cls, old_of_new) -> "Permutation":
        old_of_new = np.asarray(old_of_new, dtype=np.int64)
        new_of_old = np.empty_like(old_of_new)
        new_of_old[old_of_new] = np.arange(len(old_of_new))
        return cls(new_of_old, old_of_new)

    @classmethod
    def from_new_of_old(cls, new_of_old) -> "Permutation":
        new_of_old = np.asarray(new_of_old, dtype=np.int64)
        old_of_new = np.empty_like(new_of_old)
        old_of_new[new_of_old] = np.arange(len(new_of_old))
        return cls(new_of_old, old_of_new)

    @classmethod
    def identity(cls, n) -> "Permutation":
        ids = np.arange(n, dtype=np.int64)
        return cls(ids, ids.copy())

    def __len__(self):
        return len(self.new_of_old)

    def is_valid(self) -> bool:
        n = len(self.new_of_old)
        if len(self.old_of_new) != n:
            return False
        if n == 0:
            return True
        seen = np.zeros(n, dtype=bool)
        if self.new_of_old.min() < 0 or self.new_of_old.max() >= n:
            return False
        seen[self.new_of_old] = True
        return bool(seen.all()) and np.array_equal(
            self.old_of_new[self.new_of_old], np.arange(n))

    def write(self, path) -> None:
        """Dump ``new_of_old`` as a raw little-endian u32 array."""
        self.new_of_old.astype("<u4").tofile(path)

    @classmethod
    def read(cls, path) -> "Permutation":
        return cls.from_new_of_old(np.fromfile(path, dtype="<u4").astype(np.int64))


def orient_rank_by_degree(g: CsrGraph) -> OrientedGraph:
    """Keep (u, v) iff (d(u), u) < (d(v), v)."""
    deg = g.degrees
    e = g.edges()
    du, dv = deg[e[:, 0]], deg[e[:, 1]]
    keep = (du < dv) | ((du == dv) & (e[:, 0] < e[:, 1]))
    return OrientedGraph(build_csr(EdgeList(e[keep], g.vertex_count)), deg.copy())


def collective_degree(og: OrientedGraph, use_original: bool = False) -> np.ndarray:
    """Sum of neighbor degrees over each vertex's out-list.

    By default neighbor degree is the oriented out-degree; ``use_original``
    switches to the undirected degree before orientation.
    """
    deg = og.original_degree if use_original else og.out_degree
    csr = og.csr
    per_edge = deg[csr.adjacency].astype(np.int64)
    out = np.zeros(csr.vertex_count, dtype=np.int64)
    src = np.repeat(np.arange(csr.vertex_count), csr.degrees)
    np.add.at(out, src, per_edge)
    return out


def reorder_by_degree(og: OrientedGraph) -> Permutation:
    """Baseline: descending undirected degree, ties by ascending id."""
    ids = np.arange(og.vertex_count)
    return Permutation.from_order(np.lexsort((ids, -og.original_degree)))


def reorder_by_indegree(og: OrientedGraph) -> Permutation:
    ids = np.arange(og.vertex_count)
    return Permutation.from_order(np.lexsort((ids, -og.in_degree)))


def _first_visit_order(og: OrientedGraph, neighbor_rank=None, use_original=False) -> Permutation:
    # Walk sources by descending collective degree and hand out ids to
    # neighbors on first sight; equivalent to the sequential assignment loop.
    n = og.vertex_count
    csr = og.csr
    ids = np.arange(n)
    coll = collective_degree(og, use_original=use_original)
    src_order = np.lexsort((ids, -coll))
    src_pos = np.empty(n, dtype=np.int64)
    src_pos[src_order] = ids

    src = np.repeat(ids, csr.degrees)
    edge_idx = np.arange(csr.edge_count)
    dst = csr.adjacency.astype(np.int64)
    if neighbor_rank is None:
        visit = np.lexsort((edge_idx, src_pos[src]))
    else:
        visit = np.lexsort((edge_idx, neighbor_rank[dst], src_pos[src]))
    seq = dst[visit]

    assigned = np.full(n, -1, dtype=np.int64)
    if len(seq):
        firsts, first_at = np.unique(seq, return_index=True)
        hit = firsts[np.argsort(first_at, kind="stable")]
        assigned[hit] = np.arange(len(hit))
    rest = np.flatnonzero(assigned < 0)
    assigned[rest] = np.arange(n - len(rest), n)
    return Permutation.from_new_of_old(assigned)


def reorder_by_collective_outdegree(og: OrientedGraph, use_original: bool = False) -> Permutation:
    """Give consecutive ids to the out-neighbors of the heaviest vertices first."""
    return _first_visit_order(og, use_original=use_original)


def degree_class(deg, large=LARGE_DEGREE, small=SMALL_DEGREE):
    """0 for degree > ``large``, 1 for ``[small, large]``, 2 below ``small``."""
    deg = np.asarray(deg)
    return np.where(deg > large, 0, np.where(deg >= small, 1, 2))


def reorder_three_subsets(og: OrientedGraph, large: int = LARGE_DEGREE,
                          small: int = SMALL_DEGREE, use_original: bool = False) -> Permutation:
    """Collective ordering with each out-list visited in three degree passes.

    Neighbors with out-degree above ``large`` are numbered first, then those in
    ``[small, large]``, then the rest.
    """
    return _first_visit_order(og, neighbor_rank=degree_class(og.out_degree, large, small),
                              use_original=use_original)


def apply_permutation(g, p: Permutation):
    """Relabel a ``CsrGraph`` or ``OrientedGraph``; edge directions are kept."""
    csr = g.csr if isinstance(g, OrientedGraph) else g
    if len(p) != csr.vertex_count:
        raise ValueError(f"permutation covers {len(p)} vertices, graph has {csr.vertex_count}")
    e = p.new_of_old[csr.edges()] if csr.edge_count else np.empty((0, 2), dtype=np.int64)
    out = build_csr(EdgeList(e, csr.vertex_count))
    if isinstance(g, OrientedGraph):
        deg = np.empty_like(g.original_degree)
        deg[p.new_of_old] = g.original_degree
        return OrientedGraph(out, deg)
    return out


REORDERINGS = {
    "degree": reorder_by_degree,
    "indegree": reorder_by_indegree,
    "collective": reorder_by_collective_outdegree,
    "three-subset": reorder_three_subsets,
}
