"""Seeded synthetic graph generators (random, 3D torus grid, R-MAT style)."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graph_io import EdgeList


@dataclass(frozen=True)
class SyntheticSpec:
    kind: str  # "gnp" | "lattice3d" | "rmat"
    params: dict = field(default_factory=dict)
    seed: int = 0


def gnp(n: int, p: float, seed: int = 0) -> EdgeList:
    """Erdos-Renyi G(n, p), one undirected edge per kept pair (u < v)."""
    rng = np.random.default_rng(seed)
    chunks = []
    for u in range(n - 1):
        hit = np.flatnonzero(rng.random(n - u - 1) < p) + u + 1
        if len(hit):
            chunks.append(np.column_stack([np.full(len(hit), u), hit]))
    edges = np.concatenate(chunks) if chunks else np.empty((0, 2), dtype=np.int64)
    return EdgeList(edges, n)


def lattice3d(x: int, y: int | None = None, z: int | None = None) -> EdgeList:
    """3D torus grid, each vertex linked to its +1 neighbor along every axis.

    Triangle-free whenever every side is at least 4 (a side of 3 wraps into
    3-cycles).
    """
    y = x if y is None else y
    z = x if z is None else z
    ids = np.arange(x * y * z).reshape(x, y, z)
    edges = [np.column_stack([ids.ravel(), np.roll(ids, -1, axis=a).ravel()]) for a in range(3)]
    return EdgeList(np.concatenate(edges), x * y * z)


def rmat(scale: int, edge_factor: int = 16, seed: int = 0,
         a: float = 0.57, b: float = 0.19, c: float = 0.19) -> EdgeList:
    """R-MAT edges: each of ``scale`` bits picks a quadrant with probabilities a/b/c/d."""
    rng = np.random.default_rng(seed)
    n = 1 << scale
    m = edge_factor * n
    u = np.zeros(m, dtype=np.int64)
    v = np.zeros(m, dtype=np.int64)
    for bit in range(scale):
        r = rng.random(m)
        right = (r >= a) & (r < a + b) | (r >= a + b + c)
        down = r >= a + b
        u |= down.astype(np.int64) << bit
        v |= right.astype(np.int64) << bit
    return EdgeList(np.column_stack([u, v]), n)


def generate_synthetic(spec: SyntheticSpec) -> EdgeList:
    kind, prm = spec.kind, dict(spec.params)
    if kind == "gnp":
        return gnp(int(prm["n"]), float(prm["p"]), spec.seed)
    if kind == "lattice3d":
        dims = prm.get("dims", (4, 4, 4))
        if isinstance(dims, int):
            dims = (dims, dims, dims)
        return lattice3d(*[int(d) for d in dims])
    if kind == "rmat":
        return rmat(int(prm["scale"]), int(prm.get("edge_factor", 16)), spec.seed)
    raise ValueError(f"unknown synthetic kind {kind!r}")
