"""load -> normalize -> orient -> reorder -> [partition] -> count -> report."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field

import numpy as np

from . import oracle
from .counting import count_edge_centric, count_vertex_centric
from .graph_io import build_csr, load_edge_list, normalize
from .hashing import CountReport, SchedulerConfig
from .orientation import (REORDERINGS, Permutation, apply_permutation,
                          orient_rank_by_degree, reorder_by_collective_outdegree,
                          reorder_three_subsets)
from .partition import count_partitioned, partition_graph, write_partitions
from .synthetic import SyntheticSpec, generate_synthetic

log = logging.getLogger(__name__)

MODES = ("vertex", "edge", "naive", "merge")
REORDER_CHOICES = ("none",) + tuple(REORDERINGS)


class PipelineError(RuntimeError):
    def __init__(self, stage, message):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage


@dataclass
class PipelineConfig:
    input: str | None = None
    format: str = "txt"
    synthetic: SyntheticSpec | None = None
    reorder: str = "none"
    collective_on_original: bool = False
    mode: str = "vertex"
    grid: int = 1
    splits: int = 1
    workers: int = 1
    scheduler: SchedulerConfig = field(default_factory=SchedulerConfig)
    report: str = "json"
    repeat: int = 1
    time_all: bool = False
    emit_perm: str | None = None
    emit_partitions: str | None = None
    backend: str | None = None

    def validate(self):
        if (self.input is None) == (self.synthetic is None):
            raise PipelineError("config", "exactly one of input or synthetic is required")
        if self.format not in ("txt", "bin"):
            raise PipelineError("config", f"unknown format {self.format!r}")
        if self.reorder not in REORDER_CHOICES:
            raise PipelineError("config", f"unknown reorder {self.reorder!r}")
        if self.mode not in MODES:
            raise PipelineError("config", f"unknown mode {self.mode!r}")
        for name in ("grid", "splits", "workers", "repeat"):
            if getattr(self, name) < 1:
                raise PipelineError("config", f"--{name} must be >= 1")
        if self.mode in ("naive", "merge") and (self.grid > 1 or self.splits > 1):
            raise PipelineError("config", f"mode {self.mode} does not support partitioning")
        if self.report not in ("json", "csv"):
            raise PipelineError("config", f"unknown report format {self.report!r}")


def _stage(name, fn, *args, **kw):
    try:
        return fn(*args, **kw)
    except PipelineError:
        raise
    except Exception as exc:  # noqa: BLE001 - re-tag with the failing stage
        raise PipelineError(name, f"{type(exc).__name__}: {exc}") from exc


def _reorder(og, cfg: PipelineConfig) -> Permutation | None:
    if cfg.reorder == "none":
        return None
    if cfg.reorder == "collective":
        return reorder_by_collective_outdegree(og, use_original=cfg.collective_on_original)
    if cfg.reorder == "three-subset":
        s = cfg.scheduler
        return reorder_three_subsets(og, s.large_degree_threshold, s.skip_degree_below,
                                     use_original=cfg.collective_on_original)
    return REORDERINGS[cfg.reorder](og)


def prepare_graph(cfg: PipelineConfig):
    """Load (or generate), normalize, orient and reorder; returns (undirected, oriented, perm)."""
    if cfg.synthetic is not None:
        raw = _stage("generate", generate_synthetic, cfg.synthetic)
    else:
        raw = _stage("load", load_edge_list, cfg.input, cfg.format)
    edges, _ = _stage("normalize", normalize, raw)
    g = _stage("csr", build_csr, edges)
    og = _stage("orient", orient_rank_by_degree, g)
    perm = _stage("reorder", _reorder, og, cfg)
    if perm is not None:
        og = _stage("reorder", apply_permutation, og, perm)
    return g, og, perm


def _count_once(g, og, cfg: PipelineConfig) -> CountReport:
    s = cfg.scheduler
    if cfg.mode == "naive":
        t0 = time.perf_counter_ns()
        rep = CountReport(triangles=oracle.count_naive(g))
        rep.elapsed_nanos = time.perf_counter_ns() - t0
        return rep
    if cfg.mode == "merge":
        t0 = time.perf_counter_ns()
        rep = CountReport(triangles=oracle.count_merge_path(og))
        rep.elapsed_nanos = time.perf_counter_ns() - t0
        return rep
    edge = cfg.mode == "edge"
    if cfg.grid == 1 and cfg.splits == 1:
        count = count_edge_centric if edge else count_vertex_centric
        return count(og, s, cfg.workers, cfg.backend)
    return count_partitioned(og, cfg.grid, cfg.splits, cfg.workers, s, cfg.backend,
                             edge_centric=edge)


def run_pipeline(cfg: PipelineConfig) -> tuple[CountReport, int]:
    """Execute every stage in order; returns the report and an exit status."""
    cfg.validate()
    t_start = time.perf_counter_ns()
    g, og, perm = prepare_graph(cfg)
    prep_ns = time.perf_counter_ns() - t_start
    if perm is not None and cfg.emit_perm:
        _stage("emit-perm", perm.write, cfg.emit_perm)
    if cfg.emit_partitions:
        _stage("partition", lambda: write_partitions(partition_graph(og, cfg.grid),
                                                     cfg.emit_partitions))

    runs = [_stage("count", _count_once, g, og, cfg) for _ in range(cfg.repeat)]
    rep = runs[0]
    if len({r.triangles for r in runs}) != 1:
        raise PipelineError("count", "triangle count differs between repeats")
    elapsed = np.array([r.elapsed_nanos for r in runs])
    rep.elapsed_nanos = int(elapsed.mean())
    if cfg.time_all:
        rep.elapsed_nanos += prep_ns
    rep.edges = og.edge_count
    rep.teps = og.edge_count / (rep.elapsed_nanos * 1e-9) if rep.elapsed_nanos else 0.0
    rep.elapsed_min_nanos = int(elapsed.min())
    rep.repeat = cfg.repeat
    return rep, 0


def render(rep: CountReport, fmt: str) -> str:
    return rep.to_csv() if fmt == "csv" else rep.to_json()
