"""Command line entry point.

    hashtc count --input graph.txt --reorder collective --grid 2 --splits 2
    hashtc generate gnp --n 1000 --p 0.01 --output g.bin
    hashtc fetch-datasets cit-patents
"""

from __future__ import annotations

import argparse
import logging
import sys

from . import datasets
from .graph_io import write_edge_list
from .hashing import SchedulerConfig
from .partition import required_grid_side
from .pipeline import MODES, REORDER_CHOICES, PipelineConfig, PipelineError, render, run_pipeline
from .synthetic import SyntheticSpec, generate_synthetic

SUBCOMMANDS = ("count", "generate", "fetch-datasets")


def _synthetic_args(p):
    p.add_argument("--n", type=int, help="gnp: vertex count")
    p.add_argument("--p", type=float, help="gnp: edge probability")
    p.add_argument("--dims", type=int, nargs="+", default=[4, 4, 4], help="lattice3d sides")
    p.add_argument("--scale", type=int, help="rmat: log2 vertex count")
    p.add_argument("--edge-factor", type=int, default=16)
    p.add_argument("--seed", type=int, default=0)


def _spec(kind, args) -> SyntheticSpec:
    params = {"gnp": {"n": args.n, "p": args.p},
              "lattice3d": {"dims": tuple(args.dims)},
              "rmat": {"scale": args.scale, "edge_factor": args.edge_factor}}[kind]
    missing = [k for k, v in params.items() if v is None]
    if missing:
        raise PipelineError("config", f"{kind} needs --{', --'.join(missing)}")
    return SyntheticSpec(kind, params, args.seed)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hashtc", description="Exact hash-based triangle counting")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", help="run the counting pipeline")
    src = c.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", metavar="PATH")
    src.add_argument("--synthetic", choices=["gnp", "lattice3d", "rmat"])
    c.add_argument("--format", choices=["txt", "bin"], default="txt")
    _synthetic_args(c)
    c.add_argument("--reorder", choices=REORDER_CHOICES, default="none")
    c.add_argument("--collective-degree", choices=["oriented", "original"], default="oriented")
    c.add_argument("--emit-perm", metavar="PATH")
    c.add_argument("--mode", choices=MODES, default="vertex")
    c.add_argument("--workers", type=int, default=1)
    c.add_argument("--chunk-size", type=int, default=1)
    c.add_argument("--buckets-small", type=int, default=32)
    c.add_argument("--buckets-large", type=int, default=1024)
    c.add_argument("--capacity", type=int, default=128)
    c.add_argument("--large-threshold", type=int, default=100)
    c.add_argument("--skip-below", type=int, default=2)
    c.add_argument("--lane-small", type=int, default=32)
    c.add_argument("--lane-large", type=int, default=256)
    c.add_argument("--grid", type=int, default=1)
    c.add_argument("--splits", type=int, default=1)
    c.add_argument("--emit-partitions", metavar="DIR")
    c.add_argument("--gpu-memory", type=int, metavar="BYTES",
                   help="print the smallest grid side whose subtask edges fit in BYTES")
    c.add_argument("--report", choices=["json", "csv"], default="json")
    c.add_argument("--repeat", type=int, default=1)
    c.add_argument("--time-all", action="store_true")
    c.add_argument("--backend", choices=["auto", "cython", "python"], default=None)

    gen = sub.add_parser("generate", help="write a synthetic edge list")
    gen.add_argument("kind", choices=["gnp", "lattice3d", "rmat"])
    _synthetic_args(gen)
    gen.add_argument("--output", required=True)
    gen.add_argument("--format", choices=["txt", "bin"], default="bin")

    f = sub.add_parser("fetch-datasets", help="download SNAP ground-truth graphs")
    f.add_argument("names", nargs="*", default=list(datasets.DATASETS), choices=list(datasets.DATASETS))
    f.add_argument("--dest")
    f.add_argument("--sha256", help="expected archive digest (single dataset)")
    f.add_argument("--force", action="store_true")
    return parser


def _count(args) -> int:
    sched = SchedulerConfig(
        large_degree_threshold=args.large_threshold, skip_degree_below=args.skip_below,
        chunk_size=args.chunk_size, lane_width_small=args.lane_small,
        lane_width_large=args.lane_large, bucket_count_small=args.buckets_small,
        bucket_count_large=args.buckets_large, capacity=args.capacity)
    cfg = PipelineConfig(
        input=args.input, format=args.format,
        synthetic=_spec(args.synthetic, args) if args.synthetic else None,
        reorder=args.reorder, collective_on_original=args.collective_degree == "original",
        mode=args.mode, grid=args.grid, splits=args.splits, workers=args.workers,
        scheduler=sched, report=args.report, repeat=args.repeat, time_all=args.time_all,
        emit_perm=args.emit_perm, emit_partitions=args.emit_partitions,
        backend=None if args.backend in (None, "auto") else args.backend)
    rep, status = run_pipeline(cfg)
    if args.gpu_memory:
        print(f"# smallest grid side for {args.gpu_memory} bytes: "
              f"{required_grid_side(rep.edges, args.gpu_memory)}", file=sys.stderr)
    sys.stdout.write(render(rep, args.report) + ("" if args.report == "csv" else "\n"))
    return status


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and argv[0].startswith("--") and argv[0] not in ("--help", "--verbose"):
        argv.insert(0, "count")
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        if args.command == "count":
            return _count(args)
        if args.command == "generate":
            write_edge_list(generate_synthetic(_spec(args.kind, args)), args.output, args.format)
            return 0
        for name in args.names:
            print(datasets.fetch(name, args.dest, args.sha256, args.force))
        return 0
    except PipelineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: [config] {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: [io] {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
