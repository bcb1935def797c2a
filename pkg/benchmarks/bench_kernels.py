"""Compare the compiled and pure-Python counting kernels.

    python3 benchmarks/bench_kernels.py --scale 11 --repeat 3
"""

import argparse
import time

from hashtc import (SchedulerConfig, apply_permutation, available_backends, build_csr,
                    count_edge_centric, count_vertex_centric, normalize, orient_rank_by_degree,
                    reorder_by_collective_outdegree)
from hashtc.synthetic import gnp, rmat


def graphs(scale, edge_factor, seed):
    yield f"rmat{scale}x{edge_factor}", rmat(scale, edge_factor, seed)
    n = 1 << scale
    yield f"gnp{n}", gnp(n, 2 * edge_factor / n, seed)


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        rep = fn()
        times.append(time.perf_counter() - t0)
    return rep, min(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--scale", type=int, default=11)
    ap.add_argument("--edge-factor", type=int, default=8)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--chunk-size", type=int, default=64)
    args = ap.parse_args(argv)

    backends = available_backends()
    cfg = SchedulerConfig(chunk_size=args.chunk_size)
    print(f"{'graph':<14}{'mode':<8}{'backend':<9}{'triangles':>12}{'seconds':>10}{'Medges/s':>10}")
    for name, el in graphs(args.scale, args.edge_factor, args.seed):
        og = orient_rank_by_degree(build_csr(normalize(el)[0]))
        og = apply_permutation(og, reorder_by_collective_outdegree(og))
        for mode, count in (("vertex", count_vertex_centric), ("edge", count_edge_centric)):
            secs = {}
            for b in backends:
                rep, secs[b] = best_of(lambda: count(og, cfg, 1, b), args.repeat)
                print(f"{name:<14}{mode:<8}{b:<9}{rep.triangles:>12}{secs[b]:>10.3f}"
                      f"{og.edge_count / secs[b] / 1e6:>10.2f}")
            if len(secs) == 2:
                print(f"{'':<22}speedup {secs['python'] / secs['cython']:.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
