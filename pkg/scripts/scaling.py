#!/usr/bin/env python3
"""Runtime vs graph size on uniform random sparse digraphs (m = 5n).

Writes records.csv, snapshots.csv and the full report (including the
runtime-vs-nodes fit and its chart) to --out-dir, then prints the mean
runtime per size and the ratio for each doubling.
"""

import argparse
import random
from pathlib import Path

from lnbmssp.bench import BenchConfig, run_benchmark, write_sizes
from lnbmssp.graph import random_sparse_digraph
from lnbmssp.report import emit_report
from lnbmssp.stats import summarize


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="10000,20000,40000,80000")
    ap.add_argument("--edge-factor", type=float, default=5.0)
    ap.add_argument("--trials", type=int, default=5)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--frontier-backend", default="blocks")
    ap.add_argument("--out-dir", type=Path, default=Path("out/scaling"))
    args = ap.parse_args()

    rng = random.Random(args.seed)
    graphs = [(f"n={n}", random_sparse_digraph(n, args.edge_factor, rng))
              for n in (int(x) for x in args.sizes.split(","))]
    cfg = BenchConfig(trials=args.trials, seed=args.seed, warmup=1, frontier_backend=args.frontier_backend)
    records = run_benchmark(graphs, config=cfg, progress=lambda label, t: print(f"\r{label} trial {t + 1}", end=""))
    print()
    sizes = {label: (g.n, g.m) for label, g in graphs}
    args.out_dir.mkdir(parents=True, exist_ok=True)
    write_sizes(sizes, args.out_dir / "snapshots.csv")
    emit_report(records, args.out_dir, sizes)

    summary = summarize(records)
    for alg in cfg.algorithms:
        means = [summary[(label, alg)].mean for label, _ in graphs]
        ratios = ", ".join(f"{b / a:.2f}" for a, b in zip(means, means[1:]))
        print(f"{alg:9s} mean ms: " + ", ".join(f"{m / 1e6:.1f}" for m in means) + f"   doubling ratios: {ratios}")


if __name__ == "__main__":
    main()
