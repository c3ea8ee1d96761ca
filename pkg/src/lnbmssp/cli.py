"""Command-line entry point: ingest, stats, bench, report."""

from __future__ import annotations

import argparse
import csv
import logging
import sys
from pathlib import Path

from .bench import ALGORITHMS, BenchConfig, ChecksumMismatch, read_records, read_sizes, run_benchmark, write_records, write_sizes
from .bmssp import BACKENDS
from .ingest import DEFAULT_AMOUNT_MSAT, FORMATS, STATS_HEADER, IngestError, load_snapshot, to_weighted_graph, topology_stats, write_snapshot
from .report import emit_report
from .weights import WeightParams

log = logging.getLogger("lnbmssp")

EXIT_OK, EXIT_RUNTIME, EXIT_USAGE, EXIT_MISMATCH = 0, 1, 2, 3


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _nonneg_int(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {v}")
    return v


def _seed(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return v


def _algorithms(text: str) -> tuple[str, ...]:
    names = tuple(dict.fromkeys(a.strip() for a in text.split(",") if a.strip()))
    bad = [a for a in names if a not in ALGORITHMS]
    if bad or not names:
        raise argparse.ArgumentTypeError(f"choose from {','.join(ALGORITHMS)}")
    return names


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lnbmssp", description="BMSSP vs Dijkstra on Lightning Network snapshots")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def snapshots(sp, required=True):
        sp.add_argument("--snapshot", action="append", default=[], required=required, metavar="PATH",
                        help="snapshot file; repeat for several (label = file stem)")
        sp.add_argument("--format", choices=FORMATS, default=None, help="default: guess from extension")

    def weights(sp):
        sp.add_argument("--amount-msat", type=_positive_int, default=DEFAULT_AMOUNT_MSAT)
        sp.add_argument("--risk-factor", type=float, default=WeightParams.risk_factor)
        sp.add_argument("--perturb-epsilon", type=float, default=WeightParams.perturb_epsilon)
        sp.add_argument("--seed", type=_seed, default=42)

    sp = sub.add_parser("ingest", help="validate snapshots, print topology stats, optionally normalize")
    snapshots(sp)
    sp.add_argument("--out-dir", type=Path, default=None, help="write normalized lnchan-csv-v1 copies here")

    sp = sub.add_parser("stats", help="CSV of topology statistics, one row per snapshot")
    snapshots(sp)
    sp.add_argument("--out-dir", type=Path, default=None, help="also write stats.csv here")

    sp = sub.add_parser("bench", help="run the paired benchmark and write records.csv")
    snapshots(sp)
    weights(sp)
    sp.add_argument("--trials", type=_positive_int, default=100)
    sp.add_argument("--warmup", type=_nonneg_int, default=3)
    sp.add_argument("--algorithms", type=_algorithms, default=ALGORITHMS, help="comma list, default dijkstra,bmssp")
    sp.add_argument("--frontier-backend", choices=sorted(BACKENDS), default="blocks")
    sp.add_argument("--k-override", type=_positive_int, default=None)
    sp.add_argument("--t-override", type=_positive_int, default=None)
    sp.add_argument("--out-dir", type=Path, default=Path("out"))
    sp.add_argument("--report", action="store_true", help="also emit the full report")

    sp = sub.add_parser("report", help="summaries, tests, fit and charts from an existing records.csv")
    sp.add_argument("--records", type=Path, default=None, help="default: OUT_DIR/records.csv")
    sp.add_argument("--sizes", type=Path, default=None, help="default: OUT_DIR/snapshots.csv if present")
    sp.add_argument("--out-dir", type=Path, default=Path("out"))
    return p


def _stats_rows(args) -> list[list[str]]:
    rows = []
    for path in args.snapshot:
        s = load_snapshot(path, args.format)
        rows.append(topology_stats(s).as_row(s.date_label))
    return rows


def cmd_ingest(args) -> int:
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(STATS_HEADER)
    for path in args.snapshot:
        s = load_snapshot(path, args.format)
        w.writerow(topology_stats(s).as_row(s.date_label))
        if args.out_dir is not None:
            args.out_dir.mkdir(parents=True, exist_ok=True)
            with open(args.out_dir / f"{s.date_label}.csv", "w", newline="") as fh:
                write_snapshot(s, fh)
    return EXIT_OK


def cmd_stats(args) -> int:
    rows = _stats_rows(args)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(STATS_HEADER)
    w.writerows(rows)
    if args.out_dir is not None:
        args.out_dir.mkdir(parents=True, exist_ok=True)
        with open(args.out_dir / "stats.csv", "w", newline="") as fh:
            fw = csv.writer(fh, lineterminator="\n")
            fw.writerow(STATS_HEADER)
            fw.writerows(rows)
    return EXIT_OK


def cmd_bench(args) -> int:
    params = WeightParams(risk_factor=args.risk_factor, perturb_epsilon=args.perturb_epsilon)
    graphs = []
    for path in args.snapshot:
        s = load_snapshot(path, args.format)
        graphs.append((s.date_label, to_weighted_graph(s, args.amount_msat, params, args.seed)))
    labels = [lab for lab, _ in graphs]
    if len(set(labels)) != len(labels):
        raise IngestError(f"duplicate snapshot labels {labels}")
    cfg = BenchConfig(
        trials=args.trials, seed=args.seed, algorithms=args.algorithms, warmup=args.warmup,
        frontier_backend=args.frontier_backend, k_override=args.k_override, t_override=args.t_override,
    )
    records = run_benchmark(graphs, config=cfg)
    args.out_dir.mkdir(parents=True, exist_ok=True)
    write_records(records, args.out_dir / "records.csv")
    sizes = {lab: (g.vertex_count, g.edge_count) for lab, g in graphs}
    write_sizes(sizes, args.out_dir / "snapshots.csv")
    if args.report:
        emit_report(records, args.out_dir, sizes)
    print(f"wrote {len(records)} records to {args.out_dir / 'records.csv'}")
    return EXIT_OK


def cmd_report(args) -> int:
    records_path = args.records or args.out_dir / "records.csv"
    sizes_path = args.sizes or args.out_dir / "snapshots.csv"
    records = read_records(records_path)
    sizes = read_sizes(sizes_path) if sizes_path.exists() else None
    paths = emit_report(records, args.out_dir, sizes)
    for p in paths.values():
        print(p)
    return EXIT_OK


COMMANDS = {"ingest": cmd_ingest, "stats": cmd_stats, "bench": cmd_bench, "report": cmd_report}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](args)
    except ChecksumMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (OSError, ValueError, LookupError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
