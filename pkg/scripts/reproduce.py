#!/usr/bin/env python3
"""End-to-end run: synthetic snapshots -> topology table -> paired benchmark -> report.

    python3 scripts/reproduce.py --scale 0.1 --trials 20     # a few minutes
    python3 scripts/reproduce.py                             # full size, 100 trials (hours in CPython)

Pass --snapshot-dir to use real lnchan-csv-v1 files instead of synthetic ones.
"""

import argparse
import subprocess
import sys
from pathlib import Path

from lnbmssp.cli import main as cli

HERE = Path(__file__).resolve().parent


def run(argv):
    print("$ lnbmssp " + " ".join(argv), flush=True)
    code = cli(argv)
    if code:
        sys.exit(code)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out-dir", type=Path, default=Path("out/reproduce"))
    ap.add_argument("--snapshot-dir", type=Path, default=None)
    ap.add_argument("--scale", type=float, default=1.0)
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--frontier-backend", default="blocks")
    args = ap.parse_args()

    snap_dir = args.snapshot_dir
    if snap_dir is None:
        snap_dir = args.out_dir / "snapshots"
        subprocess.run([sys.executable, str(HERE / "make_fixtures.py"), "--out-dir", str(snap_dir),
                        "--scale", str(args.scale), "--seed", str(args.seed)], check=True)
    snaps = sorted(str(p) for p in snap_dir.glob("*.csv"))
    if not snaps:
        sys.exit(f"no snapshots in {snap_dir}")
    flags = [x for s in snaps for x in ("--snapshot", s)]
    run(["stats", *flags, "--out-dir", str(args.out_dir)])
    run(["bench", *flags, "--trials", str(args.trials), "--seed", str(args.seed),
         "--frontier-backend", args.frontier_backend, "--out-dir", str(args.out_dir)])
    run(["report", "--out-dir", str(args.out_dir)])
    print((args.out_dir / "mw_test.csv").read_text())


if __name__ == "__main__":
    main()
