#!/usr/bin/env python3
"""Write synthetic stand-ins for the five reference snapshots.

Each file has the reference node and channel counts (so average degree
matches exactly) and a hub-heavy degree distribution. ``--scale`` shrinks
both counts for quick runs. Real gossip dumps converted to lnchan-csv-v1
belong in fixtures/snapshots/ under the same date names; the acceptance
suite checks their counts when present.
"""

import argparse
from pathlib import Path

from lnbmssp.ingest import topology_stats, write_snapshot
from lnbmssp.synth import REFERENCE_SNAPSHOTS, synthesize_snapshot


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out-dir", type=Path, default=Path("out/synthetic"))
    ap.add_argument("--scale", type=float, default=1.0, help="multiply node and channel counts")
    ap.add_argument("--seed", type=int, default=42)
    args = ap.parse_args()
    args.out_dir.mkdir(parents=True, exist_ok=True)
    for i, ref in enumerate(REFERENCE_SNAPSHOTS):
        n = max(2, round(ref.nodes * args.scale))
        c = max(n - 1, round(ref.channels * args.scale))
        s = synthesize_snapshot(n, c, seed=args.seed + i, date_label=ref.date)
        path = args.out_dir / f"{ref.date}.csv"
        with open(path, "w", newline="") as fh:
            write_snapshot(s, fh)
        st = topology_stats(s)
        print(f"{path}: nodes={st.node_count} channels={st.channel_count} avg_degree={st.avg_degree:.2f}")


if __name__ == "__main__":
    main()
