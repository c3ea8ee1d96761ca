"""Synthetic LN-like snapshots with exact node and channel counts.

Real gossip dumps are large and not shipped with the package; these
generators give reproducible stand-ins with a skewed (hub-heavy) degree
distribution and plausible fee policies.
"""

from __future__ import annotations

import itertools
import random
from bisect import bisect_right
from typing import NamedTuple

from .ingest import ChannelPolicy, Snapshot


class SnapshotSize(NamedTuple):
    date: str
    nodes: int
    channels: int
    avg_degree: float
    degree_stddev: float
    degree_entropy: float


# mid-year public LN gossip snapshots, 2019-2023
REFERENCE_SNAPSHOTS = (
    SnapshotSize("2019-06-17", 4287, 30652, 14.30, 52.23, 0.60),
    SnapshotSize("2020-06-15", 5697, 28743, 10.09, 41.19, 0.50),
    SnapshotSize("2021-06-15", 10343, 42746, 8.27, 42.47, 0.44),
    SnapshotSize("2022-06-05", 15648, 78468, 10.03, 51.56, 0.47),
    SnapshotSize("2023-07-16", 15071, 64196, 8.52, 46.44, 0.43),
)

_BASE_FEES = (0, 0, 1, 100, 1000, 1000, 1000, 5000)
_CLTV = (18, 34, 40, 40, 80, 144)


def _node_key(rng: random.Random) -> str:
    return rng.choice(("02", "03")) + f"{rng.getrandbits(256):064x}"


def _policy(rng, scid, src, dst, capacity_sat, timestamp, disabled_rate) -> ChannelPolicy:
    return ChannelPolicy(
        short_channel_id=scid,
        source=src,
        target=dst,
        timestamp=timestamp,
        base_fee_msat=rng.choice(_BASE_FEES),
        fee_rate_ppm=min(50_000, int(rng.lognormvariate(4.0, 1.5))),
        cltv_delta=rng.choice(_CLTV),
        htlc_min_msat=rng.choice((1, 1000)),
        htlc_max_msat=capacity_sat * 990,
        capacity_sat=capacity_sat,
        disabled=rng.random() < disabled_rate,
    )


def synthesize_snapshot(
    nodes: int,
    channels: int,
    seed: int = 0,
    date_label: str = "synthetic",
    *,
    skew: float = 0.8,
    disabled_rate: float = 0.02,
) -> Snapshot:
    """Random snapshot with exactly ``nodes`` nodes and ``channels`` channels.

    A random spanning tree grown by preferential choice guarantees every node
    carries a channel; the remaining channels join Zipf-weighted endpoint
    pairs, producing a few large hubs. Every channel gets a policy in both
    directions.
    """
    if nodes < 2:
        raise ValueError("need at least two nodes")
    if channels < nodes - 1:
        raise ValueError("need at least nodes - 1 channels to cover every node")
    rng = random.Random(seed)
    keys = [_node_key(rng) for _ in range(nodes)]
    rank = list(range(nodes))
    rng.shuffle(rank)
    cum = list(itertools.accumulate(1.0 / (r + 1) ** skew for r in rank))

    pairs = []
    for i in range(1, nodes):
        j = min(i - 1, bisect_right(cum, rng.random() * cum[i - 1], 0, i))
        pairs.append((i, j))
    population = range(nodes)
    while len(pairs) < channels:
        u, v = rng.choices(population, cum_weights=cum, k=2)
        if u != v:
            pairs.append((u, v))

    policies = []
    for c, (u, v) in enumerate(pairs):
        block, tx = divmod(c, 1000)
        scid = ((550_000 + block) << 40) | (tx << 16) | rng.randrange(4)
        capacity = int(rng.lognormvariate(14.0, 1.3))
        capacity = max(20_000, min(capacity, 1_000_000_000))
        ts = 1_560_000_000 + rng.randrange(86_400 * 14)
        policies.append(_policy(rng, scid, keys[u], keys[v], capacity, ts, disabled_rate))
        policies.append(_policy(rng, scid, keys[v], keys[u], capacity, ts + rng.randrange(3600), disabled_rate))
    order = list(range(len(policies)))
    rng.shuffle(order)
    return Snapshot.from_policies((policies[i] for i in order), date_label)
