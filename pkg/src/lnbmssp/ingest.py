"""Normalized Lightning Network gossip snapshots: parsing, topology statistics,
and conversion to weighted digraphs.

Two on-disk formats carry the same fields, one directed channel policy per
record:

``lnchan-csv-v1``
    UTF-8 CSV with header ``short_channel_id,source,target,timestamp,
    base_fee_msat,fee_rate_ppm,cltv_delta,htlc_min_msat,htlc_max_msat,
    capacity_sat,disabled``.
``jsonl-v1``
    One JSON object per line with the same keys.

``short_channel_id`` may be a decimal integer or the ``BLOCKxTXxOUT`` form.
``htlc_min_msat``/``htlc_max_msat`` may be empty (CSV) or null (JSON).
"""

from __future__ import annotations

import csv
import io
import json
import math
import warnings
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable, Iterator

from .graph import EdgeListEntry, Graph, build_graph
from .weights import MASK64, WeightParams, admits, edge_weight, perturb

FIELDS = (
    "short_channel_id",
    "source",
    "target",
    "timestamp",
    "base_fee_msat",
    "fee_rate_ppm",
    "cltv_delta",
    "htlc_min_msat",
    "htlc_max_msat",
    "capacity_sat",
    "disabled",
)
FORMATS = ("lnchan-csv-v1", "jsonl-v1")
DEFAULT_AMOUNT_MSAT = 100_000_000
STATS_HEADER = ("snapshot", "nodes", "channels", "avg_degree", "degree_stddev", "degree_entropy")


class IngestError(ValueError):
    pass


class MalformedRow(IngestError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class EmptySnapshot(IngestError):
    pass


class DuplicatePolicy(UserWarning):
    pass


@dataclass(frozen=True)
class ChannelPolicy:
    short_channel_id: int
    source: str
    target: str
    timestamp: int
    base_fee_msat: int
    fee_rate_ppm: int
    cltv_delta: int
    htlc_min_msat: int | None
    htlc_max_msat: int | None
    capacity_sat: int
    disabled: bool

    @property
    def direction(self) -> int:
        # BOLT 7: direction 0 originates at the lexicographically smaller node
        return 0 if self.source < self.target else 1

    @property
    def edge_id(self) -> int:
        return ((self.short_channel_id << 1) | self.direction) & MASK64


@dataclass
class Snapshot:
    date_label: str
    nodes: list[str]
    node_index: dict[str, int]
    policies: list[ChannelPolicy]
    channels: set[int] = field(default_factory=set)

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def channel_count(self) -> int:
        return len(self.channels)

    @classmethod
    def from_policies(cls, policies: Iterable[ChannelPolicy], date_label: str = "") -> "Snapshot":
        nodes: list[str] = []
        index: dict[str, int] = {}
        kept: list[ChannelPolicy] = []
        for p in policies:
            for key in (p.source, p.target):
                if key not in index:
                    index[key] = len(nodes)
                    nodes.append(key)
            kept.append(p)
        if not kept:
            raise EmptySnapshot(f"snapshot {date_label!r} has no channel policies")
        return cls(date_label, nodes, index, kept, {p.short_channel_id for p in kept})


@dataclass(frozen=True)
class TopologyStats:
    node_count: int
    channel_count: int
    avg_degree: float
    degree_stddev: float
    degree_entropy_norm: float

    def as_row(self, label: str) -> list[str]:
        return [
            label,
            str(self.node_count),
            str(self.channel_count),
            f"{self.avg_degree:.2f}",
            f"{self.degree_stddev:.2f}",
            f"{self.degree_entropy_norm:.2f}",
        ]


def parse_scid(text: str) -> int:
    text = text.strip()
    if "x" in text:
        block, tx, out = (int(part) for part in text.split("x"))
        if block >= 1 << 24 or tx >= 1 << 24 or out >= 1 << 16 or min(block, tx, out) < 0:
            raise ValueError(f"short channel id component out of range: {text}")
        return (block << 40) | (tx << 16) | out
    value = int(text)
    if not 0 <= value <= MASK64:
        raise ValueError(f"short channel id out of 64-bit range: {text}")
    return value


def _node_key(text: str) -> str:
    key = text.strip().lower()
    if len(key) != 66:
        raise ValueError(f"node key must be 66 hex chars, got {len(key)}")
    int(key, 16)
    return key


def _uint(value, name: str, optional: bool = False) -> int | None:
    if value is None or (isinstance(value, str) and value.strip() == ""):
        if optional:
            return None
        raise ValueError(f"{name} is required")
    if isinstance(value, bool):
        raise ValueError(f"{name} must be an integer")
    if isinstance(value, float):
        if not value.is_integer():
            raise ValueError(f"{name} must be an integer, got {value}")
        value = int(value)
    n = int(value)
    if n < 0:
        raise ValueError(f"{name} must be >= 0, got {n}")
    return n


def _flag(value) -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in ("0", "false"):
        return False
    if text in ("1", "true"):
        return True
    raise ValueError(f"disabled must be 0 or 1, got {value!r}")


def _policy_from_record(rec: dict, line: int) -> ChannelPolicy:
    try:
        scid = rec["short_channel_id"]
        p = ChannelPolicy(
            short_channel_id=parse_scid(str(scid)),
            source=_node_key(rec["source"]),
            target=_node_key(rec["target"]),
            timestamp=_uint(rec["timestamp"], "timestamp"),
            base_fee_msat=_uint(rec["base_fee_msat"], "base_fee_msat"),
            fee_rate_ppm=_uint(rec["fee_rate_ppm"], "fee_rate_ppm"),
            cltv_delta=_uint(rec["cltv_delta"], "cltv_delta"),
            htlc_min_msat=_uint(rec["htlc_min_msat"], "htlc_min_msat", optional=True),
            htlc_max_msat=_uint(rec["htlc_max_msat"], "htlc_max_msat", optional=True),
            capacity_sat=_uint(rec["capacity_sat"], "capacity_sat"),
            disabled=_flag(rec["disabled"]),
        )
    except KeyError as e:
        raise MalformedRow(line, f"missing field {e.args[0]}") from None
    except (TypeError, ValueError) as e:
        raise MalformedRow(line, str(e)) from None
    if p.source == p.target:
        raise MalformedRow(line, "policy source equals target")
    if p.htlc_min_msat is not None and p.htlc_max_msat is not None and p.htlc_min_msat > p.htlc_max_msat:
        raise MalformedRow(line, "htlc_min_msat exceeds htlc_max_msat")
    return p


def _csv_records(text: IO[str]) -> Iterator[tuple[int, dict]]:
    reader = csv.reader(text)
    header = next(reader, None)
    if header is None:
        raise EmptySnapshot("empty input")
    if tuple(h.strip() for h in header) != FIELDS:
        raise MalformedRow(1, f"header does not match lnchan-csv-v1: {','.join(header)}")
    for row in reader:
        line = reader.line_num
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) != len(FIELDS):
            raise MalformedRow(line, f"expected {len(FIELDS)} columns, got {len(row)}")
        yield line, dict(zip(FIELDS, row))


def _jsonl_records(text: IO[str]) -> Iterator[tuple[int, dict]]:
    for line, raw in enumerate(text, start=1):
        if not raw.strip():
            continue
        try:
            rec = json.loads(raw)
        except json.JSONDecodeError as e:
            raise MalformedRow(line, f"invalid JSON: {e.msg}") from None
        if not isinstance(rec, dict):
            raise MalformedRow(line, "expected a JSON object")
        yield line, rec


def parse_snapshot(data, format: str = "lnchan-csv-v1", date_label: str = "") -> Snapshot:
    """Parse a snapshot from bytes, text, or a text stream.

    Records sharing short_channel_id, direction and timestamp are duplicates:
    a ``DuplicatePolicy`` warning is issued and the later record replaces the
    earlier one in place.
    """
    if format not in FORMATS:
        raise ValueError(f"unknown snapshot format {format!r}; choose from {FORMATS}")
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as e:
            raise IngestError(f"input is not UTF-8: {e}") from None
    if isinstance(data, str):
        data = io.StringIO(data)
    records = _csv_records(data) if format == "lnchan-csv-v1" else _jsonl_records(data)

    policies: list[ChannelPolicy] = []
    slot: dict[tuple, int] = {}
    for line, rec in records:
        p = _policy_from_record(rec, line)
        key = (p.short_channel_id, p.source, p.target, p.timestamp)
        if key in slot:
            warnings.warn(
                f"line {line}: duplicate policy for channel {p.short_channel_id} "
                f"at timestamp {p.timestamp}; keeping the later record",
                DuplicatePolicy,
                stacklevel=2,
            )
            policies[slot[key]] = p
        else:
            slot[key] = len(policies)
            policies.append(p)
    return Snapshot.from_policies(policies, date_label)


def detect_format(path: str | Path) -> str:
    suffix = Path(path).suffix.lower()
    return "jsonl-v1" if suffix in (".jsonl", ".json", ".ndjson") else "lnchan-csv-v1"


def load_snapshot(path: str | Path, format: str | None = None, label: str | None = None) -> Snapshot:
    path = Path(path)
    with open(path, "rb") as fh:
        data = fh.read()
    return parse_snapshot(data, format or detect_format(path), label if label is not None else path.stem)


def write_snapshot(s: Snapshot, out: IO[str], format: str = "lnchan-csv-v1") -> None:
    if format == "lnchan-csv-v1":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(FIELDS)
        for p in s.policies:
            w.writerow(_policy_values(p))
    elif format == "jsonl-v1":
        for p in s.policies:
            out.write(json.dumps(dict(zip(FIELDS, _policy_values(p, as_json=True)))) + "\n")
    else:
        raise ValueError(f"unknown snapshot format {format!r}")


def _policy_values(p: ChannelPolicy, as_json: bool = False) -> list:
    none = None if as_json else ""
    return [
        p.short_channel_id,
        p.source,
        p.target,
        p.timestamp,
        p.base_fee_msat,
        p.fee_rate_ppm,
        p.cltv_delta,
        none if p.htlc_min_msat is None else p.htlc_min_msat,
        none if p.htlc_max_msat is None else p.htlc_max_msat,
        p.capacity_sat,
        p.disabled if as_json else int(p.disabled),
    ]


def node_degrees(s: Snapshot) -> list[int]:
    """Distinct channels incident to each node, indexed like ``s.nodes``."""
    ends: dict[int, set[int]] = {}
    for p in s.policies:
        e = ends.setdefault(p.short_channel_id, set())
        e.add(s.node_index[p.source])
        e.add(s.node_index[p.target])
    deg = [0] * s.node_count
    for members in ends.values():
        for v in members:
            deg[v] += 1
    return deg


def degree_entropy(degrees: list[int]) -> float:
    """Shannon entropy of the degree histogram in bits, divided by log2(#nodes)."""
    n = len(degrees)
    if n <= 1:
        return 0.0
    h = 0.0
    for c in Counter(degrees).values():
        p = c / n
        h -= p * math.log2(p)
    return min(1.0, max(0.0, h / math.log2(n)))


def topology_stats(s: Snapshot) -> TopologyStats:
    if s.node_count < 1:
        raise EmptySnapshot("snapshot has no nodes")
    deg = node_degrees(s)
    n = len(deg)
    mean = sum(deg) / n
    var = sum((d - mean) ** 2 for d in deg) / n
    return TopologyStats(
        node_count=n,
        channel_count=s.channel_count,
        avg_degree=mean,
        degree_stddev=math.sqrt(var),
        degree_entropy_norm=degree_entropy(deg),
    )


def latest_policies(s: Snapshot) -> list[ChannelPolicy]:
    """Most recent policy per (channel, direction), in first-seen order."""
    slot: dict[tuple[int, int], int] = {}
    out: list[ChannelPolicy] = []
    for p in s.policies:
        key = (p.short_channel_id, p.direction)
        i = slot.get(key)
        if i is None:
            slot[key] = len(out)
            out.append(p)
        elif p.timestamp >= out[i].timestamp:
            out[i] = p
    return out


def to_weighted_graph(
    s: Snapshot,
    amount_msat: int = DEFAULT_AMOUNT_MSAT,
    params: WeightParams = WeightParams(),
    seed: int = 0,
) -> Graph:
    if amount_msat <= 0:
        raise ValueError(f"amount_msat must be positive, got {amount_msat}")
    entries = []
    for p in latest_policies(s):
        if not admits(p, amount_msat):
            continue
        w = edge_weight(p, amount_msat, params)
        entries.append(
            EdgeListEntry(
                s.node_index[p.source],
                s.node_index[p.target],
                perturb(w, p.edge_id, seed, params.perturb_epsilon),
                p.edge_id,
            )
        )
    return build_graph(entries, s.node_count)


def avg_degree_from_counts(node_count: int, channel_count: int) -> float:
    """Mean node degree of an undirected channel graph: each channel has two ends."""
    if node_count < 1:
        raise EmptySnapshot("no nodes")
    return 2 * channel_count / node_count
