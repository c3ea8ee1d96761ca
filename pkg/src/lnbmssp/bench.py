"""Seeded, paired benchmark of the SSSP solvers over a set of graphs."""

from __future__ import annotations

import csv
import hashlib
import logging
import random
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

from .bmssp import BmsspParams, bmssp_sssp
from .dijkstra import DistResult, dijkstra
from .graph import Graph

log = logging.getLogger(__name__)

ALGORITHMS = ("dijkstra", "bmssp")
RECORDS_HEADER = ("snapshot", "algorithm", "trial", "source", "runtime_ns", "relaxations", "checksum")
SIZES_HEADER = ("snapshot", "nodes", "edges")


class ChecksumMismatch(RuntimeError):
    def __init__(self, snapshot: str, trial: int, source: int, checksums: dict[str, int]):
        detail = ", ".join(f"{a}={c:016x}" for a, c in checksums.items())
        super().__init__(
            f"solvers disagree on snapshot {snapshot!r}, trial {trial}, source {source}: {detail}"
        )
        self.snapshot = snapshot
        self.trial = trial
        self.source = source
        self.checksums = checksums


@dataclass(frozen=True)
class BenchRecord:
    snapshot_label: str
    algorithm: str
    trial_index: int
    source_vertex: int
    runtime_ns: int
    relaxations: int
    dist_checksum: int

    def row(self) -> list:
        return [
            self.snapshot_label,
            self.algorithm,
            self.trial_index,
            self.source_vertex,
            self.runtime_ns,
            self.relaxations,
            f"{self.dist_checksum:016x}",
        ]


@dataclass
class BenchConfig:
    trials: int = 100
    seed: int = 42
    algorithms: tuple[str, ...] = ALGORITHMS
    warmup: int = 3
    frontier_backend: str = "blocks"
    k_override: int | None = None
    t_override: int | None = None
    verify: bool = True

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        unknown = set(self.algorithms) - set(ALGORITHMS)
        if unknown or not self.algorithms:
            raise ValueError(f"unknown algorithms {sorted(unknown)}; choose from {ALGORITHMS}")


def derive_seed(seed: int, label: str) -> int:
    digest = hashlib.blake2b(f"{seed}:{label}".encode(), digest_size=8).digest()
    return int.from_bytes(digest, "little")


def draw_sources(n: int, trials: int, seed: int, label: str) -> list[int]:
    """Uniform sources with replacement, reproducible from (seed, label)."""
    rng = random.Random(derive_seed(seed, label))
    return [rng.randrange(n) for _ in range(trials)]


def make_solver(name: str, g: Graph, cfg: BenchConfig) -> Callable[[int], DistResult]:
    if name == "dijkstra":
        return lambda s: dijkstra(g, s)
    if name == "bmssp":
        params = BmsspParams.for_size(g.vertex_count, cfg.k_override, cfg.t_override)
        backend = cfg.frontier_backend
        return lambda s: bmssp_sssp(g, s, params, frontier_backend=backend)
    raise ValueError(f"unknown algorithm {name!r}")


def run_benchmark(
    snapshots: Sequence[tuple[str, Graph]],
    trials: int = 100,
    seed: int = 42,
    config: BenchConfig | None = None,
    *,
    clock: Callable[[], int] = time.perf_counter_ns,
    progress: Callable[[str, int], None] | None = None,
) -> list[BenchRecord]:
    """Time every algorithm on the same random sources for each graph.

    Records come out grouped by snapshot, then trial, then algorithm. When
    more than one algorithm runs, their distance checksums must agree on every
    trial; a disagreement raises ``ChecksumMismatch``.
    """
    cfg = config or BenchConfig(trials=trials, seed=seed)
    records: list[BenchRecord] = []
    for label, g in snapshots:
        if g.vertex_count < 1:
            raise ValueError(f"graph {label!r} is empty")
        sources = draw_sources(g.vertex_count, cfg.trials, cfg.seed, label)
        solvers = {name: make_solver(name, g, cfg) for name in cfg.algorithms}
        for name, solve in solvers.items():
            for i in range(cfg.warmup):
                solve(sources[i % len(sources)])
        log.info("benchmarking %s (n=%d, m=%d)", label, g.vertex_count, g.edge_count)
        for trial, src in enumerate(sources):
            sums: dict[str, int] = {}
            for name, solve in solvers.items():
                t0 = clock()
                res = solve(src)
                elapsed = clock() - t0
                sums[name] = res.checksum()
                records.append(
                    BenchRecord(label, name, trial, src, max(1, elapsed), res.relaxations, sums[name])
                )
            if cfg.verify and len(set(sums.values())) > 1:
                raise ChecksumMismatch(label, trial, src, sums)
            if progress is not None:
                progress(label, trial)
    return records


def write_records(records: Sequence[BenchRecord], path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(RECORDS_HEADER)
        for r in records:
            w.writerow(r.row())


def read_records(path: str | Path) -> list[BenchRecord]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(header) != RECORDS_HEADER:
            raise ValueError(f"{path}: not a records.csv file (header {header})")
        out = []
        for row in reader:
            if not row:
                continue
            label, alg, trial, src, ns, relax, checksum = row
            out.append(BenchRecord(label, alg, int(trial), int(src), int(ns), int(relax), int(checksum, 16)))
    return out


def write_sizes(sizes: dict[str, tuple[int, int]], path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SIZES_HEADER)
        for label, (n, m) in sizes.items():
            w.writerow([label, n, m])


def read_sizes(path: str | Path) -> dict[str, tuple[int, int]]:
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    return {r["snapshot"]: (int(r["nodes"]), int(r["edges"])) for r in rows}
