"""Binary-heap Dijkstra with lazy deletion."""

from __future__ import annotations

import hashlib
import struct
from dataclasses import dataclass
from heapq import heappop, heappush

from .graph import Graph, IndexOutOfRange

INF = float("inf")


@dataclass
class DistResult:
    dist: list[float]
    pred: list[int | None]
    settled_count: int
    relaxations: int

    def checksum(self) -> int:
        return dist_checksum(self.dist)

    def path_to(self, v: int) -> list[int]:
        """Vertices on the recorded shortest path ending at ``v`` (empty if unreachable)."""
        if self.dist[v] == INF:
            return []
        path = [v]
        while self.pred[path[-1]] is not None:
            path.append(self.pred[path[-1]])
        path.reverse()
        return path


def dist_checksum(dist) -> int:
    """64-bit fold of a distance array (bit-exact: any differing double changes it)."""
    h = hashlib.blake2b(digest_size=8)
    h.update(struct.pack(f"<{len(dist)}d", *dist))
    return int.from_bytes(h.digest(), "little")


def dijkstra(g: Graph, source: int) -> DistResult:
    n = g.vertex_count
    if not 0 <= source < n:
        raise IndexOutOfRange(f"source {source} not in [0, {n})")
    adj = g.adjacency
    dist = [INF] * n
    pred: list[int | None] = [None] * n
    done = [False] * n
    dist[source] = 0.0
    heap = [(0.0, source)]
    settled = 0
    relaxations = 0
    while heap:
        d, u = heappop(heap)
        if done[u]:
            continue
        done[u] = True
        settled += 1
        for v, w in adj[u]:
            relaxations += 1
            nd = d + w
            if nd < dist[v]:
                dist[v] = nd
                pred[v] = u
                heappush(heap, (nd, v))
    return DistResult(dist, pred, settled, relaxations)
