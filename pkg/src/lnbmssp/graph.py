"""Immutable weighted digraph in compressed adjacency (CSR) form."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence


class GraphError(ValueError):
    pass


class NegativeWeight(GraphError):
    pass


class NonFiniteWeight(GraphError):
    pass


class IndexOutOfRange(GraphError, IndexError):
    pass


class SelfLoop(GraphError):
    pass


class EdgeListEntry(NamedTuple):
    src: int
    dst: int
    weight: float
    edge_id: int = 0


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    edge_count: int
    offsets: tuple[int, ...]
    targets: tuple[int, ...]
    weights: tuple[float, ...]
    edge_ids: tuple[int, ...]
    # per-vertex (dst, weight) pairs; the solvers iterate this instead of the flat arrays
    adjacency: tuple[tuple[tuple[int, float], ...], ...] = field(repr=False, compare=False)

    @property
    def n(self) -> int:
        return self.vertex_count

    @property
    def m(self) -> int:
        return self.edge_count

    def out_edges(self, v: int) -> list[tuple[int, float, int]]:
        return out_edges(self, v)

    def out_degree(self, v: int) -> int:
        self._check_vertex(v)
        return self.offsets[v + 1] - self.offsets[v]

    def edges(self) -> Iterable[EdgeListEntry]:
        for u in range(self.vertex_count):
            for i in range(self.offsets[u], self.offsets[u + 1]):
                yield EdgeListEntry(u, self.targets[i], self.weights[i], self.edge_ids[i])

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.vertex_count:
            raise IndexOutOfRange(f"vertex {v} not in [0, {self.vertex_count})")


def build_graph(
    entries: Sequence[EdgeListEntry] | Iterable[tuple],
    n: int,
    *,
    allow_self_loops: bool = False,
) -> Graph:
    """Build a CSR graph from an edge list.

    Entries may be ``EdgeListEntry`` or plain ``(src, dst, weight[, edge_id])``
    tuples. A vertex's out-edges keep their input order. Missing edge ids
    default to the entry's position in the input.
    """
    if n < 1:
        raise GraphError(f"vertex count must be >= 1, got {n}")
    rows: list[tuple[int, int, float, int]] = []
    for pos, e in enumerate(entries):
        if len(e) == 3:
            src, dst, w = e
            eid = pos
        else:
            src, dst, w, eid = e
        if not (0 <= src < n and 0 <= dst < n):
            raise IndexOutOfRange(f"edge {pos}: ({src}, {dst}) out of range for n={n}")
        w = float(w)
        if not math.isfinite(w):
            raise NonFiniteWeight(f"edge {pos}: weight {w}")
        if w < 0:
            raise NegativeWeight(f"edge {pos}: weight {w}")
        if src == dst and not allow_self_loops:
            raise SelfLoop(f"edge {pos}: self-loop at {src}")
        rows.append((src, dst, w, int(eid)))

    counts = [0] * (n + 1)
    for src, _, _, _ in rows:
        counts[src + 1] += 1
    for v in range(n):
        counts[v + 1] += counts[v]
    offsets = tuple(counts)

    m = len(rows)
    targets = [0] * m
    weights = [0.0] * m
    edge_ids = [0] * m
    cursor = list(offsets[:-1])
    for src, dst, w, eid in rows:  # counting sort keeps input order per vertex
        i = cursor[src]
        cursor[src] = i + 1
        targets[i] = dst
        weights[i] = w
        edge_ids[i] = eid

    adjacency = tuple(
        tuple(zip(targets[offsets[v]:offsets[v + 1]], weights[offsets[v]:offsets[v + 1]]))
        for v in range(n)
    )
    return Graph(
        vertex_count=n,
        edge_count=m,
        offsets=offsets,
        targets=tuple(targets),
        weights=tuple(weights),
        edge_ids=tuple(edge_ids),
        adjacency=adjacency,
    )


def out_edges(g: Graph, v: int) -> list[tuple[int, float, int]]:
    g._check_vertex(v)
    lo, hi = g.offsets[v], g.offsets[v + 1]
    return list(zip(g.targets[lo:hi], g.weights[lo:hi], g.edge_ids[lo:hi]))


def random_sparse_digraph(
    n: int,
    avg_out_degree: float,
    rng,
    *,
    weight_sampler=None,
) -> Graph:
    """Uniform random digraph with about ``avg_out_degree * n`` edges, no self-loops.

    ``rng`` is a ``random.Random``. Weights default to uniform in (0, 1).
    """
    if weight_sampler is None:
        def weight_sampler():
            w = rng.random()
            while w == 0.0:
                w = rng.random()
            return w
    m = int(round(avg_out_degree * n)) if n > 1 else 0
    entries = []
    for i in range(m):
        u = rng.randrange(n)
        v = rng.randrange(n - 1)
        if v >= u:
            v += 1
        entries.append(EdgeListEntry(u, v, weight_sampler(), i))
    return build_graph(entries, n)
