"""Bounded multi-source shortest paths (BMSSP) and its SSSP driver.

Vertices are ordered by the key ``((dhat[v], hops[v]), v)`` where ``hops``
is the edge count of the tentative path; every bound in the recursion is such
a key. Tentative distances are minimised lexicographically over
``(length, hops)``, so the length component is the ordinary shortest distance
while a tight edge always leads to a strictly larger key, zero-weight edges
included. With unique path lengths this is plain ordering by distance; with
ties it is still a strict total order, so pulls, base cases and pivots stay
well defined on unperturbed graphs.

Relaxations use ``<=`` as in the original algorithm: an edge that merely
re-confirms a tentative distance still re-files its head in the frontier.
Predecessors only move on strict improvement, which keeps the predecessor
graph acyclic even with zero-weight cycles.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from heapq import heappop, heappush

from ..dijkstra import DistResult
from ..graph import Graph, IndexOutOfRange
from .frontier import make_frontier

INF = float("inf")
TOP = ((INF, INF), INF)


class RecursionContractViolation(AssertionError):
    pass


def as_bound(b) -> tuple:
    """Key bound from a plain distance: admits exactly the distances below ``b``."""
    if isinstance(b, tuple):
        return b
    return ((float(b), -INF), -INF)


def _iroot(x: float, p: int, q: int) -> int:
    """Largest integer c >= 0 with c**q <= x**p (for x >= 0)."""
    target = x ** p
    c = int(round(x ** (p / q)))
    while c > 0 and c ** q > target * (1 + 1e-12):
        c -= 1
    while (c + 1) ** q <= target * (1 + 1e-12):
        c += 1
    return c


@dataclass(frozen=True)
class BmsspParams:
    k: int
    t: int
    top_level: int

    def __post_init__(self):
        if self.k < 1 or self.t < 1 or self.top_level < 1:
            raise ValueError(f"invalid BMSSP parameters {self}")

    @classmethod
    def for_size(cls, n: int, k: int | None = None, t: int | None = None) -> "BmsspParams":
        """Default parameters: k = floor(log^(1/3) n), t = floor(log^(2/3) n), base 2."""
        lg = math.log2(n) if n > 1 else 0.0
        if k is None:
            k = max(1, _iroot(lg, 1, 3))
        if t is None:
            t = max(1, _iroot(lg, 2, 3))
        top = max(1, math.ceil(lg / t - 1e-12))
        return cls(k=k, t=t, top_level=top)


@dataclass
class Counters:
    relaxations: int = 0
    bmssp_calls: int = 0
    pivot_calls: int = 0
    base_calls: int = 0
    pulls: int = 0
    timings: dict[str, float] = field(default_factory=dict)


class Hooks:
    """Instrumentation callbacks; subclass and override what you need."""

    def enter(self, state, level, B, S):
        pass

    def pulled(self, state, level, frontier, S_i, B_i):
        pass

    def leave(self, state, level, B, S, B_prime, U, truncated):
        pass


@dataclass
class BmsspState:
    dhat: list
    hops: list
    pred: list
    complete: bytearray
    params: BmsspParams
    frontier_backend: str = "blocks"
    hooks: Hooks | None = None
    profile: bool = False
    counters: Counters = field(default_factory=Counters)

    @classmethod
    def fresh(cls, g: Graph, source: int, params: BmsspParams | None = None, **kw) -> "BmsspState":
        n = g.vertex_count
        dhat = kw.pop("dhat_factory", list)([INF] * n)
        dhat[source] = 0.0
        hops = [INF] * n
        hops[source] = 0
        return cls(
            dhat=dhat,
            hops=hops,
            pred=[None] * n,
            complete=bytearray(n),
            params=params or BmsspParams.for_size(n),
            **kw,
        )

    def key(self, v: int) -> tuple:
        return ((self.dhat[v], self.hops[v]), v)


def _lt(d, h, v, B) -> bool:
    """Is the key ((d, h), v) strictly below bound B?"""
    (bd, bh), bv = B
    return d < bd or (d == bd and (h < bh or (h == bh and v < bv)))


def find_pivots(g: Graph, state: BmsspState, B: tuple, S, k: int):
    """k rounds of bounded Bellman-Ford from ``S``; returns (pivots, reached).

    Reached vertices ``W`` are those whose tentative key dropped below ``B``
    during the rounds (plus ``S``). When ``W`` outgrows ``k*|S|`` every source
    is kept as a pivot; otherwise only roots whose tight-edge tree inside ``W``
    has at least ``k`` vertices are.
    """
    t0 = time.perf_counter() if state.profile else 0.0
    state.counters.pivot_calls += 1
    adj = g.adjacency
    dhat, hops, pred = state.dhat, state.hops, state.pred
    Bd = B[0][0]
    roots = set(S)
    W = set(roots)
    parent: dict[int, tuple] = {}
    layer = roots
    limit = k * len(roots)
    relax = 0
    big = False
    for _ in range(k):
        nxt = set()
        for u in layer:
            du = dhat[u]
            hu = hops[u] + 1
            edges = adj[u]
            relax += len(edges)
            for v, w in edges:
                nd = du + w
                dv = dhat[v]
                if nd < dv or (nd == dv and hu <= hops[v]):
                    if nd < dv or hu < hops[v]:
                        dhat[v] = nd
                        hops[v] = hu
                        pred[v] = u
                    if v not in roots:
                        parent[v] = (u, du, nd, hu)
                    if nd < Bd or _lt(nd, hu, v, B):
                        nxt.add(v)
        W |= nxt
        if len(W) > limit:
            big = True
            break
        layer = nxt
        if not layer:
            break
    state.counters.relaxations += relax

    if big:
        P = list(S)
    else:
        # tight forest: parent links that still realise the child's (length, hops)
        children: dict[int, list[int]] = {}
        for v in W:
            rec = parent.get(v)
            if rec is None:
                continue
            u, du, nd, hu = rec
            if (u in W and dhat[v] == nd and hops[v] == hu
                    and dhat[u] == du and hops[u] == hu - 1):
                children.setdefault(u, []).append(v)
        P = []
        for s in S:
            size = 0
            stack = [s]
            while stack and size < k:
                x = stack.pop()
                size += 1
                stack.extend(children.get(x, ()))
            if size >= k:
                P.append(s)
    if state.profile:
        _tick(state, "find_pivots", t0)
    return P, W


def base_case(g: Graph, state: BmsspState, B: tuple, x: int, k: int):
    """Dijkstra from ``x`` below ``B`` that stops after k+1 settled vertices."""
    t0 = time.perf_counter() if state.profile else 0.0
    state.counters.base_calls += 1
    adj = g.adjacency
    dhat, hops, pred = state.dhat, state.hops, state.pred
    Bd = B[0][0]
    settled: list[int] = []
    done = set()
    heap = [(dhat[x], hops[x], x)]
    relax = 0
    while heap and len(settled) <= k:
        d, h, u = heappop(heap)
        if u in done or d > dhat[u] or h > hops[u]:
            continue
        done.add(u)
        settled.append(u)
        edges = adj[u]
        relax += len(edges)
        h += 1
        for v, w in edges:
            nd = d + w
            dv = dhat[v]
            if (nd < dv or (nd == dv and h <= hops[v])) and (nd < Bd or _lt(nd, h, v, B)):
                if nd < dv or h < hops[v]:
                    dhat[v] = nd
                    hops[v] = h
                    pred[v] = u
                if v not in done:
                    heappush(heap, (nd, h, v))
    state.counters.relaxations += relax
    if len(settled) <= k:
        out = B, settled
    else:
        # settle order is key order, so the last vertex carries the largest key
        last = settled.pop()
        out = state.key(last), settled
    if state.profile:
        _tick(state, "base_case", t0)
    return out


def bmssp(g: Graph, state: BmsspState, level: int, B: tuple, S):
    """One BMSSP call. Returns ``(B_prime, U)`` with ``U`` the vertices whose
    distance is now final and whose key lies below ``B_prime <= B``."""
    params = state.params
    k, t = params.k, params.t
    if len(S) > 1 << (level * t):
        raise RecursionContractViolation(
            f"|S|={len(S)} exceeds 2^(level*t)={1 << (level * t)} at level {level}"
        )
    state.counters.bmssp_calls += 1
    hooks = state.hooks
    if hooks is not None:
        hooks.enter(state, level, B, S)

    if level == 0:
        if len(S) != 1:
            raise RecursionContractViolation(f"base case needs a singleton, got {len(S)}")
        B_prime, U = base_case(g, state, B, next(iter(S)), k)
        U = set(U)
        truncated = B_prime != B
    else:
        B_prime, U, truncated = _bmssp_level(g, state, level, B, S, k, t)

    complete = state.complete
    for v in U:
        complete[v] = 1
    if hooks is not None:
        hooks.leave(state, level, B, S, B_prime, U, truncated)
    return B_prime, U


def _bmssp_level(g, state, level, B, S, k, t):
    adj = g.adjacency
    dhat, hops, pred = state.dhat, state.hops, state.pred
    hooks = state.hooks
    P, W = find_pivots(g, state, B, S, k)
    D = make_frontier(state.frontier_backend, 1 << ((level - 1) * t), B, validate=False)
    for x in P:
        D.insert(x, (dhat[x], hops[x]))
    limit = k << (level * t)
    Bd = B[0][0]
    U: set[int] = set()
    B_last = B
    truncated = False
    relax = 0
    while D:
        S_i, B_i = D.pull()
        state.counters.pulls += 1
        if hooks is not None:
            hooks.pulled(state, level, D, S_i, B_i)
        Bp_i, U_i = bmssp(g, state, level - 1, B_i, S_i)
        B_last = Bp_i
        U |= U_i
        Bid = B_i[0][0]
        Bpd = Bp_i[0][0]
        K = []
        for u in U_i:
            du = dhat[u]
            hu = hops[u] + 1
            edges = adj[u]
            relax += len(edges)
            for v, w in edges:
                nd = du + w
                dv = dhat[v]
                if nd < dv or (nd == dv and hu <= hops[v]):
                    if nd < dv or hu < hops[v]:
                        dhat[v] = nd
                        hops[v] = hu
                        pred[v] = u
                    if nd > Bid or not _lt(nd, hu, v, B_i):
                        if nd < Bd or _lt(nd, hu, v, B):
                            D.insert(v, (nd, hu))
                    elif nd > Bpd or not _lt(nd, hu, v, Bp_i):
                        K.append((v, (nd, hu)))
        for x in S_i:
            dx, hx = dhat[x], hops[x]
            if not _lt(dx, hx, x, Bp_i) and _lt(dx, hx, x, B_i):
                K.append((x, (dx, hx)))
        if K:
            D.batch_prepend(K)
        if len(U) > limit:
            truncated = bool(D)
            break
    state.counters.relaxations += relax
    B_prime = min(B_last, B)
    for x in W:
        if _lt(dhat[x], hops[x], x, B_prime):
            U.add(x)
    return B_prime, U, truncated


def _tick(state: BmsspState, name: str, t0: float) -> None:
    tm = state.counters.timings
    tm[name] = tm.get(name, 0.0) + time.perf_counter() - t0


def bmssp_sssp(
    g: Graph,
    source: int,
    params: BmsspParams | None = None,
    *,
    frontier_backend: str = "blocks",
    hooks: Hooks | None = None,
    profile: bool = False,
    state: BmsspState | None = None,
) -> DistResult:
    """Single-source shortest paths via a top-level BMSSP call with B = +inf."""
    n = g.vertex_count
    if not 0 <= source < n:
        raise IndexOutOfRange(f"source {source} not in [0, {n})")
    if state is None:
        state = BmsspState.fresh(
            g, source, params, frontier_backend=frontier_backend, hooks=hooks, profile=profile
        )
    t0 = time.perf_counter()
    bmssp(g, state, state.params.top_level, TOP, [source])
    if state.profile:
        _tick(state, "total", t0)
    dist = list(state.dhat)
    settled = sum(1 for d in dist if d != INF)
    return DistResult(dist, list(state.pred), settled, state.counters.relaxations)
