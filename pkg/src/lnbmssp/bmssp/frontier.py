"""Partial-order frontier used by the BMSSP recursion.

Both backends store at most one value per vertex and order entries by the
composite key ``(value, vertex)``, which makes every key distinct even when
path lengths tie. Bounds are keys as well; a plain float bound ``B`` is
promoted to ``(B, -inf)``, which admits exactly the values strictly below ``B``.

``BlockFrontier`` follows the block layout of the original data structure:
a sequence ``D0`` of batch-prepended blocks (each block smaller than the
next) and a sequence ``D1`` of inserted blocks partitioned by upper bounds.
``HeapFrontier`` is a binary heap with lazy deletion that honours the same
contract; it exists for differential testing and for measuring what the
block machinery costs.
"""

from __future__ import annotations

from bisect import bisect_left
from heapq import heapify, heappop, heappush
from typing import Iterable

INF = float("inf")

Key = tuple  # (value, vertex)


class FrontierError(Exception):
    pass


class BoundViolation(FrontierError, ValueError):
    pass


class OrderViolation(FrontierError, ValueError):
    pass


class EmptyFrontier(FrontierError, LookupError):
    pass


def as_key(bound) -> Key:
    if isinstance(bound, tuple):
        return bound
    return (float(bound), -INF)


class _FrontierBase:
    def __init__(self, M: int, B, *, validate: bool = True):
        if M < 1:
            raise ValueError(f"M must be >= 1, got {M}")
        self.M = int(M)
        self.B = as_key(B)
        self.validate = validate
        self._best: dict[int, float] = {}

    def __len__(self) -> int:
        return len(self._best)

    def __bool__(self) -> bool:
        return bool(self._best)

    def __contains__(self, v: int) -> bool:
        return v in self._best

    def value(self, v: int) -> float:
        return self._best[v]

    def items(self) -> dict[int, float]:
        return dict(self._best)

    def min_key(self) -> Key | None:
        if not self._best:
            return None
        return min((val, v) for v, val in self._best.items())

    def _check_bound(self, v: int, val: float) -> None:
        if not (val, v) < self.B:
            raise BoundViolation(f"value {val} for vertex {v} not below bound {self.B[0]}")

    def _prepare_prepend(self, pairs: Iterable[tuple[int, float]]) -> list[Key]:
        """Dedupe ``pairs`` (keep the minimum) and drop entries that would not improve."""
        fresh: dict[int, float] = {}
        for v, val in pairs:
            old = fresh.get(v)
            if old is None or val < old:
                fresh[v] = val
        best = self._best
        keys = []
        for v, val in fresh.items():
            if self.validate:
                self._check_bound(v, val)
            cur = best.get(v)
            if cur is None or val < cur:
                keys.append((val, v))
        if self.validate and keys:
            top = max(keys)
            others = [(val, v) for v, val in best.items() if v not in fresh]
            if others and top > min(others):
                raise OrderViolation(
                    f"prepended value {top[0]} exceeds stored minimum {min(others)[0]}"
                )
        return keys


class BlockFrontier(_FrontierBase):
    def __init__(self, M: int, B, *, validate: bool = True):
        super().__init__(M, B, validate=validate)
        # D0: blocks in descending order so the smallest block sits at the end
        self._d0: list[list[tuple]] = []
        # D1: ascending upper bounds, one block per bound
        self._d1_bounds: list[tuple] = [self.B]
        self._d1_blocks: list[list[tuple]] = [[]]
        # block entries are (value, vertex, stamp); only the latest stamp is live
        self._stamp: dict[int, int] = {}
        self._clock = 0

    def insert(self, v: int, val: float) -> None:
        cur = self._best.get(v)
        if cur is not None and cur <= val:
            return
        if not (val, v) < self.B:
            raise BoundViolation(f"value {val} for vertex {v} not below bound {self.B[0]}")
        self._best[v] = val
        self._clock += 1
        self._stamp[v] = self._clock
        key = (val, v, self._clock)
        i = bisect_left(self._d1_bounds, key)
        block = self._d1_blocks[i]
        block.append(key)
        if len(block) > self.M:
            self._split_d1(i)

    def _split_d1(self, i: int) -> None:
        block = self._live(self._d1_blocks[i])
        if len(block) <= self.M:
            self._d1_blocks[i] = block
            return
        block.sort()
        half = len(block) // 2
        lower, upper = block[:half], block[half:]
        self._d1_blocks[i] = upper
        self._d1_blocks.insert(i, lower)
        self._d1_bounds.insert(i, lower[-1])

    def batch_prepend(self, pairs: Iterable[tuple[int, float]]) -> None:
        keys = self._prepare_prepend(pairs)
        if not keys:
            return
        best, stamp = self._best, self._stamp
        clock = self._clock
        entries = []
        for val, v in keys:
            best[v] = val
            clock += 1
            stamp[v] = clock
            entries.append((val, v, clock))
        self._clock = clock
        keys = entries
        if len(keys) <= self.M:
            self._d0.append(keys)
            return
        keys.sort()
        step = max(1, (self.M + 1) // 2)
        chunks = [keys[j:j + step] for j in range(0, len(keys), step)]
        chunks.reverse()
        self._d0.extend(chunks)

    def _live(self, block: list[tuple]) -> list[tuple]:
        stamp = self._stamp
        return [e for e in block if stamp.get(e[1]) == e[2]]

    def pull(self) -> tuple[list[int], Key]:
        """Remove up to M smallest entries; return them with a separating key.

        The separator is the smallest key left behind, or the structure's
        bound once it drains, so every pulled key is strictly below it.
        """
        if not self._best:
            raise EmptyFrontier("pull from empty frontier")
        M = self.M
        d0, blocks1 = self._d0, self._d1_blocks

        cand: list[tuple] = []
        got = 0
        j = len(d0) - 1
        while j >= 0 and got < M:
            live = self._live(d0[j])
            cand.extend(live)
            got += len(live)
            j -= 1
        d0_lo = j + 1  # d0[d0_lo:] were scanned
        got = 0
        i = 0
        while i < len(blocks1) and got < M:
            live = self._live(blocks1[i])
            cand.extend(live)
            got += len(live)
            i += 1
        d1_hi = i  # blocks1[:d1_hi] were scanned

        if len(cand) > M:
            cand.sort()
            del cand[M:]
        best, stamp = self._best, self._stamp
        for e in cand:
            del best[e[1]]
            del stamp[e[1]]

        kept0 = [b for b in (self._live(b) for b in d0[d0_lo:]) if b]
        del d0[d0_lo:]
        d0.extend(kept0)
        kept1 = [self._live(b) for b in blocks1[:d1_hi]]
        bounds1 = self._d1_bounds
        keep = [x for x in range(d1_hi) if kept1[x] or x == len(blocks1) - 1]
        blocks1[:d1_hi] = [kept1[x] for x in keep]
        bounds1[:d1_hi] = [bounds1[x] for x in keep]

        return [e[1] for e in cand], self._separator()

    def _separator(self) -> Key:
        if not self._best:
            return self.B
        sep = self.B
        d0 = self._d0
        while d0:
            live = self._live(d0[-1])
            if live:
                d0[-1] = live
                sep = min(sep, min(live)[:2])
                break
            d0.pop()
        blocks1 = self._d1_blocks
        while True:
            live = self._live(blocks1[0])
            blocks1[0] = live
            if live or len(blocks1) == 1:
                break
            del blocks1[0]
            del self._d1_bounds[0]
        if blocks1[0]:
            sep = min(sep, min(blocks1[0])[:2])
        return sep

    def check_invariants(self) -> None:
        """Structural self-check used by the test-suite."""
        found = set()
        prev_max = None
        for block in reversed(self._d0):
            live = self._live(block)
            if live:
                assert prev_max is None or prev_max <= min(live), "D0 blocks out of order"
                prev_max = max(live)
            found.update(e[1] for e in live)
        assert self._d1_bounds[-1] == self.B
        assert len(self._d1_bounds) == len(self._d1_blocks)
        lo = None
        for bound, block in zip(self._d1_bounds, self._d1_blocks):
            for e in self._live(block):
                assert e <= bound and (lo is None or e > lo), "D1 key outside its block range"
                found.add(e[1])
            lo = bound
        assert found == set(self._best), "stored vertices not reachable through blocks"


class HeapFrontier(_FrontierBase):
    """Same contract as ``BlockFrontier`` on a single lazily-cleaned heap."""

    def __init__(self, M: int, B, *, validate: bool = True):
        super().__init__(M, B, validate=validate)
        self._heap: list[Key] = []

    def insert(self, v: int, val: float) -> None:
        cur = self._best.get(v)
        if cur is not None and cur <= val:
            return
        if not (val, v) < self.B:
            raise BoundViolation(f"value {val} for vertex {v} not below bound {self.B[0]}")
        self._best[v] = val
        heappush(self._heap, (val, v))

    def batch_prepend(self, pairs: Iterable[tuple[int, float]]) -> None:
        keys = self._prepare_prepend(pairs)
        best = self._best
        heap = self._heap
        for key in keys:
            best[key[1]] = key[0]
            heappush(heap, key)
        if len(heap) > 4 * len(best) + 64:
            self._heap = [k for k in heap if best.get(k[1]) == k[0]]
            heapify(self._heap)

    def _clean_top(self) -> None:
        heap, best = self._heap, self._best
        while heap and best.get(heap[0][1]) != heap[0][0]:
            heappop(heap)

    def pull(self) -> tuple[list[int], Key]:
        if not self._best:
            raise EmptyFrontier("pull from empty frontier")
        heap, best = self._heap, self._best
        out = []
        while len(out) < self.M and best:
            self._clean_top()
            val, v = heappop(heap)
            del best[v]
            out.append(v)
        self._clean_top()
        return out, (heap[0] if heap else self.B)


BACKENDS = {"blocks": BlockFrontier, "ordered-map": HeapFrontier}


def make_frontier(backend: str, M: int, B, *, validate: bool = True):
    try:
        cls = BACKENDS[backend]
    except KeyError:
        raise ValueError(f"unknown frontier backend {backend!r}; choose from {sorted(BACKENDS)}") from None
    return cls(M, B, validate=validate)
