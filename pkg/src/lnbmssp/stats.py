"""Mann-Whitney U, grouped summaries, ECDF and least-squares line fits."""

from __future__ import annotations

import math
import statistics
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Iterable, Sequence

from scipy.stats import t as student_t

EXACT_MAX = 8


class EmptySample(ValueError):
    pass


class EmptyGroup(ValueError):
    pass


class DegenerateX(ValueError):
    pass


@dataclass(frozen=True)
class MWResult:
    u_statistic: float
    z_value: float
    p_two_sided: float
    method: str  # "exact" | "normal-approx"
    u_a: float = 0.0
    u_b: float = 0.0

    @property
    def u_max(self) -> float:
        return max(self.u_a, self.u_b)


def midranks(values: Sequence[float]) -> list[float]:
    """1-based ranks with ties sharing the mean rank."""
    order = sorted(range(len(values)), key=values.__getitem__)
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        r = (i + j) / 2 + 1
        for p in range(i, j + 1):
            ranks[order[p]] = r
        i = j + 1
    return ranks


def _u_pair(a, b) -> tuple[float, float]:
    ranks = midranks(list(a) + list(b))
    n1 = len(a)
    u_a = n1 * len(b) + n1 * (n1 + 1) / 2 - sum(ranks[:n1])
    # u_a counts pairs with a_i < b_j (ties count one half)
    return u_a, n1 * len(b) - u_a


def exact_u_distribution(pooled_ranks: Sequence[float], n1: int) -> dict[float, int]:
    """Counts of U_a over all C(N, n1) ways to label ``n1`` pooled values as sample a.

    Ranks are doubled to integers so the subset-sum table is exact under ties.
    """
    N = len(pooled_ranks)
    twice = [int(round(2 * r)) for r in pooled_ranks]
    # ways[j][s]: subsets of size j with doubled rank-sum s
    ways: list[Counter] = [Counter() for _ in range(n1 + 1)]
    ways[0][0] = 1
    for r in twice:
        for j in range(min(n1, N) - 1, -1, -1):
            if ways[j]:
                row = ways[j + 1]
                for s, c in ways[j].items():
                    row[s + r] += c
    n2 = N - n1
    dist: dict[float, int] = {}
    for s2, c in ways[n1].items():
        # U_a = n1*n2 + n1(n1+1)/2 - R_a
        u = n1 * n2 + n1 * (n1 + 1) / 2 - s2 / 2
        dist[u] = dist.get(u, 0) + c
    return dist


def _exact_p(u_a: float, dist: dict[float, int], mu: float) -> float:
    """P(|U - mu| >= |u_a - mu|) under the permutation distribution."""
    total = sum(dist.values())
    dev = abs(u_a - mu) - 1e-9
    return min(1.0, sum(c for u, c in dist.items() if abs(u - mu) >= dev) / total)


def _phi_sf(z: float) -> float:
    return 0.5 * math.erfc(z / math.sqrt(2))


def mann_whitney_u(a: Sequence[float], b: Sequence[float], *, method: str = "auto") -> MWResult:
    """Two-sided Mann-Whitney U test.

    The reported statistic is ``min(U_a, U_b)``. ``method="auto"`` enumerates
    the exact permutation distribution when both samples have at most 8
    values, and otherwise uses the normal approximation with tie-corrected
    variance and a 0.5 continuity correction.
    """
    a, b = list(a), list(b)
    if not a or not b:
        raise EmptySample("both samples need at least one value")
    n, m = len(a), len(b)
    u_a, u_b = _u_pair(a, b)
    u = min(u_a, u_b)
    mu = n * m / 2
    N = n + m
    ties = sum(c ** 3 - c for c in Counter(a + b).values())
    var = n * m / 12 * ((N + 1) - (ties / (N * (N - 1)) if N > 1 else 0.0))
    sd = math.sqrt(var) if var > 0 else 0.0
    z = -max(0.0, mu - u - 0.5) / sd if sd > 0 else 0.0

    if method == "auto":
        method = "exact" if n <= EXACT_MAX and m <= EXACT_MAX else "normal-approx"
    if method == "exact":
        dist = exact_u_distribution(midranks(a + b), n)
        p = _exact_p(u_a, dist, mu)
    elif method == "normal-approx":
        p = min(1.0, 2 * _phi_sf(abs(z)))
    else:
        raise ValueError(f"unknown method {method!r}")
    return MWResult(u, z, p, method, u_a, u_b)


@dataclass(frozen=True)
class GroupSummary:
    count: int
    mean: float
    stddev: float


def summarize(records: Iterable, value: str = "runtime_ns") -> dict[tuple[str, str], GroupSummary]:
    """Mean and sample standard deviation per (snapshot, algorithm), in first-seen order."""
    groups: dict[tuple[str, str], list[float]] = defaultdict(list)
    for r in records:
        groups[(r.snapshot_label, r.algorithm)].append(float(getattr(r, value)))
    if not groups:
        raise EmptyGroup("no records to summarize")
    return {key: summarize_values(vals) for key, vals in groups.items()}


def summarize_values(values: Sequence[float]) -> GroupSummary:
    if not values:
        raise EmptyGroup("empty group")
    mean = statistics.fmean(values)
    sd = statistics.stdev(values) if len(values) > 1 else 0.0
    return GroupSummary(len(values), mean, sd)


def ecdf(sample: Iterable[float]) -> list[tuple[float, float]]:
    """Step points (value, fraction <= value) for each distinct value, ascending."""
    values = sorted(sample)
    if not values:
        raise EmptySample("ECDF of an empty sample")
    n = len(values)
    out = []
    for i, v in enumerate(values):
        if i + 1 < n and values[i + 1] == v:
            continue
        out.append((v, (i + 1) / n))
    return out


@dataclass(frozen=True)
class LinearFit:
    slope: float
    intercept: float
    slope_ci95: tuple[float, float]
    r_squared: float
    n: int = 0
    residual_se: float = 0.0
    x_mean: float = 0.0
    sxx: float = 0.0

    def predict(self, x: float) -> float:
        return self.intercept + self.slope * x

    def mean_ci95(self, x: float) -> tuple[float, float]:
        """95% confidence band of the fitted mean response at ``x``."""
        half = float(student_t.ppf(0.975, self.n - 2)) * self.residual_se * math.sqrt(
            1 / self.n + (x - self.x_mean) ** 2 / self.sxx
        )
        y = self.predict(x)
        return y - half, y + half


def linear_fit(x: Sequence[float], y: Sequence[float]) -> LinearFit:
    """Ordinary least squares y = intercept + slope*x with a t-based 95% slope CI."""
    if len(x) != len(y):
        raise ValueError("x and y differ in length")
    n = len(x)
    if n < 3:
        raise DegenerateX(f"need at least 3 points, got {n}")
    mx = statistics.fmean(x)
    my = statistics.fmean(y)
    sxx = math.fsum((xi - mx) ** 2 for xi in x)
    if sxx == 0:
        raise DegenerateX("all x values are equal")
    sxy = math.fsum((xi - mx) * (yi - my) for xi, yi in zip(x, y))
    syy = math.fsum((yi - my) ** 2 for yi in y)
    slope = sxy / sxx
    intercept = my - slope * mx
    sse = math.fsum((yi - intercept - slope * xi) ** 2 for xi, yi in zip(x, y))
    r2 = 1.0 if syy == 0 else max(0.0, min(1.0, 1 - sse / syy))
    se_resid = math.sqrt(sse / (n - 2))
    half = float(student_t.ppf(0.975, n - 2)) * se_resid / math.sqrt(sxx)
    return LinearFit(slope, intercept, (slope - half, slope + half), r2, n, se_resid, mx, sxx)
