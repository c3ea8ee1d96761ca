"""Property-based checks of the invariants each module promises."""

import io
import math
import random

import hypothesis.strategies as st
from hypothesis import assume, given, settings

from lnbmssp.bmssp import BmsspParams, bmssp_sssp, make_frontier
from lnbmssp.dijkstra import dijkstra
from lnbmssp.graph import build_graph, out_edges
from lnbmssp.ingest import ChannelPolicy, parse_snapshot, write_snapshot
from lnbmssp.stats import ecdf, linear_fit, mann_whitney_u
from lnbmssp.weights import WeightParams, edge_weight, perturb
from oracles import INF, bellman_ford, frontier_sequence, mw_brute, mw_pairs


@st.composite
def digraphs(draw, max_n=40, weights=None):
    n = draw(st.integers(1, max_n))
    w = weights if weights is not None else st.floats(0, 1, allow_nan=False, exclude_max=True)
    if n == 1:
        return n, []
    pair = st.tuples(st.integers(0, n - 1), st.integers(0, n - 2)).map(lambda p: (p[0], p[1] + (p[1] >= p[0])))
    edges = draw(st.lists(st.tuples(pair, w), max_size=5 * n))
    return n, [(u, v, wt) for (u, v), wt in edges]


mixed_weights = st.one_of(
    st.floats(0, 1, allow_nan=False, exclude_max=True),
    st.integers(0, 3).map(float),
    st.sampled_from([0.0, 0.1, 0.2, 0.3]),
)


class TestGraph:
    @given(digraphs())
    def test_round_trip(self, case):
        n, edges = case
        g = build_graph(edges, n)
        assert g.offsets[0] == 0 and g.offsets[-1] == g.m == len(edges)
        assert all(a <= b for a, b in zip(g.offsets, g.offsets[1:]))
        recovered = sorted((u, d, w, eid) for u in range(n) for d, w, eid in out_edges(g, u))
        assert recovered == sorted((u, v, w, i) for i, (u, v, w) in enumerate(edges))


class TestShortestPaths:
    @given(digraphs(weights=mixed_weights), st.data())
    def test_dijkstra_matches_bellman_ford(self, case, data):
        n, edges = case
        s = data.draw(st.integers(0, n - 1))
        assert dijkstra(build_graph(edges, n), s).dist == bellman_ford(n, edges, s)

    @given(digraphs(weights=mixed_weights), st.data())
    def test_fixpoint_and_reachability(self, case, data):
        n, edges = case
        s = data.draw(st.integers(0, n - 1))
        g = build_graph(edges, n)
        r = dijkstra(g, s)
        assert r.dist[s] == 0.0
        for u, v, w in edges:
            assert r.dist[v] <= r.dist[u] + w
        for v in range(n):
            if v != s:
                assert (r.dist[v] == INF) == (r.pred[v] is None)
        assert r == dijkstra(g, s)

    @settings(max_examples=300)
    @given(digraphs(max_n=60, weights=mixed_weights), st.data(),
           st.sampled_from(["blocks", "ordered-map"]),
           st.sampled_from([None, (1, 1), (2, 1), (1, 3), (3, 2)]))
    def test_bmssp_matches_dijkstra(self, case, data, backend, kt):
        n, edges = case
        s = data.draw(st.integers(0, n - 1))
        g = build_graph(edges, n)
        params = BmsspParams.for_size(n, *(kt or (None, None)))
        r = bmssp_sssp(g, s, params, frontier_backend=backend)
        assert r.dist == dijkstra(g, s).dist
        for v, p in enumerate(r.pred):
            if p is not None:
                assert any(d == v and r.dist[p] + w == r.dist[v] for d, w, _ in out_edges(g, p))


class TestFrontier:
    @settings(max_examples=300)
    @given(st.randoms(use_true_random=False))
    def test_sequences_match_model(self, rng):
        frontier_sequence(rng, make_frontier, ["blocks", "ordered-map"])


policies = st.builds(
    ChannelPolicy,
    short_channel_id=st.just(1),
    source=st.just("02" + "11" * 32),
    target=st.just("03" + "22" * 32),
    timestamp=st.just(0),
    base_fee_msat=st.integers(0, 10**4),
    fee_rate_ppm=st.integers(0, 10**4),
    cltv_delta=st.integers(0, 2016),
    htlc_min_msat=st.none(),
    htlc_max_msat=st.none(),
    capacity_sat=st.just(10**6),
    disabled=st.just(False),
)


class TestWeights:
    @given(policies, st.integers(1, 10**10), st.sampled_from(["base_fee_msat", "fee_rate_ppm", "cltv_delta", "amount"]),
           st.integers(1, 1000))
    def test_monotone(self, p, amount, field, bump):
        before = edge_weight(p, amount)
        if field == "amount":
            after = edge_weight(p, amount + bump)
        else:
            after = edge_weight(p.__class__(**{**p.__dict__, field: getattr(p, field) + bump}), amount)
        assert after >= before

    @given(st.floats(0, 1e9), st.floats(0, 1e9), st.integers(0, 2**64 - 1), st.integers(0, 2**64 - 1),
           st.integers(0, 2**64 - 1))
    def test_perturb_preserves_clear_order(self, w1, w2, e1, e2, seed):
        eps = 1e-9
        assume(w1 + eps * max(w1, 1.0) < w2)
        assert perturb(w1, e1, seed, eps) < perturb(w2, e2, seed, eps)

    @given(st.floats(0, 1e12), st.integers(0, 2**64 - 1), st.integers(0, 2**64 - 1))
    def test_perturb_bounds(self, w, eid, seed):
        p = perturb(w, eid, seed, 1e-9)
        assert w < p <= w + 1e-9 * max(w, 1.0)
        assert p == perturb(w, eid, seed, 1e-9)


class TestIngest:
    @given(st.lists(policies, min_size=1, max_size=6), st.booleans())
    def test_write_parse_round_trip(self, ps, as_json):
        ps = [p.__class__(**{**p.__dict__, "short_channel_id": i}) for i, p in enumerate(ps)]
        fmt = "jsonl-v1" if as_json else "lnchan-csv-v1"
        from lnbmssp.ingest import Snapshot
        s = Snapshot.from_policies(ps)
        buf = io.StringIO()
        write_snapshot(s, buf, fmt)
        assert parse_snapshot(buf.getvalue(), fmt).policies == ps


samples = st.lists(st.integers(0, 6), min_size=1, max_size=8)


class TestStats:
    @given(samples, samples)
    def test_mw_symmetric_and_bounded(self, a, b):
        r, s = mann_whitney_u(a, b), mann_whitney_u(b, a)
        assert r.u_statistic == s.u_statistic and r.p_two_sided == s.p_two_sided
        assert 0 <= r.u_statistic <= len(a) * len(b) / 2
        assert r.u_a == mw_pairs(a, b)
        assert 0 <= r.p_two_sided <= 1

    @given(samples, samples)
    def test_exact_p_matches_enumeration(self, a, b):
        assert mann_whitney_u(a, b).p_two_sided == _close(mw_brute(a, b)[1])

    @given(st.integers(1, 30), st.integers(1, 30), st.integers(-5, 5))
    def test_constant_samples(self, n, m, c):
        assert mann_whitney_u([c] * n, [c] * m).u_statistic == n * m / 2

    @settings(max_examples=300)
    @given(st.integers(5, 8), st.integers(5, 8), st.integers(0, 2**32))
    def test_exact_vs_normal_on_continuous_draws(self, n, m, seed):
        # continuous draws carry no ties; see the ledger for the tied case
        rng = random.Random(seed)
        a = [rng.gauss(0, 1) for _ in range(n)]
        b = [rng.gauss(rng.choice((0, 0.5, 1, 2)), 1) for _ in range(m)]
        assume(len(set(a + b)) == n + m)
        exact = mann_whitney_u(a, b, method="exact").p_two_sided
        approx = mann_whitney_u(a, b, method="normal-approx").p_two_sided
        assert abs(exact - approx) <= 0.05

    @given(st.lists(st.floats(-1e6, 1e6), min_size=1))
    def test_ecdf_shape(self, xs):
        pts = ecdf(xs)
        assert pts[-1] == (max(xs), 1.0)
        assert all(a[0] < b[0] and a[1] < b[1] for a, b in zip(pts, pts[1:]))

    @given(st.floats(-100, 100), st.floats(-100, 100),
           st.lists(st.integers(-1000, 1000), min_size=3, max_size=30, unique=True))
    def test_fit_recovers_lines(self, slope, intercept, xs):
        ys = [slope * x + intercept for x in xs]
        f = linear_fit(xs, ys)
        assert math.isclose(f.slope, slope, rel_tol=1e-9, abs_tol=1e-9)
        assert math.isclose(f.intercept, intercept, rel_tol=1e-9, abs_tol=1e-6)
        assert f.slope_ci95[0] <= f.slope <= f.slope_ci95[1]
        assert 0.0 <= f.r_squared <= 1.0


class _close(float):
    def __eq__(self, other):
        return abs(float(self) - other) < 1e-12
