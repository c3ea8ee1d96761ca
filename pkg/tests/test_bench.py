import itertools
import random

import pytest

from lnbmssp.bench import (
    BenchConfig,
    BenchRecord,
    ChecksumMismatch,
    draw_sources,
    read_records,
    read_sizes,
    run_benchmark,
    write_records,
    write_sizes,
)
from lnbmssp.dijkstra import DistResult
from lnbmssp.graph import random_sparse_digraph
import lnbmssp.bench as bench


def graphs():
    rng = random.Random(0)
    return [("g1", random_sparse_digraph(60, 3, rng)), ("g2", random_sparse_digraph(90, 3, rng))]


def test_three_trials_six_records():
    recs = run_benchmark(graphs()[:1], trials=3, seed=1)
    assert len(recs) == 6
    for a, b in zip(recs[::2], recs[1::2]):
        assert (a.algorithm, b.algorithm) == ("dijkstra", "bmssp")
        assert a.source_vertex == b.source_vertex and a.dist_checksum == b.dist_checksum
        assert a.trial_index == b.trial_index


def test_same_seed_same_sources():
    a = run_benchmark(graphs(), trials=5, seed=9)
    b = run_benchmark(graphs(), trials=5, seed=9)
    strip = lambda rs: [(r.snapshot_label, r.algorithm, r.trial_index, r.source_vertex, r.relaxations, r.dist_checksum) for r in rs]
    assert strip(a) == strip(b)
    assert draw_sources(100, 10, 1, "x") != draw_sources(100, 10, 2, "x")
    assert draw_sources(100, 10, 1, "x") != draw_sources(100, 10, 1, "y")


def test_runtime_positive_and_fake_clock():
    ticks = itertools.count(0, 7)
    recs = run_benchmark(graphs()[:1], config=BenchConfig(trials=2, warmup=0), clock=lambda: next(ticks))
    assert [r.runtime_ns for r in recs] == [7, 7, 7, 7]


def test_single_algorithm():
    recs = run_benchmark(graphs(), config=BenchConfig(trials=2, algorithms=("bmssp",)))
    assert {r.algorithm for r in recs} == {"bmssp"} and len(recs) == 4


@pytest.mark.parametrize("kw", [dict(trials=0), dict(algorithms=("astar",)), dict(algorithms=())])
def test_config_validation(kw):
    with pytest.raises(ValueError):
        BenchConfig(**kw)


def test_mismatch_aborts(monkeypatch):
    real = bench.make_solver

    def broken(name, g, cfg):
        solve = real(name, g, cfg)
        if name != "bmssp":
            return solve

        def wrong(s):
            r = solve(s)
            return DistResult([d + 1 for d in r.dist], r.pred, r.settled_count, r.relaxations)
        return wrong

    monkeypatch.setattr(bench, "make_solver", broken)
    with pytest.raises(ChecksumMismatch) as e:
        run_benchmark(graphs(), trials=2, seed=3)
    assert e.value.snapshot == "g1" and e.value.trial == 0


def test_records_round_trip(tmp_path):
    recs = run_benchmark(graphs(), trials=3, seed=5)
    path = tmp_path / "records.csv"
    write_records(recs, path)
    assert path.read_text().splitlines()[0] == "snapshot,algorithm,trial,source,runtime_ns,relaxations,checksum"
    assert read_records(path) == recs
    write_sizes({"a": (3, 4)}, tmp_path / "s.csv")
    assert read_sizes(tmp_path / "s.csv") == {"a": (3, 4)}


def test_read_records_rejects_other_csv(tmp_path):
    p = tmp_path / "x.csv"
    p.write_text("a,b\n1,2\n")
    with pytest.raises(ValueError):
        read_records(p)


def test_empty_graph_rejected():
    class Empty:
        vertex_count = 0

    with pytest.raises(ValueError):
        run_benchmark([("e", Empty())], trials=1)
