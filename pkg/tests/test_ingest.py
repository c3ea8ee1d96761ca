import io
import json
import warnings

import pytest

from lnbmssp.ingest import (
    FIELDS,
    ChannelPolicy,
    DuplicatePolicy,
    EmptySnapshot,
    MalformedRow,
    Snapshot,
    avg_degree_from_counts,
    degree_entropy,
    latest_policies,
    load_snapshot,
    parse_scid,
    parse_snapshot,
    to_weighted_graph,
    topology_stats,
    write_snapshot,
)
from lnbmssp.synth import REFERENCE_SNAPSHOTS, synthesize_snapshot
from lnbmssp.weights import WeightParams

A = "02" + "aa" * 32
B = "03" + "bb" * 32
C = "02" + "cc" * 32
HEADER = ",".join(FIELDS)


def row(scid, src, dst, ts=1, base=1000, rate=1, cltv=40, hmin=1, hmax=10**12, cap=10**6, disabled=0):
    return f"{scid},{src},{dst},{ts},{base},{rate},{cltv},{hmin},{hmax},{cap},{disabled}"


def csv_text(*rows):
    return "\n".join((HEADER,) + rows) + "\n"


def test_single_row():
    s = parse_snapshot(csv_text(row(1, A, B)).encode())
    assert (s.node_count, s.channel_count, len(s.policies)) == (2, 1, 1)
    assert s.nodes == [A, B]


def test_unparseable_integer_reports_line():
    with pytest.raises(MalformedRow) as e:
        parse_snapshot(csv_text(row(1, A, B), row(2, A, C, rate="abc")))
    assert e.value.line == 3


def test_wrong_column_count():
    with pytest.raises(MalformedRow) as e:
        parse_snapshot(csv_text(row(1, A, B) + ",9"))
    assert e.value.line == 2


@pytest.mark.parametrize("text", ["", HEADER + "\n"])
def test_empty(text):
    with pytest.raises(EmptySnapshot):
        parse_snapshot(text)


def test_bad_header():
    with pytest.raises(MalformedRow):
        parse_snapshot("a,b,c\n1,2,3\n")


def test_both_directions_one_channel():
    s = parse_snapshot(csv_text(row(7, A, B), row(7, B, A)))
    assert (s.channel_count, len(s.policies)) == (1, 2)
    assert {p.direction for p in s.policies} == {0, 1}


def test_duplicate_policy_warns_last_wins():
    with pytest.warns(DuplicatePolicy):
        s = parse_snapshot(csv_text(row(7, A, B, base=1), row(7, A, B, base=2)))
    assert len(s.policies) == 1 and s.policies[0].base_fee_msat == 2


def test_block_tx_output_scid():
    assert parse_scid("550000x12x1") == (550000 << 40) | (12 << 16) | 1
    s = parse_snapshot(csv_text(row("550000x12x1", A, B)))
    assert s.policies[0].short_channel_id == parse_scid("550000x12x1")


def test_bad_node_key():
    with pytest.raises(MalformedRow):
        parse_snapshot(csv_text(row(1, "02abc", B)))


def test_disabled_kept_but_flagged():
    s = parse_snapshot(csv_text(row(1, A, B, disabled=1)))
    assert s.policies[0].disabled


def test_jsonl_matches_csv():
    rows = [row(1, A, B), row(1, B, A, hmax=""), row(2, B, C, disabled=1)]
    from_csv = parse_snapshot(csv_text(*rows))
    buf = io.StringIO()
    write_snapshot(from_csv, buf, "jsonl-v1")
    lines = buf.getvalue().splitlines()
    assert json.loads(lines[1])["htlc_max_msat"] is None
    from_json = parse_snapshot(buf.getvalue(), "jsonl-v1")
    assert from_json.policies == from_csv.policies
    assert from_json.nodes == from_csv.nodes


def test_invalid_json_line():
    with pytest.raises(MalformedRow) as e:
        parse_snapshot('{"short_channel_id": 1}\n{oops\n', "jsonl-v1")
    assert e.value.line == 1  # first record already lacks fields


def test_parse_is_deterministic():
    s = synthesize_snapshot(60, 120, seed=3)
    buf = io.StringIO()
    write_snapshot(s, buf)
    data = buf.getvalue().encode()
    a, b = parse_snapshot(data), parse_snapshot(data)
    assert a.policies == b.policies and a.node_index == b.node_index


def test_load_snapshot_uses_stem(tmp_path):
    p = tmp_path / "2019-06-17.csv"
    p.write_text(csv_text(row(1, A, B)))
    assert load_snapshot(p).date_label == "2019-06-17"


def test_triangle_stats():
    s = parse_snapshot(csv_text(row(1, A, B), row(2, B, C), row(3, C, A)))
    st = topology_stats(s)
    assert (st.avg_degree, st.degree_stddev, st.degree_entropy_norm) == (2.0, 0.0, 0.0)


def test_star_stats_by_hand():
    # hub with three leaves: degrees [3, 1, 1, 1]
    D = "03" + "dd" * 32
    s = parse_snapshot(csv_text(row(1, A, B), row(2, A, C), row(3, A, D), row(3, D, A)))
    st = topology_stats(s)
    assert st.avg_degree == 1.5
    assert st.degree_stddev == pytest.approx(0.75 ** 0.5)
    # p = {3: 1/4, 1: 3/4}; H = 0.811278 bits; / log2(4)
    assert st.degree_entropy_norm == pytest.approx(0.8112781244591328 / 2)
    assert st.as_row("x") == ["x", "4", "3", "1.50", "0.87", "0.41"]


def test_entropy_bounds():
    assert degree_entropy([5]) == 0.0
    assert degree_entropy([1, 2, 3, 4]) == pytest.approx(1.0)


@pytest.mark.parametrize("ref", REFERENCE_SNAPSHOTS, ids=lambda r: r.date)
def test_reference_average_degree(ref):
    assert avg_degree_from_counts(ref.nodes, ref.channels) == pytest.approx(ref.avg_degree, abs=0.01)


def test_synthetic_snapshot_exact_counts():
    s = synthesize_snapshot(300, 1000, seed=9)
    st = topology_stats(s)
    assert (st.node_count, st.channel_count) == (300, 1000)
    assert st.avg_degree == pytest.approx(2 * 1000 / 300)


def test_weighted_graph_one_edge_per_policy():
    s = parse_snapshot(csv_text(row(1, A, B), row(1, B, A)))
    g = to_weighted_graph(s, 1000)
    assert g.m == 2


def test_weighted_graph_filters():
    s = parse_snapshot(csv_text(row(1, A, B, disabled=1), row(1, B, A, hmax=500), row(2, B, C)))
    g = to_weighted_graph(s, 1000)
    assert g.m == 1
    (dst, w, eid), = [e for v in range(g.n) for e in g.out_edges(v)]
    assert dst == s.node_index[C]


def test_weighted_graph_weight_formula():
    s = parse_snapshot(csv_text(row(1, A, B, base=1000, rate=100, cltv=40)))
    g = to_weighted_graph(s, 100_000_000, WeightParams(perturb_epsilon=0))
    assert g.weights == (11060.0,)


def test_latest_policy_per_direction():
    s = parse_snapshot(csv_text(row(1, A, B, ts=5, base=1), row(1, A, B, ts=9, base=2), row(1, A, B, ts=7, base=3)))
    (p,) = latest_policies(s)
    assert p.base_fee_msat == 2


def test_edge_count_bound():
    s = synthesize_snapshot(200, 600, seed=4, disabled_rate=0.1)
    g = to_weighted_graph(s, 1_000_000)
    assert g.m <= 2 * s.channel_count
    clean = synthesize_snapshot(200, 600, seed=4, disabled_rate=0.0)
    assert to_weighted_graph(clean, 1000).m == 2 * clean.channel_count
