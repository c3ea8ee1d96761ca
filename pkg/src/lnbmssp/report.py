"""CSV and SVG report for a benchmark run."""

from __future__ import annotations

import csv
import logging
from pathlib import Path
from typing import Sequence

from . import svg
from .bench import BenchRecord, write_records
from .stats import DegenerateX, LinearFit, MWResult, ecdf, linear_fit, mann_whitney_u, summarize

log = logging.getLogger(__name__)

SUMMARY_HEADER = ("snapshot", "algorithm", "count", "mean_ns", "sd_ns")
MW_HEADER = ("u", "z", "p", "method")
FIT_HEADER = ("algorithm", "slope", "intercept", "slope_ci_low", "slope_ci_high", "r_squared", "points")


def _writer(path: Path):
    fh = open(path, "w", newline="")
    return fh, csv.writer(fh, lineterminator="\n")


def _ordered(values) -> list:
    return list(dict.fromkeys(values))


def compare_algorithms(records: Sequence[BenchRecord], a: str = "dijkstra", b: str = "bmssp") -> MWResult | None:
    xa = [r.runtime_ns for r in records if r.algorithm == a]
    xb = [r.runtime_ns for r in records if r.algorithm == b]
    if not xa or not xb:
        return None
    return mann_whitney_u(xa, xb)


def fit_runtime_vs_nodes(
    records: Sequence[BenchRecord], sizes: dict[str, tuple[int, int]]
) -> dict[str, LinearFit]:
    """Per-algorithm OLS of runtime on node count, over every individual run."""
    fits = {}
    for alg in _ordered(r.algorithm for r in records):
        pts = [(sizes[r.snapshot_label][0], r.runtime_ns) for r in records
               if r.algorithm == alg and r.snapshot_label in sizes]
        try:
            fits[alg] = linear_fit([p[0] for p in pts], [p[1] for p in pts])
        except DegenerateX as exc:
            log.info("no fit for %s: %s", alg, exc)
    return fits


def emit_report(
    records: Sequence[BenchRecord],
    out_dir: str | Path,
    sizes: dict[str, tuple[int, int]] | None = None,
) -> dict[str, Path]:
    """Write CSV tables and SVG charts for ``records``; returns name -> path.

    The runtime-vs-size fit needs node counts per snapshot (``sizes``); without
    at least two distinct sizes, fit.csv holds only its header and the scaling
    chart shows the raw points.
    """
    if not records:
        raise ValueError("no records to report")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {name: out / name for name in (
        "records.csv", "summary.csv", "mw_test.csv", "mw_by_snapshot.csv", "fit.csv",
        "bars.svg", "ecdf.svg", "scaling.svg",
    )}

    write_records(records, paths["records.csv"])

    summary = summarize(records)
    fh, w = _writer(paths["summary.csv"])
    with fh:
        w.writerow(SUMMARY_HEADER)
        for (snap, alg), g in summary.items():
            w.writerow([snap, alg, g.count, repr(g.mean), repr(g.stddev)])

    # pooled over every snapshot, plus one test per snapshot
    fh, w = _writer(paths["mw_test.csv"])
    with fh:
        w.writerow(MW_HEADER)
        mw = compare_algorithms(records)
        if mw is not None:
            w.writerow([repr(mw.u_statistic), repr(mw.z_value), repr(mw.p_two_sided), mw.method])
    snapshots = _ordered(r.snapshot_label for r in records)
    fh, w = _writer(paths["mw_by_snapshot.csv"])
    with fh:
        w.writerow(("snapshot",) + MW_HEADER)
        for snap in snapshots:
            res = compare_algorithms([r for r in records if r.snapshot_label == snap])
            if res is not None:
                w.writerow([snap, repr(res.u_statistic), repr(res.z_value), repr(res.p_two_sided), res.method])

    fits = fit_runtime_vs_nodes(records, sizes or {})
    fh, w = _writer(paths["fit.csv"])
    with fh:
        w.writerow(FIT_HEADER)
        for alg, f in fits.items():
            w.writerow([alg, repr(f.slope), repr(f.intercept), repr(f.slope_ci95[0]),
                        repr(f.slope_ci95[1]), repr(f.r_squared), f.n])

    algorithms = _ordered(r.algorithm for r in records)
    means = {k: g.mean / 1e6 for k, g in summary.items()}
    sds = {k: g.stddev / 1e6 for k, g in summary.items()}
    paths["bars.svg"].write_text(svg.bar_chart(
        snapshots, algorithms, means, sds, title="Mean runtime per snapshot", ylabel="runtime (ms)",
    ))

    curves = {alg: [(v / 1e6, f) for v, f in ecdf([r.runtime_ns for r in records if r.algorithm == alg])]
              for alg in algorithms}
    paths["ecdf.svg"].write_text(svg.ecdf_chart(curves, title="Runtime ECDF, all runs", xlabel="runtime (ms)"))

    if sizes:
        pts = {alg: [(sizes[r.snapshot_label][0], r.runtime_ns / 1e6) for r in records
                     if r.algorithm == alg and r.snapshot_label in sizes] for alg in algorithms}
    else:
        pts = {}
    pts = {k: v for k, v in pts.items() if v}
    if pts:
        ms_fits = {alg: _rescale(f, 1e-6) for alg, f in fits.items()}
        body = svg.scatter_fit_chart(pts, ms_fits, title="Runtime vs node count",
                                     xlabel="nodes", ylabel="runtime (ms)")
    else:
        body = svg.scatter_fit_chart({"(no sizes)": [(0.0, 0.0)]}, {}, title="Runtime vs node count",
                                     xlabel="nodes", ylabel="runtime (ms)")
    paths["scaling.svg"].write_text(body)
    return paths


def _rescale(f: LinearFit, c: float) -> LinearFit:
    """The same fit with y multiplied by ``c``."""
    return LinearFit(f.slope * c, f.intercept * c, (f.slope_ci95[0] * c, f.slope_ci95[1] * c),
                     f.r_squared, f.n, f.residual_se * c, f.x_mean, f.sxx)


def read_summary(path: str | Path) -> list[dict]:
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))
