"""Tests for scenario reports: histograms, coherence, JSON/CSV/SVG emitters."""
from __future__ import annotations

import datetime as dt
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from repdays import (
    ClusterSection,
    Dataset,
    DayProfile,
    ScenarioReport,
    build_report,
    emit_csv,
    emit_json,
    emit_svg,
    kmeans,
    monthly_histogram,
    report_from_json,
    seasonal_coherence,
    write_report_files,
)
from repdays import clustering
from repdays.clustering import ClusterModel
from repdays.ingest import denormalize


def _dataset(start, n, names=("load",)):
    rng = np.random.default_rng(0)
    days = [
        DayProfile(
            start + dt.timedelta(days=i),
            rng.random((24, len(names))),
            names,
        )
        for i in range(n)
    ]
    return Dataset(
        days=days,
        variable_names=names,
        normalization={name: (0.0, 1.0) for name in names},
    )


def _model(memberships, ds, method="kmeans"):
    n = sum(len(m) for m in memberships.values())
    assignments = np.empty(n, dtype=np.int64)
    for k, members in memberships.items():
        assignments[list(members)] = k
    return ClusterModel(
        method=method,
        K=len(memberships),
        assignments=assignments,
        memberships={k: tuple(m) for k, m in memberships.items()},
        centroids=clustering.compute_centroids(ds, memberships),
        params={},
    )


# ---------------------------------------------------------------------------
# monthly histograms and coherence

def test_monthly_histogram_counts():
    # 60 days starting Jan 1: 31 in January, 28 in February, 1 in March
    ds = _dataset(dt.date(2023, 1, 1), 60)
    model = _model({1: tuple(range(31)), 2: tuple(range(31, 60))}, ds)
    hist = monthly_histogram(model, ds)
    assert hist[1] == (31, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0)
    assert hist[2] == (0, 28, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0)


def test_monthly_histogram_pools_years():
    ds = _dataset(dt.date(2022, 1, 1), 365 + 31)
    model = _model({1: tuple(range(ds.n_days))}, ds)
    hist = monthly_histogram(model, ds)
    assert hist[1][0] == 62  # both Januaries pooled into bin 1


def test_seasonal_coherence_exact_fraction():
    # January split 16/15 across clusters: 16*3 = 48 < 62 = 31*2, not coherent;
    # February fully in cluster 2: coherent.  One of two months passes.
    ds = _dataset(dt.date(2023, 1, 1), 59)
    model = _model({1: tuple(range(16)), 2: tuple(range(16, 59))}, ds)
    assert seasonal_coherence(model, ds) == 0.5


def test_seasonal_coherence_boundary_is_strict():
    # exactly 2/3 must not count: 20 of 30 days in the top cluster
    ds = _dataset(dt.date(2023, 4, 1), 30)
    model = _model({1: tuple(range(20)), 2: tuple(range(20, 30))}, ds)
    assert seasonal_coherence(model, ds) == 0.0
    # one more day tips it
    model2 = _model({1: tuple(range(21)), 2: tuple(range(21, 30))}, ds)
    assert seasonal_coherence(model2, ds) == 1.0


# ---------------------------------------------------------------------------
# report construction

def test_build_report_centroid(small_ds):
    model = kmeans(small_ds, 4, seed=1)
    report = build_report(model, small_ds)
    assert report.method == "kmeans"
    assert report.K == 4
    assert report.n_days == small_ds.n_days
    assert report.representative == "centroid"
    assert [c.cluster_id for c in report.clusters] == [1, 2, 3, 4]
    assert sum(c.member_count for c in report.clusters) == small_ds.n_days
    for c in report.clusters:
        assert sum(c.histogram) == c.member_count
        assert set(c.representatives) == set(small_ds.variable_names)
        # 6-significant-digit resolution survives a JSON round trip exactly
        for prof in c.representatives.values():
            assert all(float(f"{x:.6g}") == x for x in prof)


def test_build_report_medoid(small_ds, small_dm):
    model = kmeans(small_ds, 4, seed=1)
    report = build_report(model, small_ds, dm=small_dm, representative="medoid")
    assert report.representative == "medoid"
    # each medoid profile is an actual member day's profile (to 6 digits)
    date_by_index = {d: i for i, d in enumerate(small_ds.dates)}
    for c in report.clusters:
        member_rows = [small_ds.days[date_by_index[d]].matrix for d in c.member_dates]
        prof = np.array([c.representatives[name] for name in report.variable_names]).T
        assert any(np.allclose(prof, m, atol=1e-5) for m in member_rows)
    with pytest.raises(ValueError):
        build_report(model, small_ds, representative="medoid")  # needs distances


def test_build_report_denormalized(small_ds):
    model = kmeans(small_ds, 3, seed=2)
    raw = denormalize(small_ds)
    report = build_report(model, small_ds, denormalize=True)
    centroid_raw = np.array(report.clusters[0].representatives["load"])
    members = model.memberships[1]
    expected = np.mean([raw.days[i].matrix[:, 0] for i in members], axis=0)
    assert centroid_raw == pytest.approx(expected, rel=1e-4)
    with pytest.raises(ValueError):
        build_report(model, raw, denormalize=True)  # nothing to invert


def test_report_type_invariants():
    good = ClusterSection(
        cluster_id=1,
        member_count=2,
        member_dates=(dt.date(2023, 1, 1), dt.date(2023, 2, 1)),
        representatives={"load": tuple([0.5] * 24)},
        histogram=(1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    )
    with pytest.raises(ValueError):
        ClusterSection(
            cluster_id=1,
            member_count=2,
            member_dates=(dt.date(2023, 1, 1), dt.date(2023, 2, 1)),
            representatives={"load": tuple([0.5] * 24)},
            histogram=(1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),  # mass 1 != 2
        )
    with pytest.raises(ValueError):
        ScenarioReport(
            method="kmeans",
            K=1,
            n_days=3,  # does not match member counts
            variable_names=("load",),
            representative="centroid",
            clusters=(good,),
        )
    with pytest.raises(ValueError):
        ScenarioReport(
            method="kmeans",
            K=1,
            n_days=2,
            variable_names=("load",),
            representative="mean",  # unknown kind
            clusters=(good,),
        )


# ---------------------------------------------------------------------------
# emitters

def test_json_roundtrip(small_ds):
    model = kmeans(small_ds, 5, seed=3)
    report = build_report(model, small_ds)
    text = emit_json(report)
    back = report_from_json(text)
    assert back == report
    assert emit_json(back) == text  # byte-stable re-emission


def test_csv_layout(small_ds):
    model = kmeans(small_ds, 3, seed=4)
    report = build_report(model, small_ds)
    lines = emit_csv(report).splitlines()
    assert lines[0] == "record,cluster,key,subkey,value"
    assert "meta,,K,,3" in lines
    date_rows = [l for l in lines if l.startswith("date,")]
    assert len(date_rows) == small_ds.n_days
    hist_rows = [l for l in lines if l.startswith("histogram,")]
    assert len(hist_rows) == 3 * 12
    profile_rows = [l for l in lines if l.startswith("profile,")]
    assert len(profile_rows) == 3 * len(small_ds.variable_names) * 24


def test_svg_structure(small_ds):
    model = kmeans(small_ds, 4, seed=5)
    report = build_report(model, small_ds)
    svg = emit_svg(report, small_ds)
    assert svg.startswith('<?xml version="1.0"')
    root = ET.fromstring(svg)  # well-formed XML
    ns = {"svg": "http://www.w3.org/2000/svg"}
    hist_panels = [
        g for g in root.iter("{http://www.w3.org/2000/svg}g")
        if g.get("class") == "histogram"
    ]
    assert len(hist_panels) == report.K
    profile_panels = [
        g for g in root.iter("{http://www.w3.org/2000/svg}g")
        if g.get("class") == "profile"
    ]
    assert len(profile_panels) == report.K * len(report.variable_names)
    # member traces drawn under each representative when the dataset is given
    first = profile_panels[0]
    polylines = first.findall("svg:polyline", ns)
    expected = report.clusters[0].member_count + 1
    assert len(polylines) == expected
    # without the dataset only the representative trace remains
    bare = ET.fromstring(emit_svg(report))
    bare_first = [
        g for g in bare.iter("{http://www.w3.org/2000/svg}g")
        if g.get("class") == "profile"
    ][0]
    assert len(bare_first.findall("svg:polyline", ns)) == 1


def test_svg_histogram_bars_scale_to_counts(small_ds):
    model = kmeans(small_ds, 3, seed=6)
    report = build_report(model, small_ds)
    root = ET.fromstring(emit_svg(report))
    hist_panels = {
        g.get("id"): g for g in root.iter("{http://www.w3.org/2000/svg}g")
        if g.get("class") == "histogram"
    }
    hist_max = max(max(c.histogram) for c in report.clusters)
    for c in report.clusters:
        panel = hist_panels[f"histogram-{c.cluster_id}"]
        bars = panel.findall("{http://www.w3.org/2000/svg}rect")[1:]  # first is the frame
        assert len(bars) == 12
        heights = [float(b.get("height")) for b in bars]
        for count, h in zip(c.histogram, heights):
            assert h == pytest.approx(130.0 * count / hist_max, abs=1e-3)


def test_emit_svg_checks_variables(small_ds):
    model = kmeans(small_ds, 3, seed=7)
    report = build_report(model, small_ds)
    other = _dataset(dt.date(2023, 1, 1), 4, names=("wind",))
    with pytest.raises(ValueError):
        emit_svg(report, other)


def test_write_report_files(small_ds, tmp_path):
    model = kmeans(small_ds, 3, seed=8)
    report = build_report(model, small_ds)
    paths = write_report_files(report, tmp_path / "out", small_ds)
    assert [p.name for p in paths] == ["report.json", "report.csv", "report.svg"]
    for p in paths:
        assert p.exists() and p.stat().st_size > 0
    again = write_report_files(report, tmp_path / "out2", small_ds)
    for a, b in zip(paths, again):
        assert a.read_bytes() == b.read_bytes()  # deterministic emission
