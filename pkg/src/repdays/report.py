"""Scenario reports: representative profiles, monthly histograms, emitters.

A report describes one fitted partition: per cluster, the representative
profile of each variable (centroid by default, medoid on request), the
member dates, and a 12-bin histogram of member days by calendar month
(months pooled across years).  Emitters render the same content as JSON,
CSV, and a static self-contained SVG grid: one row per cluster, one panel
per variable overlaying member traces under the heavy representative
trace, plus one histogram panel.

All floats are rounded to 6 significant digits when the report is built,
so emitting, parsing, and re-emitting is byte-stable.
"""

from __future__ import annotations

import datetime as dt
import json
from dataclasses import dataclass
from pathlib import Path
from xml.sax.saxutils import escape

from .clustering import ClusterModel, compute_centroids, medoid
from .data import HOURS_PER_DAY, Dataset
from .dtw import DistanceMatrix

MONTHS_PER_YEAR = 12

REPRESENTATIVES = ("centroid", "medoid")


def _f6(x: float) -> float:
    """Round to 6 significant digits (the report's float resolution)."""
    return float(f"{float(x):.6g}")


@dataclass(frozen=True)
class ClusterSection:
    cluster_id: int
    member_count: int
    member_dates: tuple[dt.date, ...]
    representatives: dict[str, tuple[float, ...]]
    histogram: tuple[int, ...]

    def __post_init__(self):
        if self.member_count != len(self.member_dates):
            raise ValueError("member_count disagrees with member_dates")
        if self.member_count < 1:
            raise ValueError("cluster section needs at least one member")
        if len(self.histogram) != MONTHS_PER_YEAR:
            raise ValueError(f"histogram must have {MONTHS_PER_YEAR} bins")
        if sum(self.histogram) != self.member_count:
            raise ValueError("histogram mass must equal member count")
        for name, profile in self.representatives.items():
            if len(profile) != HOURS_PER_DAY:
                raise ValueError(f"representative {name!r} must have {HOURS_PER_DAY} values")


@dataclass(frozen=True)
class ScenarioReport:
    method: str
    K: int
    n_days: int
    variable_names: tuple[str, ...]
    representative: str
    clusters: tuple[ClusterSection, ...]

    def __post_init__(self):
        if self.representative not in REPRESENTATIVES:
            raise ValueError(f"unknown representative {self.representative!r}")
        if len(self.clusters) != self.K:
            raise ValueError(f"expected {self.K} cluster sections, got {len(self.clusters)}")
        if [c.cluster_id for c in self.clusters] != list(range(1, self.K + 1)):
            raise ValueError("cluster sections must be ordered by id 1..K")
        if sum(c.member_count for c in self.clusters) != self.n_days:
            raise ValueError("member counts must sum to the day count")
        for c in self.clusters:
            if set(c.representatives) != set(self.variable_names):
                raise ValueError(f"cluster {c.cluster_id} representatives do not match variables")


def monthly_histogram(model: ClusterModel, ds: Dataset) -> dict[int, tuple[int, ...]]:
    """Per-cluster 12-bin counts of member days by calendar month (pooled across years)."""
    if model.n_days != ds.n_days:
        raise ValueError(f"model covers {model.n_days} days, dataset has {ds.n_days}")
    dates = ds.dates
    out = {}
    for k, members in model.memberships.items():
        bins = [0] * MONTHS_PER_YEAR
        for i in members:
            bins[dates[i].month - 1] += 1
        out[k] = tuple(bins)
    return out


def seasonal_coherence(model: ClusterModel, ds: Dataset) -> float:
    """Fraction of months whose best cluster holds more than 2/3 of their days.

    Months are pooled across years; months with no days are left out of the
    denominator.  The 2/3 comparison is done in exact integer arithmetic.
    """
    if model.n_days != ds.n_days:
        raise ValueError(f"model covers {model.n_days} days, dataset has {ds.n_days}")
    per_month: dict[int, dict[int, int]] = {}
    for i, date in enumerate(ds.dates):
        month = date.month
        k = int(model.assignments[i])
        per_month.setdefault(month, {})
        per_month[month][k] = per_month[month].get(k, 0) + 1
    coherent = 0
    for counts in per_month.values():
        total = sum(counts.values())
        top = max(counts.values())
        if top * 3 > total * 2:
            coherent += 1
    return coherent / len(per_month)


def build_report(
    model: ClusterModel,
    ds: Dataset,
    dm: DistanceMatrix | None = None,
    representative: str = "centroid",
    denormalize: bool = False,
) -> ScenarioReport:
    if representative not in REPRESENTATIVES:
        raise ValueError(f"unknown representative {representative!r}")
    if representative == "medoid" and dm is None:
        raise ValueError("medoid representative needs a distance matrix")
    if denormalize and not ds.is_normalized:
        raise ValueError("cannot denormalize an unnormalized dataset")
    hist = monthly_histogram(model, ds)
    centroids = model.centroids or compute_centroids(ds, model.memberships)
    dates = ds.dates
    sections = []
    for k in range(1, model.K + 1):
        members = model.memberships[k]
        if representative == "centroid":
            matrix = centroids[k]
        else:
            matrix = ds.days[medoid(dm, list(members))].matrix
        reps = {}
        for v, name in enumerate(ds.variable_names):
            column = matrix[:, v]
            if denormalize:
                lo, hi = ds.normalization[name]
                column = column * (hi - lo) + lo
            reps[name] = tuple(_f6(x) for x in column)
        sections.append(
            ClusterSection(
                cluster_id=k,
                member_count=len(members),
                member_dates=tuple(dates[i] for i in members),
                representatives=reps,
                histogram=hist[k],
            )
        )
    report = ScenarioReport(
        method=model.method,
        K=model.K,
        n_days=ds.n_days,
        variable_names=ds.variable_names,
        representative=representative,
        clusters=tuple(sections),
    )
    _check_month_totals(report, ds)
    return report


def _check_month_totals(report: ScenarioReport, ds: Dataset) -> None:
    expected = [0] * MONTHS_PER_YEAR
    for date in ds.dates:
        expected[date.month - 1] += 1
    got = [sum(c.histogram[b] for c in report.clusters) for b in range(MONTHS_PER_YEAR)]
    if got != expected:
        raise ValueError(f"histogram month totals {got} do not match calendar {expected}")


def emit_json(report: ScenarioReport) -> str:
    payload = {
        "method": report.method,
        "K": report.K,
        "n_days": report.n_days,
        "variable_names": list(report.variable_names),
        "representative": report.representative,
        "clusters": [
            {
                "cluster_id": c.cluster_id,
                "member_count": c.member_count,
                "member_dates": [d.isoformat() for d in c.member_dates],
                "representatives": {k: list(v) for k, v in c.representatives.items()},
                "histogram": list(c.histogram),
            }
            for c in report.clusters
        ],
    }
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def report_from_json(text: str) -> ScenarioReport:
    payload = json.loads(text)
    clusters = tuple(
        ClusterSection(
            cluster_id=c["cluster_id"],
            member_count=c["member_count"],
            member_dates=tuple(dt.date.fromisoformat(s) for s in c["member_dates"]),
            representatives={k: tuple(float(x) for x in v) for k, v in c["representatives"].items()},
            histogram=tuple(c["histogram"]),
        )
        for c in payload["clusters"]
    )
    return ScenarioReport(
        method=payload["method"],
        K=payload["K"],
        n_days=payload["n_days"],
        variable_names=tuple(payload["variable_names"]),
        representative=payload["representative"],
        clusters=clusters,
    )


def emit_csv(report: ScenarioReport) -> str:
    """Long-format CSV: meta rows, then per-cluster member, date, histogram, profile rows."""
    lines = ["record,cluster,key,subkey,value"]
    lines.append(f"meta,,method,,{report.method}")
    lines.append(f"meta,,K,,{report.K}")
    lines.append(f"meta,,n_days,,{report.n_days}")
    lines.append(f"meta,,representative,,{report.representative}")
    for c in report.clusters:
        lines.append(f"members,{c.cluster_id},,,{c.member_count}")
        for d in c.member_dates:
            lines.append(f"date,{c.cluster_id},{d.isoformat()},,")
        for b, count in enumerate(c.histogram, start=1):
            lines.append(f"histogram,{c.cluster_id},{b},,{count}")
        for name in report.variable_names:
            for h, value in enumerate(c.representatives[name]):
                lines.append(f"profile,{c.cluster_id},{name},{h},{repr(value)}")
    return "\n".join(lines) + "\n"


_PANEL_W = 240.0
_PANEL_H = 130.0
_PAD = 18.0
_HEADER_H = 22.0

_STYLE_PANEL = "fill:none;stroke:#cccccc;stroke-width:1"
_STYLE_MEMBER = "fill:none;stroke:#9ecae1;stroke-width:0.6;stroke-opacity:0.55"
_STYLE_REP = "fill:none;stroke:#000000;stroke-width:1.8"
_STYLE_BAR = "fill:#888888"
_STYLE_TITLE = "font-family:sans-serif;font-size:12px;fill:#222222"
_STYLE_LABEL = "font-family:sans-serif;font-size:10px;fill:#555555"


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def _polyline(values, x0: float, y0: float, vmin: float, vmax: float, style: str) -> str:
    span = vmax - vmin if vmax > vmin else 1.0
    points = []
    for h, v in enumerate(values):
        x = x0 + _PANEL_W * h / (HOURS_PER_DAY - 1)
        y = y0 + _PANEL_H * (1.0 - (float(v) - vmin) / span)
        points.append(f"{_fmt(x)},{_fmt(y)}")
    return f'<polyline style="{style}" points="{" ".join(points)}"/>'


def emit_svg(report: ScenarioReport, ds: Dataset | None = None) -> str:
    """Self-contained SVG grid: K rows of variable panels plus one histogram panel each.

    When the dataset is given, member-day traces are drawn under each
    representative; without it only representatives and histograms appear.
    """
    if ds is not None:
        if ds.variable_names != report.variable_names:
            raise ValueError("dataset variables do not match the report")
        day_index = {day.date: i for i, day in enumerate(ds.days)}
    n_vars = len(report.variable_names)
    cols = n_vars + 1
    row_h = _HEADER_H + _PANEL_H + _PAD
    width = _PAD + cols * (_PANEL_W + _PAD)
    height = _PAD + report.K * row_h

    # one value range per variable so panels are comparable across clusters
    ranges = {}
    for v, name in enumerate(report.variable_names):
        values = [x for c in report.clusters for x in c.representatives[name]]
        if ds is not None:
            values.extend(float(x) for day in ds.days for x in day.matrix[:, v])
        vmin, vmax = min(values), max(values)
        margin = 0.05 * (vmax - vmin if vmax > vmin else 1.0)
        ranges[name] = (vmin - margin, vmax + margin)
    hist_max = max(max(c.histogram) for c in report.clusters) or 1

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" '
        f'height="{_fmt(height)}" viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
    ]
    for row, c in enumerate(report.clusters):
        top = _PAD + row * row_h
        title = f"cluster {c.cluster_id} ({c.member_count} days)"
        parts.append(
            f'<text x="{_fmt(_PAD)}" y="{_fmt(top + 14)}" style="{_STYLE_TITLE}">{escape(title)}</text>'
        )
        panel_top = top + _HEADER_H
        for v, name in enumerate(report.variable_names):
            x0 = _PAD + v * (_PANEL_W + _PAD)
            vmin, vmax = ranges[name]
            parts.append(f'<g class="profile" id="profile-{c.cluster_id}-{escape(name)}">')
            parts.append(
                f'<rect x="{_fmt(x0)}" y="{_fmt(panel_top)}" width="{_fmt(_PANEL_W)}" '
                f'height="{_fmt(_PANEL_H)}" style="{_STYLE_PANEL}"/>'
            )
            if ds is not None:
                for d in c.member_dates:
                    matrix = ds.days[day_index[d]].matrix
                    parts.append(
                        _polyline(matrix[:, v], x0, panel_top, vmin, vmax, _STYLE_MEMBER)
                    )
            parts.append(
                _polyline(c.representatives[name], x0, panel_top, vmin, vmax, _STYLE_REP)
            )
            parts.append(
                f'<text x="{_fmt(x0 + 4)}" y="{_fmt(panel_top + _PANEL_H - 5)}" '
                f'style="{_STYLE_LABEL}">{escape(name)}</text>'
            )
            parts.append("</g>")
        x0 = _PAD + n_vars * (_PANEL_W + _PAD)
        parts.append(f'<g class="histogram" id="histogram-{c.cluster_id}">')
        parts.append(
            f'<rect x="{_fmt(x0)}" y="{_fmt(panel_top)}" width="{_fmt(_PANEL_W)}" '
            f'height="{_fmt(_PANEL_H)}" style="{_STYLE_PANEL}"/>'
        )
        bar_w = _PANEL_W / MONTHS_PER_YEAR
        for b, count in enumerate(c.histogram):
            bar_h = _PANEL_H * count / hist_max
            parts.append(
                f'<rect x="{_fmt(x0 + b * bar_w + 1)}" y="{_fmt(panel_top + _PANEL_H - bar_h)}" '
                f'width="{_fmt(bar_w - 2)}" height="{_fmt(bar_h)}" style="{_STYLE_BAR}"/>'
            )
        parts.append(
            f'<text x="{_fmt(x0 + 4)}" y="{_fmt(panel_top + _PANEL_H - 5)}" '
            f'style="{_STYLE_LABEL}">months 1-12</text>'
        )
        parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_report_files(report: ScenarioReport, out_dir: str | Path, ds: Dataset | None = None) -> list[Path]:
    """Write report.json, report.csv, and report.svg into a directory."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    targets = [
        (out / "report.json", emit_json(report)),
        (out / "report.csv", emit_csv(report)),
        (out / "report.svg", emit_svg(report, ds)),
    ]
    for path, text in targets:
        path.write_text(text, encoding="utf-8")
    return [p for p, _ in targets]
