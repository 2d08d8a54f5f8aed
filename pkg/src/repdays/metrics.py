"""Cluster validation metrics and the K-sweep harness.

Two families on purpose.  The warping-aware scores work on DTW distances
between each day and the cluster centroids: MA (day to own centroid), MC
(day to nearest foreign centroid), SS (mean of MC - MA, larger is better
separation, may be negative), CS (worst MA anywhere, smaller is better
cohesion).  The traditional indices (Calinski-Harabasz, Davies-Bouldin,
Silhouette) stay Euclidean on days flattened to 24*m vectors; they are
deliberately not DTW-substituted so the two families can be contrasted.

The sweep harness evaluates every requested method over a contiguous K
range, reusing one merge history per hierarchical method and fitting
K-Means fresh per K with a fixed seed.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import clustering
from .clustering import DEFAULT_RESTARTS, METHODS, ClusterModel
from .data import Dataset
from .dtw import DistanceMatrix, profile_distances_to


def _centroid_stack(model: ClusterModel) -> np.ndarray:
    if not model.centroids:
        raise ValueError("model has no centroids; fit it against a dataset")
    return np.stack([model.centroids[k] for k in range(1, model.K + 1)])


def day_centroid_distances(
    ds: Dataset, model: ClusterModel, weights=None, window: int | None = None
) -> np.ndarray:
    """Multivariate DTW from every day to every cluster centroid, (N, K)."""
    if model.n_days != ds.n_days:
        raise ValueError(f"model covers {model.n_days} days, dataset has {ds.n_days}")
    return profile_distances_to(ds, _centroid_stack(model), weights=weights, window=window)


def ma_scores(ds: Dataset, model: ClusterModel, weights=None, window: int | None = None) -> np.ndarray:
    """DTW distance from each day to its own cluster's centroid."""
    D = day_centroid_distances(ds, model, weights, window)
    return _ma_from(D, model)


def _ma_from(D: np.ndarray, model: ClusterModel) -> np.ndarray:
    return D[np.arange(model.n_days), model.assignments - 1]


def mc_scores(ds: Dataset, model: ClusterModel, weights=None, window: int | None = None) -> np.ndarray:
    """DTW distance from each day to the nearest foreign cluster centroid."""
    D = day_centroid_distances(ds, model, weights, window)
    return _mc_from(D, model)


def _mc_from(D: np.ndarray, model: ClusterModel) -> np.ndarray:
    if model.K < 2:
        raise ValueError("MC undefined for a single cluster")
    masked = D.copy()
    masked[np.arange(model.n_days), model.assignments - 1] = np.inf
    return masked.min(axis=1)


def separation_score(ma, mc) -> float:
    """Mean of MC - MA over all days; negative when days sit nearer foreign centroids."""
    ma = np.asarray(ma, dtype=float)
    mc = np.asarray(mc, dtype=float)
    if ma.size == 0:
        raise ValueError("empty score lists")
    if ma.shape != mc.shape:
        raise ValueError(f"MA and MC lengths differ: {ma.shape} vs {mc.shape}")
    return float(np.mean(mc - ma))


def cohesion_score(ma, model: ClusterModel) -> float:
    """Worst day-to-own-centroid distance across all clusters."""
    ma = np.asarray(ma, dtype=float)
    if ma.size != model.n_days:
        raise ValueError(f"got {ma.size} MA scores for {model.n_days} days")
    return float(max(max(ma[list(members)]) for members in model.memberships.values()))


def _flat_centroids(X: np.ndarray, model: ClusterModel) -> np.ndarray:
    return np.stack([X[list(model.memberships[k])].mean(axis=0) for k in range(1, model.K + 1)])


def calinski_harabasz(ds: Dataset, model: ClusterModel) -> float:
    """Between/within variance ratio on flattened vectors; zero within-scatter gives inf."""
    n, K = ds.n_days, model.K
    if not 2 <= K <= n - 1:
        raise ValueError(f"K={K} out of range [2, {n - 1}]")
    X = ds.flattened()
    centers = _flat_centroids(X, model)
    grand = X.mean(axis=0)
    sizes = np.array([len(model.memberships[k]) for k in range(1, K + 1)])
    between = float((sizes * ((centers - grand) ** 2).sum(axis=1)).sum())
    within = float(((X - centers[model.assignments - 1]) ** 2).sum())
    if within == 0.0:
        return math.inf
    return (between / (K - 1)) / (within / (n - K))


def davies_bouldin(ds: Dataset, model: ClusterModel) -> float:
    n, K = ds.n_days, model.K
    if not 2 <= K <= n:
        raise ValueError(f"K={K} out of range [2, {n}]")
    X = ds.flattened()
    centers = _flat_centroids(X, model)
    scatter = np.array(
        [
            float(np.linalg.norm(X[list(model.memberships[k])] - centers[k - 1], axis=1).mean())
            for k in range(1, K + 1)
        ]
    )
    worst = np.empty(K)
    for i in range(K):
        ratios = []
        for j in range(K):
            if j == i:
                continue
            gap = float(np.linalg.norm(centers[i] - centers[j]))
            ratios.append(math.inf if gap == 0.0 else (scatter[i] + scatter[j]) / gap)
        worst[i] = max(ratios)
    return float(worst.mean())


def silhouette(ds: Dataset, model: ClusterModel) -> float:
    """Mean silhouette on flattened vectors; members of singleton clusters score 0."""
    n, K = ds.n_days, model.K
    if not 2 <= K <= n - 1:
        raise ValueError(f"K={K} out of range [2, {n - 1}]")
    X = ds.flattened()
    diff = X[:, None, :] - X[None, :, :]
    dist = np.sqrt((diff * diff).sum(axis=2))
    sizes = model.cluster_sizes()
    scores = np.zeros(n)
    member_lists = {k: list(m) for k, m in model.memberships.items()}
    for i in range(n):
        own = model.assignments[i]
        if sizes[own] == 1:
            continue
        a = dist[i, member_lists[own]].sum() / (sizes[own] - 1)
        b = min(
            dist[i, member_lists[k]].mean() for k in range(1, K + 1) if k != own
        )
        top = max(a, b)
        if top > 0.0:
            scores[i] = (b - a) / top
    return float(scores.mean())


@dataclass(frozen=True)
class ValidationReport:
    """All validation metrics of one fitted model on one dataset."""

    method: str
    K: int
    ma: tuple[float, ...]
    mc: tuple[float, ...]
    ss: float
    cs: float
    ch: float
    db: float
    silhouette: float

    def __post_init__(self):
        if len(self.ma) != len(self.mc):
            raise ValueError("MA and MC lengths differ")
        if any(x < 0 for x in self.ma):
            raise ValueError("MA scores must be nonnegative")
        if self.cs != max(self.ma):
            raise ValueError("CS must equal the maximum MA score")
        if not -1.0 - 1e-9 <= self.silhouette <= 1.0 + 1e-9:
            raise ValueError("silhouette out of [-1, 1]")
        if self.db < 0 or self.ch < 0:
            raise ValueError("DB and CH must be nonnegative")


def evaluate(
    ds: Dataset, model: ClusterModel, weights=None, window: int | None = None
) -> ValidationReport:
    """Compute every metric once, sharing the day-to-centroid distance table."""
    D = day_centroid_distances(ds, model, weights, window)
    ma = _ma_from(D, model)
    mc = _mc_from(D, model)
    return ValidationReport(
        method=model.method,
        K=model.K,
        ma=tuple(float(x) for x in ma),
        mc=tuple(float(x) for x in mc),
        ss=separation_score(ma, mc),
        cs=cohesion_score(ma, model),
        ch=calinski_harabasz(ds, model),
        db=davies_bouldin(ds, model),
        silhouette=silhouette(ds, model),
    )


@dataclass(frozen=True)
class SweepRow:
    method: str
    K: int
    ss: float
    cs: float
    ch: float
    db: float
    silhouette: float
    error: str | None = None


@dataclass(frozen=True)
class MetricSweep:
    rows: tuple[SweepRow, ...]
    methods: tuple[str, ...]
    k_range: tuple[int, int]


def sweep(
    ds: Dataset,
    dm: DistanceMatrix,
    methods,
    k_range: tuple[int, int],
    seed: int = 0,
    restarts: int = DEFAULT_RESTARTS,
    weights=None,
    window: int | None = None,
) -> MetricSweep:
    """One row of metrics per (method, K) over a contiguous K range.

    Hierarchical methods build their merge history once and cut it at each
    K; K-Means fits fresh per K with the same fixed seed.  A failing fit
    flags its row and the sweep continues.
    """
    methods = tuple(methods)
    if not methods:
        raise ValueError("no methods requested")
    for m in methods:
        if m not in METHODS:
            raise ValueError(f"unknown method {m!r}")
    if len(set(methods)) != len(methods):
        raise ValueError("duplicate methods")
    lo, hi = int(k_range[0]), int(k_range[1])
    if lo > hi:
        raise ValueError(f"empty K range {lo}..{hi}")
    if lo < 2 or hi > ds.n_days - 1:
        raise ValueError(f"K range {lo}..{hi} outside [2, {ds.n_days - 1}]")
    rows = []
    for method in methods:
        history = None
        history_error = None
        if method.startswith("ahc-"):
            try:
                history = clustering.ahc(dm, method.removeprefix("ahc-"))
            except Exception as exc:  # noqa: BLE001 - flagged per row below
                history_error = f"{type(exc).__name__}: {exc}"
        for K in range(lo, hi + 1):
            try:
                if method == "kmeans":
                    model = clustering.kmeans(ds, K, seed=seed, restarts=restarts)
                else:
                    if history is None:
                        raise RuntimeError(history_error or "merge history unavailable")
                    model = clustering.cut(history, K, ds)
                rep = evaluate(ds, model, weights=weights, window=window)
                rows.append(
                    SweepRow(
                        method=method,
                        K=K,
                        ss=rep.ss,
                        cs=rep.cs,
                        ch=rep.ch,
                        db=rep.db,
                        silhouette=rep.silhouette,
                    )
                )
            except Exception as exc:  # noqa: BLE001 - sweep must keep going
                nan = float("nan")
                rows.append(
                    SweepRow(
                        method=method,
                        K=K,
                        ss=nan,
                        cs=nan,
                        ch=nan,
                        db=nan,
                        silhouette=nan,
                        error=f"{type(exc).__name__}: {exc}",
                    )
                )
    return MetricSweep(rows=tuple(rows), methods=methods, k_range=(lo, hi))


_SWEEP_HEADER = "method,K,SS,CS,CH,DB,silhouette,error"


def sweep_to_csv(ms: MetricSweep, path: str | Path) -> None:
    lines = [_SWEEP_HEADER]
    for r in ms.rows:
        cells = [r.method, str(r.K)] + [
            repr(float(v)) for v in (r.ss, r.cs, r.ch, r.db, r.silhouette)
        ]
        cells.append("" if r.error is None else r.error.replace(",", ";"))
        lines.append(",".join(cells))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_sweep_csv(path: str | Path) -> MetricSweep:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or lines[0] != _SWEEP_HEADER:
        raise ValueError(f"unrecognized sweep CSV header in {path}")
    rows = []
    for line in lines[1:]:
        cells = line.split(",")
        rows.append(
            SweepRow(
                method=cells[0],
                K=int(cells[1]),
                ss=float(cells[2]),
                cs=float(cells[3]),
                ch=float(cells[4]),
                db=float(cells[5]),
                silhouette=float(cells[6]),
                error=cells[7] if cells[7] else None,
            )
        )
    methods = tuple(dict.fromkeys(r.method for r in rows))
    ks = [r.K for r in rows]
    return MetricSweep(rows=tuple(rows), methods=methods, k_range=(min(ks), max(ks)))


def sweep_to_json(ms: MetricSweep, path: str | Path) -> None:
    payload = {
        "methods": list(ms.methods),
        "k_range": list(ms.k_range),
        "rows": [
            {
                "method": r.method,
                "K": r.K,
                "SS": r.ss,
                "CS": r.cs,
                "CH": r.ch,
                "DB": r.db,
                "silhouette": r.silhouette,
                "error": r.error,
            }
            for r in ms.rows
        ],
    }
    Path(path).write_text(
        json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n",
        encoding="utf-8",
    )


def report_to_json(rep: ValidationReport, path: str | Path) -> None:
    payload = {
        "method": rep.method,
        "K": rep.K,
        "MA": list(rep.ma),
        "MC": list(rep.mc),
        "SS": rep.ss,
        "CS": rep.cs,
        "CH": rep.ch,
        "DB": rep.db,
        "silhouette": rep.silhouette,
    }
    Path(path).write_text(
        json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n",
        encoding="utf-8",
    )
