"""Day clustering: hierarchical merging on a distance matrix plus a K-Means baseline.

Agglomerative clustering runs on the precomputed DTW distance matrix with
complete or average linkage.  Merges use Lance-Williams updates (complete:
max of the two distances; average: size-weighted mean), which reproduce the
from-definition linkage values on the original matrix.  Ties are broken
deterministically: among pairs at the minimum distance, merge the pair whose
smaller cluster id is lowest, then whose larger id is lowest.  Cluster ids
follow the usual convention: singletons are 0..n-1, the merge at step s
creates cluster n+s.

K-Means is the Euclidean baseline on days flattened to 24*m vectors:
k-means++ seeding from the shared portable PRNG, Lloyd iterations to an
assignment fixpoint, several restarts keeping the lowest-inertia run.
"""

from __future__ import annotations

import datetime as dt
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .data import HOURS_PER_DAY, Dataset
from .dtw import DistanceMatrix
from .rng import SplitMix64

LINKAGES = ("complete", "average")
METHODS = ("kmeans", "ahc-complete", "ahc-average")

MAX_LLOYD_ITERATIONS = 300
DEFAULT_RESTARTS = 8


@dataclass(frozen=True)
class Merge:
    left: int
    right: int
    distance: float
    new_id: int

    def __post_init__(self):
        if self.left >= self.right:
            raise ValueError(f"merge ids must satisfy left < right, got {self.left}, {self.right}")


@dataclass(frozen=True)
class MergeHistory:
    """Full merge sequence of an agglomerative run on n days."""

    n: int
    linkage: str
    merges: tuple[Merge, ...]

    def __post_init__(self):
        if self.linkage not in LINKAGES:
            raise ValueError(f"unknown linkage {self.linkage!r}")
        if len(self.merges) != self.n - 1:
            raise ValueError(f"expected {self.n - 1} merges for {self.n} days, got {len(self.merges)}")


def ahc(dm: DistanceMatrix, linkage: str) -> MergeHistory:
    """Agglomerative clustering over all n-1 merges.

    Works on slots of the (copied) distance matrix: each active slot holds
    one current cluster; a merge writes the Lance-Williams update into the
    left slot and retires the right one.
    """
    if linkage not in LINKAGES:
        raise ValueError(f"unknown linkage {linkage!r}")
    n = dm.n
    D = dm.values.copy()
    np.fill_diagonal(D, np.inf)
    ids = np.arange(n)
    sizes = np.ones(n, dtype=np.int64)
    active = np.ones(n, dtype=bool)
    merges = []
    for step in range(n - 1):
        dmin = D.min()
        best = None
        for si, sj in np.argwhere(D == dmin):
            if si >= sj:
                continue
            pair = (min(ids[si], ids[sj]), max(ids[si], ids[sj]))
            if best is None or pair < best[0]:
                best = (pair, si, sj)
        (lo, hi), si, sj = best
        # keep the slot of the lower-id cluster so slot order never matters
        if ids[si] > ids[sj]:
            si, sj = sj, si
        new_id = n + step
        merges.append(Merge(left=lo, right=hi, distance=float(dmin), new_id=new_id))
        others = active.copy()
        others[si] = False
        others[sj] = False
        if linkage == "complete":
            updated = np.maximum(D[si, others], D[sj, others])
        else:
            wi, wj = sizes[si], sizes[sj]
            updated = (wi * D[si, others] + wj * D[sj, others]) / (wi + wj)
        D[si, others] = updated
        D[others, si] = updated
        D[sj, :] = np.inf
        D[:, sj] = np.inf
        active[sj] = False
        sizes[si] += sizes[sj]
        ids[si] = new_id
    return MergeHistory(n=n, linkage=linkage, merges=tuple(merges))


@dataclass
class ClusterModel:
    """A K-cluster partition of the dataset's days.

    Cluster ids run 1..K.  ``assignments`` maps day index (0-based, dataset
    order) to cluster id; ``memberships`` lists each cluster's day indices in
    ascending order; ``centroids`` holds per-cluster 24 x m element-wise mean
    matrices (may be empty when no dataset was supplied to fill them).
    """

    method: str
    K: int
    assignments: np.ndarray
    memberships: dict[int, tuple[int, ...]]
    centroids: dict[int, np.ndarray] = field(default_factory=dict)
    params: dict = field(default_factory=dict)
    inertia: float | None = None

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        self.assignments = np.asarray(self.assignments, dtype=np.int64)
        n = len(self.assignments)
        if self.K < 1 or self.K > n:
            raise ValueError(f"K={self.K} out of range for {n} days")
        if sorted(self.memberships) != list(range(1, self.K + 1)):
            raise ValueError("memberships must be keyed by cluster ids 1..K")
        seen = np.zeros(n, dtype=bool)
        for k, members in self.memberships.items():
            members = tuple(members)
            if not members:
                raise ValueError(f"cluster {k} is empty")
            if list(members) != sorted(members):
                raise ValueError(f"cluster {k} members must be sorted")
            for i in members:
                if not 0 <= i < n or seen[i]:
                    raise ValueError("memberships must partition the day indices")
                seen[i] = True
                if self.assignments[i] != k:
                    raise ValueError(f"assignment of day {i} disagrees with memberships")
            self.memberships[k] = members
        if not seen.all():
            raise ValueError("memberships must cover every day")
        if self.centroids and sorted(self.centroids) != sorted(self.memberships):
            raise ValueError("centroid keys must match membership keys")

    @property
    def n_days(self) -> int:
        return len(self.assignments)

    def cluster_sizes(self) -> dict[int, int]:
        return {k: len(members) for k, members in self.memberships.items()}


def _model_from_groups(
    groups: list[list[int]],
    n: int,
    method: str,
    ds: Dataset | None,
    params: dict,
    inertia: float | None = None,
) -> ClusterModel:
    groups = sorted((sorted(int(i) for i in g) for g in groups), key=lambda g: g[0])
    assignments = np.empty(n, dtype=np.int64)
    memberships = {}
    for k, members in enumerate(groups, start=1):
        memberships[k] = tuple(members)
        assignments[list(members)] = k
    centroids = {}
    if ds is not None:
        centroids = compute_centroids(ds, memberships)
    return ClusterModel(
        method=method,
        K=len(groups),
        assignments=assignments,
        memberships=memberships,
        centroids=centroids,
        params=dict(params),
        inertia=inertia,
    )


def cut(history: MergeHistory, K: int, ds: Dataset | None = None) -> ClusterModel:
    """Partition at K clusters by replaying all but the last K-1 merges.

    Clusters are relabeled 1..K in order of their first (lowest) member day
    index.  When a dataset is supplied its centroids are filled in.
    """
    n = history.n
    if not 1 <= K <= n:
        raise ValueError(f"K={K} out of range [1, {n}]")
    if ds is not None and ds.n_days != n:
        raise ValueError(f"dataset has {ds.n_days} days, history covers {n}")
    clusters: dict[int, list[int]] = {i: [i] for i in range(n)}
    for merge in history.merges[: n - K]:
        merged = clusters.pop(merge.left) + clusters.pop(merge.right)
        clusters[merge.new_id] = merged
    return _model_from_groups(
        list(clusters.values()),
        n,
        f"ahc-{history.linkage}",
        ds,
        params={"linkage": history.linkage},
    )


def compute_centroids(ds: Dataset, memberships: dict[int, tuple[int, ...]]) -> dict[int, np.ndarray]:
    """Element-wise (per hour, per variable) mean matrix of each cluster."""
    stacked = ds.stacked()
    centroids = {}
    for k, members in memberships.items():
        if len(members) == 0:
            raise ValueError(f"cluster {k} has no members")
        centroids[k] = stacked[list(members)].mean(axis=0)
    return centroids


def medoid(dm: DistanceMatrix, members) -> int:
    """The member minimizing total distance to the others; ties pick the lowest index."""
    members = sorted(members)
    if not members:
        raise ValueError("members must be non-empty")
    sums = dm.values[np.ix_(members, members)].sum(axis=1)
    return members[int(np.argmin(sums))]


def kmeans(
    ds: Dataset,
    K: int,
    seed: int,
    restarts: int = DEFAULT_RESTARTS,
) -> ClusterModel:
    """Euclidean K-Means on flattened day vectors with k-means++ seeding.

    Runs ``restarts`` sequential restarts off one seeded stream and keeps the
    lowest-inertia run (ties keep the earliest restart).  Lloyd iterations
    stop at an assignment fixpoint or after MAX_LLOYD_ITERATIONS; an empty
    cluster is repaired by moving in the point farthest from its centroid.
    """
    if not ds.is_normalized:
        raise ValueError("kmeans expects a normalized dataset")
    n = ds.n_days
    if not 2 <= K <= n:
        raise ValueError(f"K={K} out of range [2, {n}]")
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    X = ds.flattened()
    rng = SplitMix64(seed)
    best = None
    for r in range(restarts):
        assign = _lloyd(X, K, rng)
        centers = _assignment_means(X, assign, K)
        inertia = float(((X - centers[assign]) ** 2).sum())
        if best is None or inertia < best[0]:
            best = (inertia, assign)
    inertia, assign = best
    groups = [list(np.flatnonzero(assign == k)) for k in range(K)]
    return _model_from_groups(
        groups,
        n,
        "kmeans",
        ds,
        params={"seed": seed, "restarts": restarts},
        inertia=inertia,
    )


def _sq_distances(X: np.ndarray, centers: np.ndarray) -> np.ndarray:
    diff = X[:, None, :] - centers[None, :, :]
    return (diff * diff).sum(axis=2)


def _assignment_means(X: np.ndarray, assign: np.ndarray, K: int) -> np.ndarray:
    centers = np.empty((K, X.shape[1]))
    for k in range(K):
        centers[k] = X[assign == k].mean(axis=0)
    return centers


def _kmeanspp_seeds(X: np.ndarray, K: int, rng: SplitMix64) -> np.ndarray:
    n = X.shape[0]
    chosen = [rng.randint(n)]
    d2 = ((X - X[chosen[0]]) ** 2).sum(axis=1)
    for _ in range(1, K):
        total = float(d2.sum())
        if total > 0.0:
            idx = rng.choice_weighted(d2)
        else:
            # all remaining points coincide with a chosen center
            taken = set(chosen)
            idx = next(i for i in range(n) if i not in taken)
        chosen.append(idx)
        d2 = np.minimum(d2, ((X - X[idx]) ** 2).sum(axis=1))
    return X[chosen].copy()


def _lloyd(X: np.ndarray, K: int, rng: SplitMix64) -> np.ndarray:
    centers = _kmeanspp_seeds(X, K, rng)
    assign = np.argmin(_sq_distances(X, centers), axis=1)
    assign = _repair_empty(X, assign, K)
    for _ in range(MAX_LLOYD_ITERATIONS):
        centers = _assignment_means(X, assign, K)
        new_assign = np.argmin(_sq_distances(X, centers), axis=1)
        new_assign = _repair_empty(X, new_assign, K)
        if np.array_equal(new_assign, assign):
            return assign
        assign = new_assign
    return assign


def _repair_empty(X: np.ndarray, assign: np.ndarray, K: int) -> np.ndarray:
    counts = np.bincount(assign, minlength=K)
    if (counts > 0).all():
        return assign
    assign = assign.copy()
    for k in range(K):
        if counts[k] > 0:
            continue
        centers = _assignment_means_safe(X, assign, K)
        dist_own = ((X - centers[assign]) ** 2).sum(axis=1)
        # never steal the sole member of another cluster
        current = np.bincount(assign, minlength=K)
        movable = current[assign] > 1
        dist_own = np.where(movable, dist_own, -np.inf)
        far = int(np.argmax(dist_own))
        counts[assign[far]] -= 1
        assign[far] = k
        counts[k] = 1
    return assign


def _assignment_means_safe(X: np.ndarray, assign: np.ndarray, K: int) -> np.ndarray:
    centers = np.zeros((K, X.shape[1]))
    for k in range(K):
        members = assign == k
        if members.any():
            centers[k] = X[members].mean(axis=0)
    return centers


def save_model(model: ClusterModel, dates: tuple[dt.date, ...], path: str | Path) -> None:
    """JSON with method, params, K, date-keyed assignments, memberships, centroids."""
    if len(dates) != model.n_days:
        raise ValueError("date list length does not match model")
    payload = {
        "method": model.method,
        "K": model.K,
        "params": model.params,
        "inertia": model.inertia,
        "dates": [d.isoformat() for d in dates],
        "assignments": {d.isoformat(): int(k) for d, k in zip(dates, model.assignments)},
        "memberships": {str(k): list(m) for k, m in model.memberships.items()},
        "centroids": {str(k): c.tolist() for k, c in model.centroids.items()},
    }
    Path(path).write_text(
        json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n",
        encoding="utf-8",
    )


def load_model(path: str | Path) -> tuple[ClusterModel, tuple[dt.date, ...]]:
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    dates = tuple(dt.date.fromisoformat(s) for s in payload["dates"])
    assignments = np.array([payload["assignments"][d.isoformat()] for d in dates], dtype=np.int64)
    memberships = {int(k): tuple(m) for k, m in payload["memberships"].items()}
    centroids = {}
    for k, c in payload["centroids"].items():
        arr = np.asarray(c, dtype=float)
        if arr.shape[0] != HOURS_PER_DAY:
            raise ValueError(f"centroid {k} must have {HOURS_PER_DAY} rows")
        centroids[int(k)] = arr
    model = ClusterModel(
        method=payload["method"],
        K=int(payload["K"]),
        assignments=assignments,
        memberships=memberships,
        centroids=centroids,
        params=payload.get("params", {}),
        inertia=payload.get("inertia"),
    )
    return model, dates
