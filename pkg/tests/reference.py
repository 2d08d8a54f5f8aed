"""Independent from-definition oracles used to cross-check the package.

Everything here is deliberately naive: warping paths are enumerated
exhaustively, linkage distances are recomputed from the original distance
matrix at every merge step, and the validation indices follow their textbook
formulas term by term.  None of it shares code with src/repdays.
"""
from __future__ import annotations

import numpy as np


# ---------------------------------------------------------------------------
# exhaustive time-normalized DTW

_PATH_CACHE: dict[tuple[int, int], tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]] = {}


def enumerate_paths(n: int, m: int) -> list[list[tuple[int, int]]]:
    """All monotone index paths from (0, 0) to (n-1, m-1).

    Steps are (1, 0), (0, 1) and (1, 1).  Exponential in n + m; intended
    for series of length <= 8.
    """
    if n < 1 or m < 1:
        raise ValueError("series must be non-empty")
    paths: list[list[tuple[int, int]]] = []

    def extend(i: int, j: int, acc: list[tuple[int, int]]) -> None:
        if i == n - 1 and j == m - 1:
            paths.append(acc.copy())
            return
        if i + 1 < n:
            acc.append((i + 1, j))
            extend(i + 1, j, acc)
            acc.pop()
        if j + 1 < m:
            acc.append((i, j + 1))
            extend(i, j + 1, acc)
            acc.pop()
        if i + 1 < n and j + 1 < m:
            acc.append((i + 1, j + 1))
            extend(i + 1, j + 1, acc)
            acc.pop()

    extend(0, 0, [(0, 0)])
    return paths


def _path_arrays(n: int, m: int):
    # padded (P, L) index arrays so one pair costs a single vectorized pass
    key = (n, m)
    if key not in _PATH_CACHE:
        paths = enumerate_paths(n, m)
        lengths = np.array([len(p) for p in paths])
        L = int(lengths.max())
        ii = np.zeros((len(paths), L), dtype=np.int64)
        jj = np.zeros((len(paths), L), dtype=np.int64)
        mask = np.zeros((len(paths), L))
        for r, p in enumerate(paths):
            for c, (i, j) in enumerate(p):
                ii[r, c] = i
                jj[r, c] = j
                mask[r, c] = 1.0
        _PATH_CACHE[key] = (ii, jj, mask, lengths.astype(float))
    return _PATH_CACHE[key]


def brute_dtw(a, b) -> float:
    """min over enumerated paths of (sum of |a_i - b_j|) / path_length."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    ii, jj, mask, lengths = _path_arrays(len(a), len(b))
    costs = (np.abs(a[ii] - b[jj]) * mask).sum(axis=1) / lengths
    return float(costs.min())


def brute_dtw_slow(a, b) -> float:
    """Same as brute_dtw but via plain Python loops; belt and braces."""
    a = [float(x) for x in a]
    b = [float(x) for x in b]
    best = float("inf")
    for path in enumerate_paths(len(a), len(b)):
        cost = sum(abs(a[i] - b[j]) for i, j in path) / len(path)
        best = min(best, cost)
    return best


# ---------------------------------------------------------------------------
# naive agglomerative clustering

def naive_ahc(values: np.ndarray, linkage: str) -> list[tuple[int, int, float, int]]:
    """Merge sequence recomputed from the original matrix at every step.

    Cluster ids: singletons are 0..n-1, the merge at step s creates id n+s.
    At each step every active pair's linkage distance is recomputed directly
    over the cross-block of the original matrix (complete = max, average =
    mean).  Ties on distance resolve to the lexicographically smallest
    (smaller id, larger id) pair.  Returns (left, right, distance, new_id)
    tuples.
    """
    values = np.asarray(values, dtype=float)
    n = values.shape[0]
    if linkage == "complete":
        reducer = np.max
    elif linkage == "average":
        reducer = np.mean
    else:
        raise ValueError(f"unknown linkage: {linkage}")
    members: dict[int, np.ndarray] = {i: np.array([i]) for i in range(n)}
    merges = []
    for step in range(n - 1):
        ids = sorted(members)
        best = None
        for x in range(len(ids)):
            for y in range(x + 1, len(ids)):
                p, q = ids[x], ids[y]
                d = float(reducer(values[np.ix_(members[p], members[q])]))
                if best is None or d < best[0] or (d == best[0] and (p, q) < best[1:]):
                    best = (d, p, q)
        d, p, q = best
        new_id = n + step
        members[new_id] = np.concatenate([members.pop(p), members.pop(q)])
        merges.append((p, q, d, new_id))
    return merges


# ---------------------------------------------------------------------------
# textbook validation indices on flattened vectors

def naive_calinski_harabasz(X: np.ndarray, labels: np.ndarray) -> float:
    X = np.asarray(X, dtype=float)
    labels = np.asarray(labels)
    N = len(X)
    ks = np.unique(labels)
    K = len(ks)
    grand = X.mean(axis=0)
    between = 0.0
    within = 0.0
    for k in ks:
        members = X[labels == k]
        c = members.mean(axis=0)
        between += len(members) * float(((c - grand) ** 2).sum())
        within += float(((members - c) ** 2).sum())
    if within == 0.0:
        return float("inf")
    return (between / (K - 1)) / (within / (N - K))


def naive_davies_bouldin(X: np.ndarray, labels: np.ndarray) -> float:
    X = np.asarray(X, dtype=float)
    labels = np.asarray(labels)
    ks = np.unique(labels)
    centroids = {k: X[labels == k].mean(axis=0) for k in ks}
    scatter = {
        k: float(np.sqrt(((X[labels == k] - centroids[k]) ** 2).sum(axis=1)).mean())
        for k in ks
    }
    worst = []
    for i in ks:
        ratios = []
        for j in ks:
            if i == j:
                continue
            gap = float(np.sqrt(((centroids[i] - centroids[j]) ** 2).sum()))
            if gap == 0.0:
                ratios.append(float("inf"))
            else:
                ratios.append((scatter[i] + scatter[j]) / gap)
        worst.append(max(ratios))
    return float(np.mean(worst))


def naive_silhouette(X: np.ndarray, labels: np.ndarray) -> float:
    X = np.asarray(X, dtype=float)
    labels = np.asarray(labels)
    N = len(X)
    ks = np.unique(labels)
    dist = np.sqrt(((X[:, None, :] - X[None, :, :]) ** 2).sum(axis=2))
    scores = []
    for i in range(N):
        own = labels[i]
        own_others = np.flatnonzero((labels == own) & (np.arange(N) != i))
        if len(own_others) == 0:
            scores.append(0.0)
            continue
        a = float(dist[i, own_others].mean())
        b = min(
            float(dist[i, labels == k].mean()) for k in ks if k != own
        )
        top = max(a, b)
        scores.append(0.0 if top == 0.0 else (b - a) / top)
    return float(np.mean(scores))
