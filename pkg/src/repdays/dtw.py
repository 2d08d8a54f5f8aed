"""Time-normalized dynamic time warping for day profiles.

The distance between two series is the minimum over admissible warping paths
of the accumulated pointwise cost divided by the path length, with absolute
difference as the pointwise cost and the three unit moves (down, right,
diagonal) as steps.  Because the objective is average cost per step, a plain
cumulative-cost recursion is not enough: the dynamic program here is layered
by path length k (minimum total cost among paths of exactly k points ending
at each cell), and the final distance is the minimum over k of cost/k.

:func:`brute_force_dtw` realizes the same definition by literal path
enumeration and serves as the independent oracle for the dynamic program on
short series.

Multivariate distance between two 24 x m day matrices is the weighted sum of
the per-variable univariate distances (independent warping per variable).
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

import numba as nb
import numpy as np

from .data import Dataset, DayProfile
from .ingest import FormatError

# Path enumeration is exponential; longer series must use dtw_distance.
MAX_BRUTE_FORCE_LEN = 8


@dataclass(frozen=True)
class WarpingPath:
    """Monotone alignment between two series as 0-based index pairs.

    A valid path starts at (0, 0), ends at (len_a - 1, len_b - 1), and each
    consecutive pair differs by one of the unit moves (1,0), (0,1), (1,1).
    """

    steps: tuple[tuple[int, int], ...]

    @property
    def length(self) -> int:
        return len(self.steps)

    def validate(self, len_a: int, len_b: int) -> None:
        if not self.steps:
            raise ValueError("empty warping path")
        if self.steps[0] != (0, 0):
            raise ValueError("path must start at (0, 0)")
        if self.steps[-1] != (len_a - 1, len_b - 1):
            raise ValueError("path must end at the final index pair")
        for (i0, j0), (i1, j1) in zip(self.steps, self.steps[1:]):
            if (i1 - i0, j1 - j0) not in ((1, 0), (0, 1), (1, 1)):
                raise ValueError(f"illegal move ({i0},{j0}) -> ({i1},{j1})")


def iter_warping_paths(len_a: int, len_b: int) -> Iterator[WarpingPath]:
    """Yield every admissible warping path between series of the given lengths."""
    if len_a < 1 or len_b < 1:
        raise ValueError("series must be non-empty")
    end = (len_a - 1, len_b - 1)

    def walk(prefix: list[tuple[int, int]]) -> Iterator[WarpingPath]:
        i, j = prefix[-1]
        if (i, j) == end:
            yield WarpingPath(tuple(prefix))
            return
        for di, dj in ((1, 0), (0, 1), (1, 1)):
            ni, nj = i + di, j + dj
            if ni < len_a and nj < len_b:
                prefix.append((ni, nj))
                yield from walk(prefix)
                prefix.pop()

    yield from walk([(0, 0)])


def brute_force_dtw(a, b) -> float:
    """Time-normalized DTW by exhaustive path enumeration (oracle).

    Only usable for series up to MAX_BRUTE_FORCE_LEN points each.
    """
    a = _as_series(a)
    b = _as_series(b)
    if len(a) > MAX_BRUTE_FORCE_LEN or len(b) > MAX_BRUTE_FORCE_LEN:
        raise ValueError(
            f"series longer than {MAX_BRUTE_FORCE_LEN} points; use dtw_distance"
        )
    best = np.inf
    for path in iter_warping_paths(len(a), len(b)):
        cost = sum(abs(a[i] - b[j]) for i, j in path.steps)
        best = min(best, cost / path.length)
    return float(best)


def _as_series(x) -> np.ndarray:
    arr = np.ascontiguousarray(x, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"expected a 1-D series, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError("empty series")
    return arr


@nb.njit(cache=True)
def _dtw_series(a, b, window):  # pragma: no cover - exercised through wrappers
    n = a.shape[0]
    m = b.shape[0]
    cost = np.empty((n, m))
    for i in range(n):
        for j in range(m):
            if window >= 0 and abs(i - j) > window:
                cost[i, j] = np.inf
            else:
                cost[i, j] = abs(a[i] - b[j])
    if n == 1 and m == 1:
        return cost[0, 0]
    # prev holds, for the current path length k, the minimum total cost of a
    # k-point path ending at each cell (inf where no such path exists)
    prev = np.full((n, m), np.inf)
    prev[0, 0] = cost[0, 0]
    cur = np.full((n, m), np.inf)
    best = np.inf
    for k in range(2, n + m):
        for i in range(n):
            for j in range(m):
                if i == 0 and j == 0:
                    cur[i, j] = np.inf
                    continue
                p = np.inf
                if i > 0 and prev[i - 1, j] < p:
                    p = prev[i - 1, j]
                if j > 0 and prev[i, j - 1] < p:
                    p = prev[i, j - 1]
                if i > 0 and j > 0 and prev[i - 1, j - 1] < p:
                    p = prev[i - 1, j - 1]
                cur[i, j] = p + cost[i, j]
        end = cur[n - 1, m - 1]
        if end / k < best:
            best = end / k
        tmp = prev
        prev = cur
        cur = tmp
    return best


@nb.njit(cache=True)
def _dtw_profile_pair(A, B, weights, window):  # pragma: no cover
    # A, B are (m, 24): one contiguous row per variable
    total = 0.0
    for v in range(A.shape[0]):
        if weights[v] != 0.0:
            total += weights[v] * _dtw_series(A[v], B[v], window)
    return total


@nb.njit(cache=True, parallel=True)
def _pairwise_distances(tdata, weights, window):  # pragma: no cover
    n = tdata.shape[0]
    out = np.zeros((n, n))
    for i in nb.prange(n):
        for j in range(i + 1, n):
            d = _dtw_profile_pair(tdata[i], tdata[j], weights, window)
            out[i, j] = d
            out[j, i] = d
    return out


@nb.njit(cache=True, parallel=True)
def _distances_to_targets(tdata, ttargets, weights, window):  # pragma: no cover
    n = tdata.shape[0]
    k = ttargets.shape[0]
    out = np.empty((n, k))
    for i in nb.prange(n):
        for t in range(k):
            out[i, t] = _dtw_profile_pair(tdata[i], ttargets[t], weights, window)
    return out


def _by_variable(stacked: np.ndarray) -> np.ndarray:
    """(n, 24, m) day-major array -> contiguous (n, m, 24) variable-major."""
    return np.ascontiguousarray(stacked.transpose(0, 2, 1))


def dtw_distance(a, b, window: int | None = None) -> float:
    """Time-normalized DTW distance between two univariate series.

    ``window`` is an optional Sakoe-Chiba band half-width: cells with
    ``|i - j| > window`` are forbidden.  It must be at least the length
    difference of the two series, otherwise no admissible path exists.
    """
    a = _as_series(a)
    b = _as_series(b)
    if window is not None:
        if window < 0:
            raise ValueError("window must be nonnegative")
        if window < abs(len(a) - len(b)):
            raise ValueError(
                f"window {window} smaller than length difference "
                f"{abs(len(a) - len(b))}; no admissible path"
            )
    w = -1 if window is None else int(window)
    return float(_dtw_series(a, b, w))


def _profile_matrix(x) -> np.ndarray:
    if isinstance(x, DayProfile):
        return x.matrix
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 2:
        raise ValueError(f"expected a 24 x m matrix, got shape {arr.shape}")
    return arr


def resolve_weights(weights, m: int) -> np.ndarray:
    w = np.ones(m) if weights is None else np.asarray(weights, dtype=np.float64)
    if w.shape != (m,):
        raise ValueError(f"expected {m} weights, got shape {w.shape}")
    if (w < 0).any():
        raise ValueError("weights must be nonnegative")
    return w


def multivariate_dtw(a, b, weights=None, window: int | None = None) -> float:
    """Weighted sum of per-variable DTW distances between two day profiles.

    Accepts :class:`DayProfile` objects (variable names must match) or bare
    24 x m matrices.  Default weights are all one.
    """
    if isinstance(a, DayProfile) and isinstance(b, DayProfile):
        if a.variable_names != b.variable_names:
            raise ValueError(
                f"variable mismatch: {a.variable_names} vs {b.variable_names}"
            )
    A = _profile_matrix(a)
    B = _profile_matrix(b)
    if A.shape[1] != B.shape[1]:
        raise ValueError(f"profiles have {A.shape[1]} vs {B.shape[1]} variables")
    w = resolve_weights(weights, A.shape[1])
    total = 0.0
    for v in range(A.shape[1]):
        if w[v] != 0.0:
            total += w[v] * dtw_distance(A[:, v], B[:, v], window)
    return total


@dataclass
class DistanceMatrix:
    """Symmetric pairwise day-to-day distance matrix with its provenance."""

    values: np.ndarray
    dates: tuple[dt.date, ...] | None = None
    variable_names: tuple[str, ...] = ()
    weights: tuple[float, ...] = ()

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 2 or vals.shape[0] != vals.shape[1]:
            raise ValueError(f"distance matrix must be square, got {vals.shape}")
        if vals.shape[0] < 2:
            raise ValueError("distance matrix needs at least 2 days")
        if not np.array_equal(vals, vals.T):
            raise ValueError("distance matrix must be symmetric")
        if np.diagonal(vals).any():
            raise ValueError("distance matrix diagonal must be zero")
        if (vals < 0).any():
            raise ValueError("distances must be nonnegative")
        self.values = vals
        if self.dates is not None:
            self.dates = tuple(self.dates)
            if len(self.dates) != vals.shape[0]:
                raise ValueError("date list length does not match matrix size")

    @property
    def n(self) -> int:
        return self.values.shape[0]


def distance_matrix(
    ds: Dataset, weights=None, window: int | None = None
) -> DistanceMatrix:
    """All pairwise multivariate DTW distances for a normalized dataset.

    Each unordered pair is computed once and mirrored; pairs are independent,
    so they are evaluated in parallel.
    """
    if not ds.is_normalized:
        raise ValueError("distance_matrix expects a normalized dataset")
    if ds.n_days < 2:
        raise ValueError("need at least 2 days for a distance matrix")
    w = resolve_weights(weights, ds.n_variables)
    win = -1 if window is None else int(window)
    vals = _pairwise_distances(_by_variable(ds.stacked()), w, win)
    return DistanceMatrix(
        values=vals,
        dates=tuple(ds.dates),
        variable_names=ds.variable_names,
        weights=tuple(float(x) for x in w),
    )


def profile_distances_to(
    ds: Dataset, targets: np.ndarray, weights=None, window: int | None = None
) -> np.ndarray:
    """Multivariate DTW from every day to each target 24 x m matrix.

    Used for day-to-centroid distances; returns an (n_days, n_targets) array.
    """
    targets = np.asarray(targets, dtype=np.float64)
    if targets.ndim != 3 or targets.shape[1:] != ds.stacked().shape[1:]:
        raise ValueError(
            f"targets must be (k, 24, {ds.n_variables}), got {targets.shape}"
        )
    w = resolve_weights(weights, ds.n_variables)
    win = -1 if window is None else int(window)
    return _distances_to_targets(_by_variable(ds.stacked()), _by_variable(targets), w, win)


def save_distance_matrix(dm: DistanceMatrix, path: str | Path) -> None:
    """CSV layout: metadata records, then the strict lower triangle row-major."""
    lines = [f"n,{dm.n}"]
    lines.append("variables," + ",".join(dm.variable_names))
    lines.append("weights," + ",".join(repr(float(w)) for w in dm.weights))
    if dm.dates is not None:
        lines.append("dates," + ",".join(d.isoformat() for d in dm.dates))
    for i in range(1, dm.n):
        lines.append(",".join(repr(float(v)) for v in dm.values[i, :i]))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_distance_matrix(path: str | Path) -> DistanceMatrix:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    meta: dict[str, list[str]] = {}
    body_start = len(lines)
    for idx, line in enumerate(lines):
        key, _, rest = line.partition(",")
        if key in ("n", "variables", "weights", "dates"):
            meta[key] = rest.split(",") if rest else []
        else:
            body_start = idx
            break
    if "n" not in meta:
        raise FormatError("distance matrix file lacks an 'n' record")
    n = int(meta["n"][0])
    vals = np.zeros((n, n))
    tri = lines[body_start : body_start + n - 1]
    if len(tri) != n - 1:
        raise FormatError(f"expected {n - 1} triangle rows, found {len(tri)}")
    for i, line in enumerate(tri, start=1):
        cells = line.split(",")
        if len(cells) != i:
            raise FormatError(f"triangle row {i} has {len(cells)} cells, expected {i}")
        for j, cell in enumerate(cells):
            v = float(cell)
            vals[i, j] = v
            vals[j, i] = v
    dates = None
    if "dates" in meta:
        dates = tuple(dt.date.fromisoformat(s) for s in meta["dates"])
    return DistanceMatrix(
        values=vals,
        dates=dates,
        variable_names=tuple(meta.get("variables", [])),
        weights=tuple(float(x) for x in meta.get("weights", [])),
    )
