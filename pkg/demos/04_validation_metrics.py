"""
Judging a partition
===================

Warping-aware scores measure how well each day sits with its own cluster
centroid (MA) versus the nearest foreign one (MC); the classical
Euclidean indices give a second opinion on the flattened vectors.
"""

import numpy as np

from repdays import (
    ahc,
    cut,
    default_config,
    distance_matrix,
    evaluate,
    generate,
    kmeans,
)
from repdays.ingest import normalize

ds = normalize(generate(default_config(seed=7, n_days=365)).dataset)
dm = distance_matrix(ds)

K = 8
models = {
    "ahc-average": cut(ahc(dm, "average"), K, ds),
    "ahc-complete": cut(ahc(dm, "complete"), K, ds),
    "kmeans": kmeans(ds, K, seed=7),
}

print(f"{'method':14s} {'SS':>8s} {'CS':>8s} {'CH':>9s} {'DB':>7s} {'sil':>7s}")
for name, model in models.items():
    rep = evaluate(ds, model)
    print(
        f"{name:14s} {rep.ss:8.4f} {rep.cs:8.4f} {rep.ch:9.1f} "
        f"{rep.db:7.3f} {rep.silhouette:7.3f}"
    )

# the per-day scores behind SS and CS
rep = evaluate(ds, models["ahc-average"])
ma = np.array(rep.ma)
mc = np.array(rep.mc)
print(f"\nahc-average per-day scores (K={K}):")
print(f"  MA  mean {ma.mean():.4f}, worst {ma.max():.4f} (the worst IS the CS)")
print(f"  MC  mean {mc.mean():.4f}, min {mc.min():.4f}")
print(f"  days closer to a foreign centroid than their own: {(mc < ma).sum()}")

# separation = mean(MC - MA): how much nearer days are to home than abroad
print(f"  SS = mean(MC - MA) = {(mc - ma).mean():.4f}")
