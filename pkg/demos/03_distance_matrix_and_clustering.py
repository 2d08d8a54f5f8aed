"""
From day profiles to clusters
=============================

Normalize the dataset, compute the pairwise DTW distance matrix once,
then cluster it: agglomerative merging (complete or average linkage)
against the Euclidean K-Means baseline.
"""

from repdays import ahc, cut, default_config, distance_matrix, generate, kmeans
from repdays.ingest import normalize

result = generate(default_config(seed=42, n_days=365))
ds = normalize(result.dataset)  # DTW expects comparable [0, 1] scales

dm = distance_matrix(ds)
print(f"distance matrix: {dm.n} x {dm.n}")
print(f"mean off-diagonal distance: {dm.values.sum() / (dm.n * (dm.n - 1)):.4f}")

# the full merge history is computed once; cutting it at any K is cheap
history = ahc(dm, "average")
print("\nlast five merges (most dissimilar fusions):")
for merge in history.merges[-5:]:
    print(f"  {merge.left:4d} + {merge.right:4d} -> {merge.new_id}  at {merge.distance:.4f}")

K = 10
model_ahc = cut(history, K, ds)
model_km = kmeans(ds, K, seed=42)

sizes_ahc = sorted(model_ahc.cluster_sizes().values())
sizes_km = sorted(model_km.cluster_sizes().values())
print(f"\ncluster sizes at K={K}")
print(f"  ahc-average: {sizes_ahc}")
print(f"  kmeans:      {sizes_km}")
print(f"  kmeans inertia: {model_km.inertia:.3f}")

# average linkage leaves the injected atypical days in tiny clusters;
# K-Means spreads them into the big ones
tiny = {k for k, s in model_ahc.cluster_sizes().items() if s <= 3}
date_to_idx = {d: i for i, d in enumerate(ds.dates)}
print(f"\natypical days vs ahc-average clusters of size <= 3:")
for lab in result.labels:
    k = int(model_ahc.assignments[date_to_idx[lab.date]])
    marker = "isolated" if k in tiny else f"in cluster {k}"
    print(f"  {lab.date}  {lab.variable:5s} {lab.kind:17s} {marker}")
