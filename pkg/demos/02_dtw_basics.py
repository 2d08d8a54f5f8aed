"""
Time-normalized dynamic time warping
====================================

DTW aligns two series by warping their time axes; the distance is the
best alignment's total cost divided by the alignment's length, so long
detours do not look artificially cheap.
"""

import numpy as np

from repdays import brute_force_dtw, dtw_distance, iter_warping_paths, multivariate_dtw

# a one-hour shift costs nothing: warping absorbs it
a = [0.0, 0.0, 1.0]
b = [0.0, 1.0, 1.0]
print(f"dtw({a}, {b}) = {dtw_distance(a, b)}")

# path-length normalization at work: the best alignment repeats the 0,
# spreading cost 2 over 3 steps
print(f"dtw([0, 2], [0, 0]) = {dtw_distance([0.0, 2.0], [0.0, 0.0])}  (= 2/3)")

# every admissible alignment between short series can be enumerated
paths = list(iter_warping_paths(2, 2))
print(f"\nall {len(paths)} warping paths between two 2-point series:")
for p in paths:
    print(f"  {p.steps}")

# the dynamic program agrees with exhaustive enumeration
rng = np.random.default_rng(0)
x, y = rng.random(6), rng.random(5)
print(f"\nfast DP:     {dtw_distance(x, y):.12f}")
print(f"brute force: {brute_force_dtw(x, y):.12f}")

# a Sakoe-Chiba band limits how far the alignment may stray from lockstep;
# tighter bands can only raise the distance
x, y = rng.random(24), rng.random(24)
print("\nband half-width -> distance")
for w in (None, 12, 6, 3, 1, 0):
    label = "none" if w is None else str(w)
    print(f"  {label:>4s} -> {dtw_distance(x, y, window=w):.4f}")

# day profiles compare variable by variable; weights set each variable's say
A, B = rng.random((24, 2)), rng.random((24, 2))
both = multivariate_dtw(A, B)
load_only = multivariate_dtw(A, B, weights=(1.0, 0.0))
print(f"\nmultivariate (equal weights): {both:.4f}")
print(f"multivariate (load only):     {load_only:.4f}")
