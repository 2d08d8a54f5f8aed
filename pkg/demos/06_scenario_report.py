"""
Representative-day scenario reports
===================================

Each cluster becomes one scenario: a representative profile (centroid or
medoid), the member dates, and a monthly histogram showing which part of
the year it stands for.  Emitters render JSON, CSV, and a static SVG.
"""

from repdays import (
    ahc,
    build_report,
    cut,
    default_config,
    distance_matrix,
    generate,
    seasonal_coherence,
    write_report_files,
)
from repdays.ingest import normalize

ds = normalize(generate(default_config(seed=42, n_days=730)).dataset)
dm = distance_matrix(ds)
model = cut(ahc(dm, "average"), 8, ds)

report = build_report(model, ds)
print(f"method {report.method}, K={report.K}, {report.n_days} days")

months = "JFMAMJJASOND"
print("\ncluster  days  monthly histogram (" + months + ")")
for c in report.clusters:
    bars = " ".join(f"{n:3d}" for n in c.histogram)
    print(f"  {c.cluster_id:3d}   {c.member_count:4d}  {bars}")

# how seasonal is the partition? fraction of months dominated by one cluster
print(f"\nseasonal coherence: {seasonal_coherence(model, ds):.3f}")

# a medoid report uses an actual member day instead of the mean profile
medoid_report = build_report(model, ds, dm=dm, representative="medoid")
c1 = medoid_report.clusters[0]
print(f"cluster 1 medoid load profile (first 6 hours): {c1.representatives['load'][:6]}")

paths = write_report_files(report, "demo_report", ds)
print("\nwrote " + ", ".join(str(p) for p in paths))
print("open demo_report/report.svg in a browser for the small-multiples view")
