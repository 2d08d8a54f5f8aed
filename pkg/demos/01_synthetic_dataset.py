"""
Generating a seeded synthetic load/solar dataset
================================================

Two years of hourly demand and solar output with seasonal structure,
weekday/weekend rhythm, and a small number of labeled atypical days.
Everything is driven by one integer seed, so reruns are identical.
"""

from repdays import default_config, generate, write_csv, write_labels

# one seed, two years, load + solar (pass include_wind=True for a third variable)
cfg = default_config(seed=42, n_days=730)
result = generate(cfg)
ds = result.dataset

print(f"days: {ds.n_days}")
print(f"variables: {ds.variable_names}")
print(f"array shape (days, hours, variables): {ds.stacked().shape}")
print(f"date range: {ds.dates[0]} .. {ds.dates[-1]}")

# the generator labels the days where it injected an anomaly
print(f"\nlabeled atypical days: {len(result.labels)}")
for lab in result.labels:
    print(f"  {lab.date}  {lab.variable:5s}  {lab.kind}")

# a midsummer day at a glance: solar is dark at night, peaks near noon
midsummer = ds.days[172]
solar = midsummer.column("solar")
print(f"\n{midsummer.date} solar by hour:")
print("  " + " ".join(f"{v:.2f}" for v in solar))

# persist in the pipeline's file formats
write_csv(result, "demo_synthetic.csv")
write_labels(result, "demo_labels.json")
print("\nwrote demo_synthetic.csv and demo_labels.json")
