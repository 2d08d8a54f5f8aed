"""Tests for the synthetic load/solar/wind generator."""
from __future__ import annotations

import datetime as dt
import io

import numpy as np
import pytest

from repdays.ingest import build_days, parse_csv
from repdays.synth import (
    LOAD_OUTLIER_KINDS,
    SOLAR_OUTLIER_KINDS,
    SynthConfig,
    VariableSpec,
    WIND_OUTLIER_KINDS,
    default_config,
    generate,
    load_labels,
    write_csv,
    write_labels,
)


def test_default_config_shape():
    cfg = default_config(seed=1)
    assert cfg.seed == 1
    assert cfg.n_days == 730
    assert [v.name for v in cfg.variables] == ["load", "solar"]
    wind = default_config(seed=1, include_wind=True)
    assert [v.name for v in wind.variables] == ["load", "solar", "wind"]


def test_variable_spec_validation():
    with pytest.raises(ValueError):
        VariableSpec(name="x", kind="tidal")
    with pytest.raises(ValueError):
        VariableSpec(name="x", kind="load", base_level=-1.0)
    with pytest.raises(ValueError):
        VariableSpec(name="x", kind="load", outlier_probability=1.5)


def test_generate_shapes_and_dates():
    cfg = default_config(seed=3, n_days=40, start_date=dt.date(2022, 6, 1))
    result = generate(cfg)
    ds = result.dataset
    assert ds.n_days == 40
    assert ds.variable_names == ("load", "solar")
    assert ds.dates[0] == dt.date(2022, 6, 1)
    assert ds.dates[-1] == dt.date(2022, 6, 1) + dt.timedelta(days=39)
    assert ds.stacked().shape == (40, 24, 2)
    assert not ds.is_normalized


def test_generate_deterministic():
    a = generate(default_config(seed=11, n_days=30))
    b = generate(default_config(seed=11, n_days=30))
    assert np.array_equal(a.dataset.stacked(), b.dataset.stacked())
    assert a.labels == b.labels
    c = generate(default_config(seed=12, n_days=30))
    assert not np.array_equal(a.dataset.stacked(), c.dataset.stacked())


def test_solar_physics():
    result = generate(default_config(seed=5, n_days=365))
    stacked = result.dataset.stacked()
    solar = stacked[:, :, 1]
    assert solar.min() >= 0.0
    # night hours are dark everywhere, all year
    assert np.all(solar[:, :4] == 0.0)
    assert np.all(solar[:, 22:] == 0.0)
    # longer and stronger days in summer (day 172) than winter (day 355)
    assert solar[172].sum() > 1.5 * solar[355].sum()


def test_load_weekly_and_seasonal_structure():
    result = generate(default_config(seed=6, n_days=728))
    stacked = result.dataset.stacked()
    weekdays = np.array([d.weekday() for d in result.dataset.dates])
    daily = stacked[:, :, 0].mean(axis=1)
    weekend = daily[weekdays >= 5].mean()
    working = daily[weekdays < 5].mean()
    assert weekend < working  # weekend demand dip
    # morning and evening peaks above the overnight trough on average
    mean_profile = stacked[:, :, 0].mean(axis=0)
    assert mean_profile[18] > mean_profile[3]
    assert mean_profile[8] > mean_profile[3]


def test_outlier_labels_are_plausible():
    result = generate(default_config(seed=42, n_days=730))
    labels = result.labels
    # two independent ~1% per-day event streams over 730 days; a count far
    # outside +-3 sigma of Binomial(730, 0.02) would mean a broken generator
    assert 4 <= len(labels) <= 25
    for lab in labels:
        if lab.variable == "solar":
            assert lab.kind in SOLAR_OUTLIER_KINDS
        elif lab.variable == "load":
            assert lab.kind in LOAD_OUTLIER_KINDS
        else:
            assert lab.kind in WIND_OUTLIER_KINDS
    dates = result.dataset.dates
    assert all(lab.date in dates for lab in labels)


def test_wind_variable():
    result = generate(default_config(seed=9, n_days=120, include_wind=True))
    wind = result.dataset.stacked()[:, :, 2]
    assert wind.min() >= 0.0
    assert wind.std() > 0.0


def test_config_validation():
    with pytest.raises(ValueError):
        SynthConfig(seed=1, n_days=0, variables=default_config(seed=1).variables)
    with pytest.raises(ValueError):
        SynthConfig(seed=1, n_days=10, variables=())


def test_write_csv_roundtrips_through_ingest(tmp_path):
    result = generate(default_config(seed=21, n_days=10))
    path = tmp_path / "synthetic.csv"
    write_csv(result, path)
    parsed = parse_csv(path)
    assert parsed.variable_names == ("load", "solar")
    assert parsed.row_errors == []
    ds, excl = build_days(parsed.records, parsed.variable_names)
    assert excl == []
    # repr floats in the CSV keep the round trip bit-exact
    assert np.array_equal(ds.stacked(), result.dataset.stacked())


def test_labels_roundtrip(tmp_path):
    result = generate(default_config(seed=42, n_days=730))
    path = tmp_path / "labels.json"
    write_labels(result, path)
    assert load_labels(path) == result.labels
