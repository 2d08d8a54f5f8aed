"""Seeded synthetic multi-year load/solar(/wind) datasets.

Profiles are plausible rather than physical: load combines an annual
sinusoid, a double-peak diurnal shape, a weekend factor, and multiplicative
noise; solar is a seasonal daylight envelope scaled by per-day clearness and
hourly ripple; wind is a bounded random walk with a mild annual cycle.

A small fraction of days carry injected anomalies (deep or partial solar
dropouts, load spikes and sags).  These days are labeled in the result's
metadata, and the labels are written to a sidecar file rather than into the
dataset itself, so clustering never sees them but tests can check which
algorithms isolate them.

All randomness comes from one SplitMix64 stream seeded by the config, with a
fixed draw order (days outer, variables inner), so a fixed seed reproduces
the dataset bit for bit on any platform.
"""

from __future__ import annotations

import datetime as dt
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .data import HOURS_PER_DAY, Dataset, DayProfile
from .rng import SplitMix64

VARIABLE_KINDS = ("load", "solar", "wind")

SOLAR_OUTLIER_KINDS = ("overcast", "dropout-morning", "dropout-afternoon", "dropout-ragged")
LOAD_OUTLIER_KINDS = ("spike", "sag")
WIND_OUTLIER_KINDS = ("lull",)

_DAYS_PER_YEAR = 365.25


@dataclass(frozen=True)
class VariableSpec:
    """Generator parameters for one variable.

    ``cloud_probability`` is the per-day chance of a labeled deep solar
    dropout (only meaningful for solar variables); ``outlier_probability``
    is the per-day chance of a labeled non-cloud anomaly (spike or sag).
    """

    name: str
    kind: str
    base_level: float = 1.0
    seasonal_amplitude: float = 0.2
    seasonal_phase_day: float = 197.0
    noise_level: float = 0.03
    cloud_probability: float = 0.0
    outlier_probability: float = 0.0

    def __post_init__(self):
        if not self.name:
            raise ValueError("variable name must be non-empty")
        if self.kind not in VARIABLE_KINDS:
            raise ValueError(f"unknown variable kind {self.kind!r}")
        if self.base_level <= 0:
            raise ValueError("base_level must be positive")
        if not 0 <= self.seasonal_amplitude < 1:
            raise ValueError("seasonal_amplitude must be in [0, 1)")
        if self.noise_level < 0:
            raise ValueError("noise_level must be >= 0")
        for prob in (self.cloud_probability, self.outlier_probability):
            if not 0 <= prob <= 1:
                raise ValueError("probabilities must be in [0, 1]")


@dataclass(frozen=True)
class SynthConfig:
    seed: int
    n_days: int
    variables: tuple[VariableSpec, ...]
    start_date: dt.date = dt.date(2023, 1, 1)

    def __post_init__(self):
        if self.n_days < 1:
            raise ValueError("n_days must be >= 1")
        if not self.variables:
            raise ValueError("at least one variable is required")
        names = [v.name for v in self.variables]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names: {names}")
        object.__setattr__(self, "variables", tuple(self.variables))


@dataclass(frozen=True)
class OutlierLabel:
    date: dt.date
    variable: str
    kind: str


@dataclass(frozen=True)
class SynthResult:
    dataset: Dataset
    labels: tuple[OutlierLabel, ...]

    @property
    def outlier_dates(self) -> frozenset[dt.date]:
        return frozenset(lbl.date for lbl in self.labels)


def default_config(
    seed: int,
    n_days: int = 730,
    include_wind: bool = False,
    start_date: dt.date = dt.date(2023, 1, 1),
) -> SynthConfig:
    """Two-variable load/solar config with roughly 2% labeled outlier days."""
    variables = [
        VariableSpec(
            name="load",
            kind="load",
            base_level=1.0,
            seasonal_amplitude=0.18,
            seasonal_phase_day=197.0,
            noise_level=0.025,
            outlier_probability=0.008,
        ),
        VariableSpec(
            name="solar",
            kind="solar",
            base_level=1.0,
            seasonal_amplitude=0.22,
            seasonal_phase_day=172.0,
            noise_level=0.05,
            cloud_probability=0.012,
        ),
    ]
    if include_wind:
        variables.append(
            VariableSpec(
                name="wind",
                kind="wind",
                base_level=0.6,
                seasonal_amplitude=0.15,
                seasonal_phase_day=15.0,
                noise_level=0.08,
            )
        )
    return SynthConfig(seed=seed, n_days=n_days, variables=tuple(variables), start_date=start_date)


def _annual(doy: float, amplitude: float, phase_day: float) -> float:
    return 1.0 + amplitude * math.cos(2 * math.pi * (doy - phase_day) / _DAYS_PER_YEAR)


_LOAD_SHAPE = np.array(
    [
        0.55
        + 0.30 * math.exp(-((h - 8.5) ** 2) / (2 * 2.2**2))
        + 0.50 * math.exp(-((h - 18.5) ** 2) / (2 * 2.6**2))
        for h in range(HOURS_PER_DAY)
    ]
)

_SOLAR_NOON = 12.5


def _solar_envelope(doy: float) -> np.ndarray:
    half_width = 6.1 + 1.2 * math.cos(2 * math.pi * (doy - 172.0) / _DAYS_PER_YEAR)
    env = np.zeros(HOURS_PER_DAY)
    for h in range(HOURS_PER_DAY):
        x = (h - _SOLAR_NOON) / half_width
        if abs(x) < 1.0:
            env[h] = math.cos(0.5 * math.pi * x) ** 1.5
    return env


def _gen_load(rng: SplitMix64, spec: VariableSpec, doy: float, weekday: int) -> np.ndarray:
    season = _annual(doy, spec.seasonal_amplitude, spec.seasonal_phase_day)
    weekend = 0.93 if weekday >= 5 else 1.0
    day_scale = 1.0 + rng.normal(0.0, 0.03)
    noise = np.array([rng.normal(0.0, spec.noise_level) for _ in range(HOURS_PER_DAY)])
    return spec.base_level * season * weekend * day_scale * _LOAD_SHAPE * (1.0 + noise)


def _gen_solar(rng: SplitMix64, spec: VariableSpec, doy: float) -> np.ndarray:
    amp = _annual(doy, spec.seasonal_amplitude, spec.seasonal_phase_day)
    # ordinary days stay fairly clear; heavy cloud cover only appears as a
    # labeled event, so the two regimes do not blur together
    u = rng.random()
    clearness = 1.0 - 0.18 * u * u
    ripple = np.array([rng.normal(0.0, spec.noise_level) for _ in range(HOURS_PER_DAY)])
    values = spec.base_level * amp * clearness * _solar_envelope(doy) * np.maximum(0.0, 1.0 + ripple)
    return np.maximum(0.0, values)


def _gen_wind(rng: SplitMix64, spec: VariableSpec, doy: float) -> np.ndarray:
    season = _annual(doy, spec.seasonal_amplitude, spec.seasonal_phase_day)
    level = min(1.0, max(0.05, abs(rng.normal(0.55, 0.25))))
    values = np.empty(HOURS_PER_DAY)
    s = level
    for h in range(HOURS_PER_DAY):
        s = min(1.0, max(0.02, s + rng.normal(0.0, spec.noise_level)))
        values[h] = spec.base_level * season * s
    return values


def _apply_solar_outlier(rng: SplitMix64, values: np.ndarray) -> str:
    # Amplitude anomalies that warping cannot absorb, kept moderate in
    # Euclidean norm so mean-based methods can still swallow the day.
    # Ragged days dominate the mix because their independent hourly notches
    # never resemble each other; half-day dropouts are rare because two of
    # them look alike to Euclidean methods and would pair off.
    u = rng.random()
    if u < 0.40:
        kind = "dropout-ragged"
    elif u < 0.70:
        kind = "overcast"
    elif u < 0.85:
        kind = "dropout-morning"
    else:
        kind = "dropout-afternoon"
    hours = np.arange(HOURS_PER_DAY)
    if kind == "overcast":
        values *= rng.uniform(0.30, 0.72)
    elif kind == "dropout-morning":
        values[hours < _SOLAR_NOON] *= rng.uniform(0.2, 0.45)
    elif kind == "dropout-afternoon":
        values[hours > _SOLAR_NOON] *= rng.uniform(0.2, 0.45)
    else:  # dropout-ragged: independent deep notches hour by hour
        scales = np.array([rng.uniform(0.15, 0.75) for _ in range(HOURS_PER_DAY)])
        values *= scales
    return kind


def _apply_load_outlier(rng: SplitMix64, values: np.ndarray) -> str:
    # Whole-day load scaling would mimic an ordinary low-season or weekend
    # day, so both kinds reshape only part of the profile.
    kind = LOAD_OUTLIER_KINDS[0] if rng.random() < 0.6 else LOAD_OUTLIER_KINDS[1]
    hours = np.arange(HOURS_PER_DAY)
    if kind == "spike":
        center = rng.uniform(7.0, 21.0)
        width = rng.uniform(1.8, 3.2)
        factor = rng.uniform(1.35, 1.65)
        bump = (factor - 1.0) * np.exp(-((hours - center) ** 2) / (2 * width**2))
        values *= 1.0 + bump
    else:  # sag: a curtailment window cut into the day
        start = rng.uniform(8.0, 16.0)
        length = rng.uniform(4.5, 6.5)
        depth = rng.uniform(0.6, 0.78)
        window = (hours >= start) & (hours < start + length)
        values[window] *= depth
    return kind


def _apply_wind_outlier(rng: SplitMix64, values: np.ndarray) -> str:
    values *= rng.uniform(0.02, 0.15)
    return WIND_OUTLIER_KINDS[0]


def generate(cfg: SynthConfig) -> SynthResult:
    """Generate the dataset (raw units, unnormalized) plus outlier labels."""
    rng = SplitMix64(cfg.seed)
    names = tuple(v.name for v in cfg.variables)
    days = []
    labels = []
    for d in range(cfg.n_days):
        date = cfg.start_date + dt.timedelta(days=d)
        doy = float(date.timetuple().tm_yday)
        weekday = date.weekday()
        matrix = np.empty((HOURS_PER_DAY, len(cfg.variables)))
        for v, spec in enumerate(cfg.variables):
            if spec.kind == "load":
                values = _gen_load(rng, spec, doy, weekday)
            elif spec.kind == "solar":
                values = _gen_solar(rng, spec, doy)
            else:
                values = _gen_wind(rng, spec, doy)
            # event draws come after the base profile so the two stay
            # independent within the stream
            if spec.kind == "solar":
                # storm-season weighting: cloud events peak in summer with an
                # annual mean factor of 1, so the configured rate is preserved
                summerness = 0.5 * (1.0 + math.cos(2 * math.pi * (doy - 172.0) / _DAYS_PER_YEAR))
                p_cloud = min(1.0, spec.cloud_probability * (0.4 + 1.2 * summerness))
                if rng.random() < p_cloud:
                    kind = _apply_solar_outlier(rng, values)
                    labels.append(OutlierLabel(date=date, variable=spec.name, kind=kind))
            if spec.kind != "solar" and rng.random() < spec.outlier_probability:
                if spec.kind == "load":
                    kind = _apply_load_outlier(rng, values)
                else:
                    kind = _apply_wind_outlier(rng, values)
                labels.append(OutlierLabel(date=date, variable=spec.name, kind=kind))
            matrix[:, v] = values
        days.append(DayProfile(date=date, matrix=matrix, variable_names=names))
    dataset = Dataset(days=tuple(days), variable_names=names)
    return SynthResult(dataset=dataset, labels=tuple(labels))


_TIMESTAMP_FMT = "%Y-%m-%dT%H:%M"


def write_csv(result: SynthResult, path: str | Path) -> None:
    """Write the dataset in the hourly CSV format the ingest stage reads."""
    ds = result.dataset
    lines = ["timestamp," + ",".join(ds.variable_names)]
    for day in ds.days:
        for h in range(HOURS_PER_DAY):
            ts = dt.datetime.combine(day.date, dt.time(hour=h))
            cells = ",".join(repr(float(x)) for x in day.matrix[h])
            lines.append(f"{ts.strftime(_TIMESTAMP_FMT)},{cells}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_labels(result: SynthResult, path: str | Path) -> None:
    payload = [
        {"date": lbl.date.isoformat(), "variable": lbl.variable, "kind": lbl.kind}
        for lbl in result.labels
    ]
    Path(path).write_text(
        json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n",
        encoding="utf-8",
    )


def load_labels(path: str | Path) -> tuple[OutlierLabel, ...]:
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    return tuple(
        OutlierLabel(
            date=dt.date.fromisoformat(item["date"]),
            variable=item["variable"],
            kind=item["kind"],
        )
        for item in payload
    )
