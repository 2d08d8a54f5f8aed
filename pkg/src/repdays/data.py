"""Core day-profile containers shared by every stage of the pipeline.

A day is a 24 x m matrix (hour rows, variable columns) tied to a calendar
date; a dataset is an ordered, date-unique collection of such days together
with the per-variable normalization bounds, when normalization has been
applied.
"""

from __future__ import annotations

import datetime as dt
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

HOURS_PER_DAY = 24


@dataclass(frozen=True)
class DayProfile:
    """One calendar day of hourly values for m variables (24 x m matrix)."""

    date: dt.date
    matrix: np.ndarray
    variable_names: tuple[str, ...]

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=float)
        object.__setattr__(self, "matrix", mat)
        if mat.ndim != 2 or mat.shape[0] != HOURS_PER_DAY:
            raise ValueError(
                f"day matrix must be {HOURS_PER_DAY} x m, got shape {mat.shape}"
            )
        if mat.shape[1] < 1:
            raise ValueError("day matrix needs at least one variable column")
        if mat.shape[1] != len(self.variable_names):
            raise ValueError(
                f"matrix has {mat.shape[1]} columns but "
                f"{len(self.variable_names)} variable names"
            )

    @property
    def n_variables(self) -> int:
        return self.matrix.shape[1]

    def column(self, name: str) -> np.ndarray:
        """Hourly series of one variable."""
        try:
            idx = self.variable_names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None
        return self.matrix[:, idx]


@dataclass
class Dataset:
    """Ordered collection of day profiles sharing one variable layout.

    ``normalization`` is None for raw data, otherwise a per-variable
    ``{name: (minimum, maximum)}`` map recording the global bounds used for
    min-max scaling, so values can be mapped back to original units.
    """

    days: list[DayProfile]
    variable_names: tuple[str, ...]
    normalization: dict[str, tuple[float, float]] | None = None
    _stacked: np.ndarray | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if not self.days:
            raise ValueError("empty dataset")
        self.variable_names = tuple(self.variable_names)
        for day in self.days:
            if day.variable_names != self.variable_names:
                raise ValueError(
                    f"day {day.date} has variables {day.variable_names}, "
                    f"expected {self.variable_names}"
                )
        dates = [d.date for d in self.days]
        if len(set(dates)) != len(dates):
            raise ValueError("duplicate dates in dataset")
        if dates != sorted(dates):
            raise ValueError("dataset days must be sorted by date")

    @property
    def n_days(self) -> int:
        return len(self.days)

    @property
    def n_variables(self) -> int:
        return len(self.variable_names)

    @property
    def dates(self) -> tuple[dt.date, ...]:
        return tuple(d.date for d in self.days)

    @property
    def is_normalized(self) -> bool:
        return self.normalization is not None

    def stacked(self) -> np.ndarray:
        """All days as one (n_days, 24, m) array; cached after first call."""
        if self._stacked is None:
            self._stacked = np.stack([d.matrix for d in self.days])
        return self._stacked

    def flattened(self) -> np.ndarray:
        """Days as (n_days, 24*m) vectors, hour-major, for Euclidean methods."""
        return self.stacked().reshape(self.n_days, -1)


def save_dataset(ds: Dataset, path: str | Path) -> None:
    """Write a dataset as deterministic JSON (sorted keys, exact floats)."""
    payload = {
        "variable_names": list(ds.variable_names),
        "normalization": (
            None
            if ds.normalization is None
            else {k: list(v) for k, v in ds.normalization.items()}
        ),
        "days": [
            {"date": day.date.isoformat(), "matrix": day.matrix.tolist()}
            for day in ds.days
        ],
    }
    Path(path).write_text(
        json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n",
        encoding="utf-8",
    )


def load_dataset(path: str | Path) -> Dataset:
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    names = tuple(payload["variable_names"])
    days = [
        DayProfile(
            date=dt.date.fromisoformat(rec["date"]),
            matrix=np.array(rec["matrix"], dtype=float),
            variable_names=names,
        )
        for rec in payload["days"]
    ]
    norm = payload["normalization"]
    if norm is not None:
        norm = {k: (float(v[0]), float(v[1])) for k, v in norm.items()}
    return Dataset(days=days, variable_names=names, normalization=norm)
