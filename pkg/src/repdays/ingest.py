"""Hourly CSV ingestion: parse, segment into days, normalize.

The expected file layout is a header row, one timestamp column
(``YYYY-MM-DDTHH:00`` or ``YYYY-MM-DD HH:00``) and one numeric column per
variable.  Rows that cannot be parsed are collected as row errors instead of
aborting the whole file; structural problems (no header, duplicate
timestamps) are fatal.
"""

from __future__ import annotations

import csv
import datetime as dt
import io
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable

import numpy as np

from .data import HOURS_PER_DAY, Dataset, DayProfile

# Longest run of consecutive missing hours that linear interpolation may fill.
MAX_GAP_HOURS = 2

_TS_FORMATS = (
    "%Y-%m-%dT%H:%M",
    "%Y-%m-%d %H:%M",
    "%Y-%m-%dT%H:%M:%S",
    "%Y-%m-%d %H:%M:%S",
)


class FormatError(ValueError):
    """Structural CSV problem that makes the whole file unusable."""


@dataclass(frozen=True)
class CsvSchema:
    """Column mapping: which header names hold the timestamp and the values."""

    timestamp: str
    values: tuple[str, ...]

    def __post_init__(self):
        if not self.values:
            raise ValueError("schema needs at least one value column")


@dataclass(frozen=True)
class RawRecord:
    timestamp: dt.datetime
    values: tuple[float, ...]


@dataclass(frozen=True)
class RowError:
    line: int
    message: str


@dataclass
class ParseResult:
    records: list[RawRecord]
    row_errors: list[RowError]
    variable_names: tuple[str, ...] = ()


@dataclass(frozen=True)
class Exclusion:
    date: dt.date
    reason: str


def _parse_timestamp(text: str) -> dt.datetime:
    for fmt in _TS_FORMATS:
        try:
            ts = dt.datetime.strptime(text.strip(), fmt)
        except ValueError:
            continue
        if ts.minute != 0 or ts.second != 0:
            raise ValueError(f"timestamp {text!r} is not on an hour boundary")
        return ts
    raise ValueError(f"unparseable timestamp {text!r}")


def _parse_value(text: str) -> float:
    v = float(text)
    if not math.isfinite(v):
        raise ValueError(f"non-finite value {text!r}")
    return v


def parse_csv(source: str | Path | IO[str], schema: CsvSchema | None = None) -> ParseResult:
    """Read hourly records from a CSV file, path, or open text stream.

    Without a schema the first header column is taken as the timestamp and
    every remaining column as a variable.  Returns the records in file order
    together with the per-row errors (bad timestamps, non-numeric or
    non-finite cells, wrong cell counts).  Raises :class:`FormatError` for a
    missing/incomplete header or a duplicate timestamp.
    """
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8", newline="") as fh:
            return parse_csv(fh, schema)
    if isinstance(source, (bytes, bytearray)):
        return parse_csv(io.StringIO(source.decode("utf-8")), schema)

    reader = csv.reader(source)
    try:
        header = next(reader)
    except StopIteration:
        raise FormatError("missing header") from None
    header = [h.strip() for h in header]
    if schema is None:
        if len(header) < 2:
            raise FormatError("header needs a timestamp column and at least one variable")
        schema = CsvSchema(timestamp=header[0], values=tuple(header[1:]))
    wanted = (schema.timestamp,) + schema.values
    missing = [c for c in wanted if c not in header]
    if missing:
        raise FormatError(f"missing header column(s): {', '.join(missing)}")
    cols = [header.index(c) for c in wanted]

    records: list[RawRecord] = []
    row_errors: list[RowError] = []
    seen: set[dt.datetime] = set()
    for lineno, row in enumerate(reader, start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) < len(header):
            row_errors.append(RowError(lineno, f"expected {len(header)} cells, got {len(row)}"))
            continue
        try:
            ts = _parse_timestamp(row[cols[0]])
            values = tuple(_parse_value(row[c]) for c in cols[1:])
        except ValueError as exc:
            row_errors.append(RowError(lineno, str(exc)))
            continue
        if ts in seen:
            raise FormatError(f"duplicate timestamp {ts.isoformat()} at line {lineno}")
        seen.add(ts)
        records.append(RawRecord(ts, values))
    return ParseResult(records=records, row_errors=row_errors, variable_names=schema.values)


def _fill_gaps(values: np.ndarray, present: np.ndarray) -> bool:
    """Interpolate interior gaps of <= MAX_GAP_HOURS in place.

    ``values`` is (24, m), ``present`` a boolean hour mask.  Returns True when
    every hour is covered afterwards.  Gaps touching hour 0 or 23 have no
    bracketing pair of observed hours and are left unfilled.
    """
    if present.all():
        return True
    h = 0
    while h < HOURS_PER_DAY:
        if present[h]:
            h += 1
            continue
        start = h
        while h < HOURS_PER_DAY and not present[h]:
            h += 1
        end = h  # gap covers [start, end)
        if start == 0 or end == HOURS_PER_DAY or end - start > MAX_GAP_HOURS:
            return False
        lo, hi = start - 1, end
        for g in range(start, end):
            t = (g - lo) / (hi - lo)
            values[g] = (1.0 - t) * values[lo] + t * values[hi]
            present[g] = True
    return True


def build_days(
    records: Iterable[RawRecord],
    variable_names: tuple[str, ...] | list[str],
) -> tuple[Dataset, list[Exclusion]]:
    """Segment timestamp-sorted records into complete 24-hour day profiles.

    Days with small interior gaps (runs of at most MAX_GAP_HOURS missing
    hours) are repaired by linear interpolation; anything still incomplete is
    excluded and reported.  Raises ValueError when the input is unsorted or
    no complete day remains.
    """
    records = list(records)
    variable_names = tuple(variable_names)
    for a, b in zip(records, records[1:]):
        if b.timestamp < a.timestamp:
            raise ValueError("records must be sorted by timestamp")

    m = len(variable_names)
    by_date: dict[dt.date, list[RawRecord]] = {}
    for rec in records:
        if len(rec.values) != m:
            raise ValueError(
                f"record at {rec.timestamp} has {len(rec.values)} values, expected {m}"
            )
        by_date.setdefault(rec.timestamp.date(), []).append(rec)

    days: list[DayProfile] = []
    exclusions: list[Exclusion] = []
    for date in sorted(by_date):
        values = np.zeros((HOURS_PER_DAY, m))
        present = np.zeros(HOURS_PER_DAY, dtype=bool)
        for rec in by_date[date]:
            hour = rec.timestamp.hour
            values[hour] = rec.values
            present[hour] = True
        n_present = int(present.sum())
        if _fill_gaps(values, present):
            days.append(DayProfile(date=date, matrix=values, variable_names=variable_names))
        else:
            exclusions.append(
                Exclusion(date, f"only {n_present} of {HOURS_PER_DAY} hours usable")
            )
    if not days:
        raise ValueError("empty dataset: no complete days")
    return Dataset(days=days, variable_names=variable_names), exclusions


def normalize(ds: Dataset) -> Dataset:
    """Scale each variable to [0, 1] by its global min/max over all days.

    The bounds are global (whole dataset, all hours) rather than per day so
    that seasonal magnitude differences between days survive scaling.  A
    constant variable cannot be scaled and is a fatal error.
    """
    if ds.is_normalized:
        raise ValueError("dataset is already normalized")
    stacked = ds.stacked()
    bounds: dict[str, tuple[float, float]] = {}
    for i, name in enumerate(ds.variable_names):
        lo = float(stacked[:, :, i].min())
        hi = float(stacked[:, :, i].max())
        if hi <= lo:
            raise ValueError(f"variable {name!r} is constant (min == max == {lo})")
        bounds[name] = (lo, hi)
    lows = np.array([bounds[n][0] for n in ds.variable_names])
    spans = np.array([bounds[n][1] - bounds[n][0] for n in ds.variable_names])
    days = [
        DayProfile(
            date=day.date,
            matrix=(day.matrix - lows) / spans,
            variable_names=ds.variable_names,
        )
        for day in ds.days
    ]
    return Dataset(days=days, variable_names=ds.variable_names, normalization=bounds)


def denormalize(ds: Dataset) -> Dataset:
    """Invert :func:`normalize` using the stored per-variable bounds."""
    if not ds.is_normalized:
        raise ValueError("dataset has no normalization to invert")
    bounds = ds.normalization
    lows = np.array([bounds[n][0] for n in ds.variable_names])
    spans = np.array([bounds[n][1] - bounds[n][0] for n in ds.variable_names])
    days = [
        DayProfile(
            date=day.date,
            matrix=day.matrix * spans + lows,
            variable_names=ds.variable_names,
        )
        for day in ds.days
    ]
    return Dataset(days=days, variable_names=ds.variable_names, normalization=None)


def save_exclusions(exclusions: list[Exclusion], path: str | Path) -> None:
    """Write the exclusion report as a JSON list of {date, reason}."""
    payload = [{"date": e.date.isoformat(), "reason": e.reason} for e in exclusions]
    Path(path).write_text(
        json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n",
        encoding="utf-8",
    )
