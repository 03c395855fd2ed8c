"""Time-stamped signal series: loading, saving, and resampling.

A signal is one quantity (electricity price, health price, or carbon
intensity) observed for one region at UTC timestamps. Files hold many
series in long form and round-trip losslessly: values are written with
shortest round-trip float formatting and timestamps as ISO 8601 with a Z
suffix.
"""

from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass, field
from datetime import datetime, timedelta, timezone
from enum import Enum
from pathlib import Path

import numpy as np

from airtoll.errors import SchemaError

# An hour of five-minute samples is averaged only when at least this share
# of its expected samples is present.
HOUR_VALIDITY_THRESHOLD = 0.75


class SignalKind(str, Enum):
    """Quantities a signal series can carry; values match file columns."""

    ELECTRICITY_PRICE = "electricity_price_usd_mwh"
    HEALTH_PRICE = "health_price_usd_mwh"
    CARBON_INTENSITY = "carbon_ton_mwh"


@dataclass(frozen=True)
class SignalSeries:
    """One region's series of one kind, strictly increasing in time."""

    region_id: str
    kind: SignalKind
    timestamps: tuple[datetime, ...]
    values: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", values)
        if len(self.timestamps) == 0:
            raise ValueError("series is empty")
        if values.shape != (len(self.timestamps),):
            raise ValueError(
                f"length mismatch: {len(self.timestamps)} timestamps, {values.shape} values"
            )
        if not np.all(np.isfinite(values)):
            raise ValueError("series contains non-finite values")
        if np.any(values < 0.0):
            raise ValueError("series contains negative values")
        for previous, current in zip(self.timestamps, self.timestamps[1:]):
            if current <= previous:
                raise ValueError(
                    f"timestamps must be strictly increasing, got {previous} then {current}"
                )
        for ts in self.timestamps:
            if ts.tzinfo is None or ts.utcoffset() != timedelta(0):
                raise ValueError(f"timestamps must be UTC, got {ts!r}")

    def __len__(self) -> int:
        return len(self.timestamps)

    def cadence(self) -> timedelta | None:
        """Uniform step between samples, or None if irregular."""
        if len(self.timestamps) < 2:
            return None
        steps = {b - a for a, b in zip(self.timestamps, self.timestamps[1:])}
        return steps.pop() if len(steps) == 1 else None


def parse_timestamp(raw: str) -> datetime:
    """Parse an ISO 8601 UTC timestamp, accepting a trailing Z."""
    text = raw.strip()
    if text.endswith("Z"):
        text = text[:-1] + "+00:00"
    try:
        ts = datetime.fromisoformat(text)
    except ValueError:
        raise ValueError(f"bad timestamp {raw!r}") from None
    if ts.tzinfo is None:
        ts = ts.replace(tzinfo=timezone.utc)
    return ts.astimezone(timezone.utc)


def format_timestamp(ts: datetime) -> str:
    return ts.astimezone(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def load_signal_file(path: str | Path) -> dict[tuple[str, SignalKind], SignalSeries]:
    """Load every series from a long-form signal CSV.

    Expected columns: ``timestamp_utc,region_id,kind,value``. Rows for the
    same (region, kind) must appear in strictly increasing time order.
    """
    path = Path(path)
    buckets: dict[tuple[str, SignalKind], tuple[list[datetime], list[float]]] = {}
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        expected = {"timestamp_utc", "region_id", "kind", "value"}
        if set(reader.fieldnames or ()) != expected:
            raise SchemaError(
                f"expected columns {sorted(expected)}, got {reader.fieldnames}",
                path=str(path),
                line=1,
            )
        for lineno, row in enumerate(reader, start=2):
            try:
                ts = parse_timestamp(row["timestamp_utc"])
            except ValueError as exc:
                raise SchemaError(str(exc), path=str(path), line=lineno) from None
            try:
                kind = SignalKind(row["kind"])
            except ValueError:
                raise SchemaError(f"unknown kind {row['kind']!r}", path=str(path), line=lineno) from None
            try:
                value = float(row["value"])
            except ValueError:
                raise SchemaError(f"bad value {row['value']!r}", path=str(path), line=lineno) from None
            if not math.isfinite(value) or value < 0.0:
                raise SchemaError(f"value out of range: {value!r}", path=str(path), line=lineno)
            region = row["region_id"]
            if not region:
                raise SchemaError("empty region_id", path=str(path), line=lineno)
            times, values = buckets.setdefault((region, kind), ([], []))
            if times and ts <= times[-1]:
                raise SchemaError(
                    f"timestamps for ({region}, {kind.value}) not strictly increasing",
                    path=str(path),
                    line=lineno,
                )
            times.append(ts)
            values.append(value)
    if not buckets:
        raise SchemaError("signal file has no rows", path=str(path), line=1)
    return {
        key: SignalSeries(region_id=key[0], kind=key[1], timestamps=tuple(times), values=np.asarray(values))
        for key, (times, values) in sorted(buckets.items(), key=lambda item: (item[0][0], item[0][1].value))
    }


def save_signal_file(path: str | Path, series: list[SignalSeries]) -> None:
    """Write series to a long-form CSV that loads back bit-identically."""
    rows: list[tuple[str, str, str, str]] = []
    for s in sorted(series, key=lambda s: (s.region_id, s.kind.value)):
        for ts, value in zip(s.timestamps, s.values):
            rows.append((format_timestamp(ts), s.region_id, s.kind.value, repr(float(value))))
    with Path(path).open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["timestamp_utc", "region_id", "kind", "value"])
        writer.writerows(rows)


def hourly_mean(series: SignalSeries) -> SignalSeries:
    """Average a sub-hourly series onto hour boundaries.

    The cadence is the finest spacing present, and every gap must be a
    whole multiple of it: missing samples are expected, truly irregular
    series are rejected. An hour is kept when at least 75% of its expected
    samples are present (9 of 12 at 5-minute cadence); sparser hours,
    including a partial trailing hour, are dropped with a warning. Output
    timestamps are the hour starts.
    """
    if len(series) < 2:
        raise ValueError("cannot infer a cadence from fewer than two samples")
    gaps = [b - a for a, b in zip(series.timestamps, series.timestamps[1:])]
    step = min(gaps)
    for gap in gaps:
        if gap % step != timedelta(0):
            raise ValueError(f"irregular sampling: gap {gap} is not a multiple of {step}")
    if timedelta(hours=1) % step != timedelta(0):
        raise ValueError(f"cadence {step} does not divide one hour")
    per_hour = timedelta(hours=1) // step
    if per_hour == 1:
        return series

    buckets: dict[datetime, list[float]] = {}
    for ts, value in zip(series.timestamps, series.values):
        hour = ts.replace(minute=0, second=0, microsecond=0)
        buckets.setdefault(hour, []).append(float(value))

    kept_times: list[datetime] = []
    kept_values: list[float] = []
    dropped: list[datetime] = []
    for hour in sorted(buckets):
        samples = buckets[hour]
        if len(samples) >= HOUR_VALIDITY_THRESHOLD * per_hour:
            kept_times.append(hour)
            kept_values.append(sum(samples) / len(samples))
        else:
            dropped.append(hour)
    if dropped:
        warnings.warn(
            f"dropped {len(dropped)} hour(s) below the {HOUR_VALIDITY_THRESHOLD:.0%} "
            f"sample threshold for ({series.region_id}, {series.kind.value}), "
            f"first at {format_timestamp(dropped[0])}",
            stacklevel=2,
        )
    if not kept_times:
        raise ValueError("no hour met the sample threshold")
    return SignalSeries(
        region_id=series.region_id,
        kind=series.kind,
        timestamps=tuple(kept_times),
        values=np.asarray(kept_values),
    )


def interpolate_years(year0: int, value0: float, year1: int, value1: float, year: float) -> float:
    """Linear interpolation between two annual anchors.

    ``year`` must lie inside [year0, year1]; extrapolation is refused
    because inventory trends flatten or reverse outside the anchor span.
    """
    if year1 < year0:
        raise ValueError(f"anchors out of order: {year0} > {year1}")
    if not year0 <= year <= year1:
        raise ValueError(f"year {year} outside [{year0}, {year1}]")
    if year1 == year0:
        return float(value0)
    fraction = (year - year0) / (year1 - year0)
    return float(value0 + fraction * (value1 - value0))
