"""Convert concentration changes into health incidences and dollars.

Each endpoint carries a paired low/mid/high parameter band: a band's
incidence count is always monetized with the same band's unit value, never
mixed across bands. Excess incidence follows the log-linear epidemiology
form pop * rate * (1 - exp(-beta * dC)), which is nearly linear for the
small concentration changes a single operator induces.

Mortality is valued with the standard 20-year cessation-lag schedule: 30%
of deaths in year one, 50% spread over years two through five, 20% over
years six through twenty, discounted back to year one at a configurable
rate. Endpoints whose id starts with "mortality" receive the lag; all
other endpoints are valued in full in year one.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from airtoll.dispersion import ConcentrationField, Region
from airtoll.errors import SchemaError
from airtoll.pollutants import GRAMS_PER_METRIC_TON, PollutantVector, Species

# One cross-country round trip by an average light-duty vehicle:
# 2 * 2790 miles at 0.008 g/mi PM2.5 and 0.199 g/mi NOx.
ROUND_TRIP_PM25_GRAMS = 44.64
ROUND_TRIP_NOX_GRAMS = 1110.42

# Cessation-lag weights: year one, then years 2-5 and 6-20 spread evenly.
_LAG_YEAR_ONE = 0.30
_LAG_YEARS_2_TO_5 = 0.50
_LAG_YEARS_6_TO_20 = 0.20

DEFAULT_DISCOUNT_RATE = 0.02

_BANDS = ("low", "mid", "high")


@dataclass(frozen=True)
class EndpointParams:
    """Concentration-response and valuation parameters for one endpoint."""

    endpoint_id: str
    beta_low: float
    beta_mid: float
    beta_high: float
    baseline_rate: float  # annual incidences per person
    unit_value_low: float
    unit_value_mid: float
    unit_value_high: float

    def __post_init__(self) -> None:
        betas = (self.beta_low, self.beta_mid, self.beta_high)
        values = (self.unit_value_low, self.unit_value_mid, self.unit_value_high)
        if any(b < 0.0 for b in betas) or not betas[0] <= betas[1] <= betas[2]:
            raise ValueError(f"endpoint {self.endpoint_id}: betas must be ordered and non-negative")
        if any(v < 0.0 for v in values) or not values[0] <= values[1] <= values[2]:
            raise ValueError(f"endpoint {self.endpoint_id}: unit values must be ordered and non-negative")
        if self.baseline_rate < 0.0:
            raise ValueError(f"endpoint {self.endpoint_id}: negative baseline rate")

    @property
    def is_mortality(self) -> bool:
        return self.endpoint_id.startswith("mortality")


def load_endpoints(path: str | Path) -> list[EndpointParams]:
    """Load endpoint parameters, sorted by endpoint id."""
    path = Path(path)
    expected = {
        "endpoint_id",
        "beta_low",
        "beta_mid",
        "beta_high",
        "baseline_rate",
        "unit_value_low",
        "unit_value_mid",
        "unit_value_high",
    }
    out: dict[str, EndpointParams] = {}
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        if set(reader.fieldnames or ()) != expected:
            raise SchemaError(f"expected columns {sorted(expected)}", path=str(path), line=1)
        for lineno, row in enumerate(reader, start=2):
            endpoint_id = row["endpoint_id"]
            if endpoint_id in out:
                raise SchemaError(f"duplicate endpoint {endpoint_id!r}", path=str(path), line=lineno)
            numeric: dict[str, float] = {}
            for column in sorted(expected - {"endpoint_id"}):
                raw = row.get(column)
                try:
                    numeric[column] = float(raw)  # type: ignore[arg-type]
                except (TypeError, ValueError):
                    raise SchemaError(
                        f"column {column!r} is not a number: {raw!r}", path=str(path), line=lineno
                    ) from None
            try:
                out[endpoint_id] = EndpointParams(endpoint_id=endpoint_id, **numeric)
            except ValueError as exc:
                raise SchemaError(str(exc), path=str(path), line=lineno) from None
    if not out:
        raise SchemaError("endpoint file has no rows", path=str(path), line=1)
    return [out[k] for k in sorted(out)]


@dataclass(frozen=True)
class IncidenceField:
    """Excess incidence counts per receptor, endpoint, and band."""

    receptors: tuple[str, ...]
    endpoint_ids: tuple[str, ...]
    low: np.ndarray = field(repr=False)  # shape (receptors, endpoints)
    mid: np.ndarray = field(repr=False)
    high: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        shape = (len(self.receptors), len(self.endpoint_ids))
        for band in _BANDS:
            arr = np.asarray(getattr(self, band), dtype=float)
            object.__setattr__(self, band, arr)
            if arr.shape != shape:
                raise ValueError(f"{band} counts shape {arr.shape}, expected {shape}")


@dataclass(frozen=True)
class HealthReport:
    """Monetized health burden per receptor with national totals."""

    receptors: tuple[str, ...]
    cost_low: np.ndarray = field(repr=False)
    cost_mid: np.ndarray = field(repr=False)
    cost_high: np.ndarray = field(repr=False)
    national_low: float
    national_mid: float
    national_high: float
    discount_rate: float

    def cost_by_receptor(self) -> dict[str, tuple[float, float, float]]:
        return {
            rid: (float(self.cost_low[i]), float(self.cost_mid[i]), float(self.cost_high[i]))
            for i, rid in enumerate(self.receptors)
        }


def incidences(
    concentration: ConcentrationField,
    regions: dict[str, Region],
    endpoints: list[EndpointParams],
) -> IncidenceField:
    """Excess incidences from a concentration change at every receptor."""
    if not endpoints:
        raise ValueError("no endpoints given")
    missing = [rid for rid in concentration.receptors if rid not in regions]
    if missing:
        raise ValueError(f"receptor(s) missing from region registry: {', '.join(missing)}")
    delta = concentration.pm25_equivalent()  # (R,)
    if np.any(delta < 0.0):
        raise ValueError("concentration change must be non-negative")
    population = np.array([regions[rid].population for rid in concentration.receptors])
    counts: dict[str, np.ndarray] = {}
    for band in _BANDS:
        betas = np.array([getattr(e, f"beta_{band}") for e in endpoints])
        rates = np.array([e.baseline_rate for e in endpoints])
        # (R, E): population and baseline rate scale a saturating response.
        response = 1.0 - np.exp(-np.outer(delta, betas))
        counts[band] = population[:, None] * rates[None, :] * response
    return IncidenceField(
        receptors=concentration.receptors,
        endpoint_ids=tuple(e.endpoint_id for e in endpoints),
        low=counts["low"],
        mid=counts["mid"],
        high=counts["high"],
    )


def mortality_lag_factor(discount_rate: float) -> float:
    """Present value of one death's valuation under the 20-year lag.

    Year one is undiscounted; later years are discounted back to year one.
    The factor is exactly 1.0 at a zero discount rate and decreases as the
    rate grows.
    """
    if discount_rate < 0.0:
        raise ValueError(f"discount_rate must be non-negative, got {discount_rate}")
    d = 1.0 / (1.0 + discount_rate)
    years_2_5 = sum(d**t for t in range(1, 5)) / 4.0
    years_6_20 = sum(d**t for t in range(5, 20)) / 15.0
    return _LAG_YEAR_ONE + _LAG_YEARS_2_TO_5 * years_2_5 + _LAG_YEARS_6_TO_20 * years_6_20


def monetize(
    counts: IncidenceField,
    endpoints: list[EndpointParams],
    discount_rate: float = DEFAULT_DISCOUNT_RATE,
) -> HealthReport:
    """Value incidences in dollars, band by band."""
    by_id = {e.endpoint_id: e for e in endpoints}
    missing = [eid for eid in counts.endpoint_ids if eid not in by_id]
    if missing:
        raise ValueError(f"endpoint parameters missing for: {', '.join(missing)}")
    lag = mortality_lag_factor(discount_rate)
    costs: dict[str, np.ndarray] = {}
    for band in _BANDS:
        values = np.array(
            [
                getattr(by_id[eid], f"unit_value_{band}") * (lag if by_id[eid].is_mortality else 1.0)
                for eid in counts.endpoint_ids
            ]
        )
        costs[band] = getattr(counts, band) @ values
    return HealthReport(
        receptors=counts.receptors,
        cost_low=costs["low"],
        cost_mid=costs["mid"],
        cost_high=costs["high"],
        national_low=float(costs["low"].sum()),
        national_mid=float(costs["mid"].sum()),
        national_high=float(costs["high"].sum()),
        discount_rate=discount_rate,
    )


def per_household(report: HealthReport, regions: dict[str, Region]) -> dict[str, float | None]:
    """Mid-band cost per household for each receptor.

    Regions with no household count get None rather than a division by
    zero; callers decide how to present the gap.
    """
    out: dict[str, float | None] = {}
    for i, rid in enumerate(report.receptors):
        region = regions.get(rid)
        if region is None:
            raise ValueError(f"receptor {rid!r} missing from region registry")
        if region.households > 0.0:
            out[rid] = float(report.cost_mid[i]) / region.households
        else:
            out[rid] = None
    return out


def car_trip_equivalent(emissions: PollutantVector) -> dict[Species, float]:
    """Express PM2.5 and NOx masses as cross-country round-trip counts."""
    emissions.require_non_negative("emissions")
    return {
        Species.PM25: emissions.pm25 * GRAMS_PER_METRIC_TON / ROUND_TRIP_PM25_GRAMS,
        Species.NOX: emissions.nox * GRAMS_PER_METRIC_TON / ROUND_TRIP_NOX_GRAMS,
    }
