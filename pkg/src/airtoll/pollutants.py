"""Criteria-pollutant species, mass vectors, and inventory loading.

All internal masses are metric tons. Loaders convert from US short tons
where a source reports them, and downstream modules convert to grams only
at presentation boundaries (car-trip equivalents).
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from pathlib import Path

from airtoll.errors import SchemaError

# Exact by definition: 2000 lb * 0.45359237 kg/lb.
METRIC_TONS_PER_SHORT_TON = 0.90718474
GRAMS_PER_METRIC_TON = 1.0e6


class Species(str, Enum):
    """Criteria air pollutants tracked by every stage of the pipeline."""

    PM25 = "pm25"
    NOX = "nox"
    SO2 = "so2"
    VOC = "voc"


SPECIES_ORDER: tuple[Species, ...] = (Species.PM25, Species.NOX, Species.SO2, Species.VOC)


def short_tons_to_metric(short_tons: float) -> float:
    """Convert US short tons to metric tons."""
    return short_tons * METRIC_TONS_PER_SHORT_TON


def metric_tons_to_grams(metric_tons: float) -> float:
    return metric_tons * GRAMS_PER_METRIC_TON


@dataclass(frozen=True)
class PollutantVector:
    """Mass per species in metric tons.

    Vectors are immutable; arithmetic returns new vectors. Values must be
    finite, and inventory-style vectors are expected to be non-negative
    (use ``require_non_negative`` at validation boundaries).
    """

    pm25: float = 0.0
    nox: float = 0.0
    so2: float = 0.0
    voc: float = 0.0

    def __post_init__(self) -> None:
        for species in SPECIES_ORDER:
            value = getattr(self, species.value)
            if not math.isfinite(value):
                raise ValueError(f"non-finite mass for {species.value}: {value!r}")

    def get(self, species: Species) -> float:
        return getattr(self, species.value)

    def as_dict(self) -> dict[Species, float]:
        return {species: self.get(species) for species in SPECIES_ORDER}

    @classmethod
    def from_dict(cls, masses: dict[Species, float]) -> "PollutantVector":
        return cls(**{species.value: masses.get(species, 0.0) for species in SPECIES_ORDER})

    def __add__(self, other: "PollutantVector") -> "PollutantVector":
        return PollutantVector(
            pm25=self.pm25 + other.pm25,
            nox=self.nox + other.nox,
            so2=self.so2 + other.so2,
            voc=self.voc + other.voc,
        )

    def scale(self, factor: float) -> "PollutantVector":
        """Multiply every species mass by ``factor``."""
        if not math.isfinite(factor):
            raise ValueError(f"non-finite scale factor: {factor!r}")
        return PollutantVector(
            pm25=self.pm25 * factor,
            nox=self.nox * factor,
            so2=self.so2 * factor,
            voc=self.voc * factor,
        )

    def require_non_negative(self, context: str = "pollutant vector") -> "PollutantVector":
        for species in SPECIES_ORDER:
            if self.get(species) < 0.0:
                raise ValueError(f"{context}: negative {species.value} mass {self.get(species)}")
        return self


def packaged_data_path(name: str) -> Path:
    """Resolve a data file shipped inside the package."""
    path = resources.files("airtoll").joinpath("data", name)
    return Path(str(path))


def _parse_float(raw: str, column: str, path: str, line: int) -> float:
    try:
        return float(raw)
    except ValueError:
        raise SchemaError(f"column {column!r} is not a number: {raw!r}", path=path, line=line) from None


def load_inventory(path: str | Path) -> dict[int, PollutantVector]:
    """Load a per-year emission inventory CSV.

    Expected columns: ``year`` plus one column per species (``pm25_tons``,
    ``nox_tons``, ``so2_tons``, ``voc_tons``), all in metric tons. A missing
    ``voc_tons`` column is treated as zero because several public inventories
    omit it. Years must be unique; the result maps year to vector.
    """
    path = Path(path)
    out: dict[int, PollutantVector] = {}
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        required = {"year", "pm25_tons", "nox_tons", "so2_tons"}
        fields = set(reader.fieldnames or ())
        if not required.issubset(fields):
            raise SchemaError(f"missing columns {sorted(required - fields)}", path=str(path), line=1)
        has_voc = "voc_tons" in fields
        for lineno, row in enumerate(reader, start=2):
            try:
                year = int(row["year"])
            except ValueError:
                raise SchemaError(f"bad year {row['year']!r}", path=str(path), line=lineno) from None
            if year in out:
                raise SchemaError(f"duplicate year {year}", path=str(path), line=lineno)
            vector = PollutantVector(
                pm25=_parse_float(row["pm25_tons"], "pm25_tons", str(path), lineno),
                nox=_parse_float(row["nox_tons"], "nox_tons", str(path), lineno),
                so2=_parse_float(row["so2_tons"], "so2_tons", str(path), lineno),
                voc=_parse_float(row["voc_tons"], "voc_tons", str(path), lineno) if has_voc else 0.0,
            )
            out[year] = vector.require_non_negative(f"inventory year {year}")
    if not out:
        raise SchemaError("inventory has no rows", path=str(path), line=1)
    return dict(sorted(out.items()))


def load_permit_caps(path: str | Path | None = None) -> PollutantVector:
    """Load annual permit caps and convert them to metric tons.

    The packaged default carries one state's operating-permit thresholds,
    reported in US short tons per year. Columns: ``species,cap_short_tons``.
    """
    if path is None:
        path = packaged_data_path("permit_caps.csv")
    path = Path(path)
    masses: dict[Species, float] = {}
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        if set(reader.fieldnames or ()) != {"species", "cap_short_tons"}:
            raise SchemaError("expected columns species,cap_short_tons", path=str(path), line=1)
        for lineno, row in enumerate(reader, start=2):
            try:
                species = Species(row["species"])
            except ValueError:
                raise SchemaError(f"unknown species {row['species']!r}", path=str(path), line=lineno) from None
            if species in masses:
                raise SchemaError(f"duplicate species {species.value}", path=str(path), line=lineno)
            cap = _parse_float(row["cap_short_tons"], "cap_short_tons", str(path), lineno)
            masses[species] = short_tons_to_metric(cap)
    return PollutantVector.from_dict(masses).require_non_negative("permit caps")
