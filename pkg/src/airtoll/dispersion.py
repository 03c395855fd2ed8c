"""Linear source-receptor dispersion of emitted pollutants.

A source-receptor matrix maps annual emissions at source regions to
annual-average concentration contributions at receptor regions. Channels
are indexed by the emitted species, but every channel carries fine-particle
equivalent concentration (micrograms per cubic meter): primary PM2.5
contributes directly, and precursor species (NOx, SO2, VOC) contribute
through per-species secondary-formation scale factors baked into the
coefficients. Receptor totals are therefore sums over channels.

Matrices either load from CSV or are synthesized with an exponential
distance-decay kernel, which keeps the linear structure of a full
chemical-transport model while staying cheap enough for tests.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from airtoll import kernels
from airtoll.errors import SchemaError
from airtoll.pollutants import SPECIES_ORDER, PollutantVector, Species

EARTH_RADIUS_KM = 6371.0088

# Default synthetic-kernel parameters. The self coefficient is the
# concentration contribution (ug/m3) at the source region per metric ton
# emitted there; precursor channels are scaled down by typical secondary
# PM2.5 formation yields. All of these are configuration, not physics.
DEFAULT_DECAY_LENGTH_KM = 200.0
DEFAULT_SELF_COEFFICIENT = 0.004
DEFAULT_SPECIES_SCALE: dict[Species, float] = {
    Species.PM25: 1.0,
    Species.NOX: 0.10,
    Species.SO2: 0.25,
    Species.VOC: 0.05,
}


@dataclass(frozen=True)
class Region:
    """A receptor/source region with the demographics health costing needs."""

    region_id: str
    name: str
    lat: float
    lon: float
    population: float
    households: float
    income_ratio: float  # median household income relative to national median

    def __post_init__(self) -> None:
        if not -90.0 <= self.lat <= 90.0:
            raise ValueError(f"region {self.region_id}: latitude {self.lat} out of range")
        if not -180.0 <= self.lon <= 180.0:
            raise ValueError(f"region {self.region_id}: longitude {self.lon} out of range")
        if self.population < 0.0 or self.households < 0.0:
            raise ValueError(f"region {self.region_id}: negative population or households")
        if self.income_ratio <= 0.0:
            raise ValueError(f"region {self.region_id}: income_ratio must be positive")


def haversine_km(lat1: float, lon1: float, lat2: float, lon2: float) -> float:
    """Great-circle distance between two points in kilometers."""
    phi1, phi2 = math.radians(lat1), math.radians(lat2)
    dphi = math.radians(lat2 - lat1)
    dlam = math.radians(lon2 - lon1)
    a = math.sin(dphi / 2.0) ** 2 + math.cos(phi1) * math.cos(phi2) * math.sin(dlam / 2.0) ** 2
    return 2.0 * EARTH_RADIUS_KM * math.asin(min(1.0, math.sqrt(a)))


def load_regions(path: str | Path) -> dict[str, Region]:
    """Load the region registry, keyed and sorted by region id."""
    path = Path(path)
    regions: dict[str, Region] = {}
    expected = {"region_id", "name", "lat", "lon", "population", "households", "income_ratio"}
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        if set(reader.fieldnames or ()) != expected:
            raise SchemaError(f"expected columns {sorted(expected)}", path=str(path), line=1)
        for lineno, row in enumerate(reader, start=2):
            region_id = row["region_id"]
            if region_id in regions:
                raise SchemaError(f"duplicate region {region_id!r}", path=str(path), line=lineno)
            try:
                regions[region_id] = Region(
                    region_id=region_id,
                    name=row["name"],
                    lat=float(row["lat"]),
                    lon=float(row["lon"]),
                    population=float(row["population"]),
                    households=float(row["households"]),
                    income_ratio=float(row["income_ratio"]),
                )
            except ValueError as exc:
                raise SchemaError(str(exc), path=str(path), line=lineno) from None
    if not regions:
        raise SchemaError("region registry has no rows", path=str(path), line=1)
    return dict(sorted(regions.items()))


@dataclass(frozen=True)
class ConcentrationField:
    """Per-receptor PM2.5-equivalent concentration, split by emitted species.

    ``values[i, s]`` is the contribution at receptor i attributable to
    emitted species s, in ug/m3. The physically meaningful receptor total
    is the sum over the species axis.
    """

    receptors: tuple[str, ...]
    values: np.ndarray = field(repr=False)  # shape (receptors, species)

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", values)
        if values.shape != (len(self.receptors), len(SPECIES_ORDER)):
            raise ValueError(f"values shape {values.shape} does not match receptors/species")

    def pm25_equivalent(self) -> np.ndarray:
        """Total PM2.5-equivalent concentration per receptor (ug/m3)."""
        return self.values.sum(axis=1)

    def by_receptor(self) -> dict[str, float]:
        totals = self.pm25_equivalent()
        return {rid: float(totals[i]) for i, rid in enumerate(self.receptors)}


@dataclass(frozen=True)
class SourceReceptorMatrix:
    """Linear operator from source emissions (tons) to receptor ug/m3."""

    receptors: tuple[str, ...]
    sources: tuple[str, ...]
    coeff: np.ndarray = field(repr=False)  # shape (receptors, sources, species)

    def __post_init__(self) -> None:
        coeff = np.ascontiguousarray(np.asarray(self.coeff, dtype=float))
        object.__setattr__(self, "coeff", coeff)
        expected = (len(self.receptors), len(self.sources), len(SPECIES_ORDER))
        if coeff.shape != expected:
            raise ValueError(f"coefficient shape {coeff.shape}, expected {expected}")
        if not np.all(np.isfinite(coeff)):
            raise ValueError("coefficients contain non-finite values")
        if np.any(coeff < 0.0):
            raise ValueError("coefficients must be non-negative")

    @classmethod
    def synthesize(
        cls,
        regions: dict[str, Region],
        decay_length_km: float = DEFAULT_DECAY_LENGTH_KM,
        self_coefficient: float = DEFAULT_SELF_COEFFICIENT,
        species_scale: dict[Species, float] | None = None,
    ) -> "SourceReceptorMatrix":
        """Build a dense matrix from exponential distance decay.

        coefficient(receptor, source, s) =
            scale(s) * self_coefficient * exp(-distance / decay_length_km)

        so the strongest contribution of any source is at the source itself
        and contributions decay monotonically with distance.
        """
        if decay_length_km <= 0.0 or self_coefficient < 0.0:
            raise ValueError("decay_length_km must be positive and self_coefficient non-negative")
        scale = dict(DEFAULT_SPECIES_SCALE)
        if species_scale:
            scale.update(species_scale)
        ids = tuple(sorted(regions))
        n = len(ids)
        coeff = np.zeros((n, n, len(SPECIES_ORDER)))
        scale_row = np.array([scale[s] for s in SPECIES_ORDER])
        for i, rid in enumerate(ids):
            for j, sid in enumerate(ids):
                d = haversine_km(regions[rid].lat, regions[rid].lon, regions[sid].lat, regions[sid].lon)
                coeff[i, j, :] = scale_row * self_coefficient * math.exp(-d / decay_length_km)
        return cls(receptors=ids, sources=ids, coeff=coeff)

    @classmethod
    def identity(cls, region_ids: tuple[str, ...], coefficient: float = 1.0) -> "SourceReceptorMatrix":
        """Diagonal matrix: each region receives only its own emissions."""
        ids = tuple(region_ids)
        n = len(ids)
        coeff = np.zeros((n, n, len(SPECIES_ORDER)))
        for i in range(n):
            coeff[i, i, :] = coefficient
        return cls(receptors=ids, sources=ids, coeff=coeff)

    @classmethod
    def load(cls, path: str | Path) -> "SourceReceptorMatrix":
        """Load from CSV rows ``receptor_id,source_id,species,coefficient``.

        The receptor and source universes are the ids present in the file;
        absent combinations are zero.
        """
        path = Path(path)
        entries: dict[tuple[str, str, Species], float] = {}
        receptors: set[str] = set()
        sources: set[str] = set()
        expected = {"receptor_id", "source_id", "species", "coefficient"}
        with path.open(newline="", encoding="utf-8") as handle:
            reader = csv.DictReader(handle)
            if set(reader.fieldnames or ()) != expected:
                raise SchemaError(f"expected columns {sorted(expected)}", path=str(path), line=1)
            for lineno, row in enumerate(reader, start=2):
                try:
                    species = Species(row["species"])
                except ValueError:
                    raise SchemaError(f"unknown species {row['species']!r}", path=str(path), line=lineno) from None
                try:
                    value = float(row["coefficient"])
                except ValueError:
                    raise SchemaError(f"bad coefficient {row['coefficient']!r}", path=str(path), line=lineno) from None
                if not math.isfinite(value) or value < 0.0:
                    raise SchemaError(f"coefficient out of range: {value!r}", path=str(path), line=lineno)
                key = (row["receptor_id"], row["source_id"], species)
                if key in entries:
                    raise SchemaError(
                        f"duplicate entry for {key[0]},{key[1]},{species.value}", path=str(path), line=lineno
                    )
                entries[key] = value
                receptors.add(row["receptor_id"])
                sources.add(row["source_id"])
        if not entries:
            raise SchemaError("matrix file has no rows", path=str(path), line=1)
        receptor_ids = tuple(sorted(receptors))
        source_ids = tuple(sorted(sources))
        r_index = {rid: i for i, rid in enumerate(receptor_ids)}
        s_index = {sid: j for j, sid in enumerate(source_ids)}
        m_index = {s: k for k, s in enumerate(SPECIES_ORDER)}
        coeff = np.zeros((len(receptor_ids), len(source_ids), len(SPECIES_ORDER)))
        for (rid, sid, species), value in entries.items():
            coeff[r_index[rid], s_index[sid], m_index[species]] = value
        return cls(receptors=receptor_ids, sources=source_ids, coeff=coeff)

    def save(self, path: str | Path) -> None:
        """Write one CSV row per nonzero coefficient, deterministically ordered."""
        with Path(path).open("w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(["receptor_id", "source_id", "species", "coefficient"])
            for i, rid in enumerate(self.receptors):
                for j, sid in enumerate(self.sources):
                    for k, species in enumerate(SPECIES_ORDER):
                        value = self.coeff[i, j, k]
                        if value != 0.0:
                            writer.writerow([rid, sid, species.value, repr(float(value))])

    def apply(self, emissions: dict[str, PollutantVector]) -> ConcentrationField:
        """Disperse per-source annual emissions to receptor concentrations.

        Emissions must be non-negative, and every key must be a known
        source region; sources without an entry emit nothing.
        """
        unknown = sorted(set(emissions) - set(self.sources))
        if unknown:
            raise ValueError(f"unknown source region(s): {', '.join(unknown)}")
        matrix = np.zeros((len(self.sources), len(SPECIES_ORDER)))
        for j, sid in enumerate(self.sources):
            vector = emissions.get(sid)
            if vector is None:
                continue
            vector.require_non_negative(f"emissions at {sid}")
            matrix[j, :] = [vector.get(s) for s in SPECIES_ORDER]
        values = kernels.sr_apply(self.coeff, np.ascontiguousarray(matrix))
        return ConcentrationField(receptors=self.receptors, values=values)
