"""Command-line interface: scenario-driven pipelines over the library.

Four subcommands share one JSON scenario file: ``attribute`` writes a
scoped emission report, ``health`` prices the dispersed burden, ``glb``
runs the load-balancing solvers, and ``stats`` summarizes signal archives.
Outputs are deterministic byte for byte: rows are explicitly ordered,
floats are written with shortest round-trip formatting, and files use LF
line endings and UTF-8 regardless of platform.

Exit codes: 0 success, 2 validation or schema failure, 3 infeasible
scheduling instance, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import math
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterable

import numpy as np

from airtoll import attribution, dispersion, health, scheduler, signals, stats
from airtoll.errors import InfeasibleError, SchemaError
from airtoll.pollutants import SPECIES_ORDER, PollutantVector, Species, packaged_data_path
from airtoll.signals import SignalKind

DEFAULT_CARBON_PRICES: tuple[float, ...] = (0.0, 5.0, 200.0, math.inf)
DEFAULT_SLACKNESS = 1.5
DEFAULT_GLB_SLOTS = 24

_SCOPE_NAMES = ("scope1", "scope2", "scope3")


# ---------------------------------------------------------------------------
# Scenario loading


@dataclass
class Scenario:
    """A parsed scenario file plus path resolution for its inputs."""

    path: Path
    raw: dict[str, Any]

    @classmethod
    def load(cls, path: str | Path) -> "Scenario":
        path = Path(path)
        try:
            with path.open(encoding="utf-8") as handle:
                raw = json.load(handle)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"scenario is not valid JSON: {exc}", path=str(path)) from None
        if not isinstance(raw, dict):
            raise SchemaError("scenario root must be a JSON object", path=str(path))
        return cls(path=path, raw=raw)

    @property
    def directory(self) -> Path:
        return self.path.parent

    @property
    def name(self) -> str:
        return str(self.raw.get("name", self.path.stem))

    @property
    def output_dir(self) -> Path:
        configured = str(self.raw.get("output_dir", "out"))
        out = Path(configured)
        return out if out.is_absolute() else self.directory / out

    def section(self, key: str) -> dict[str, Any]:
        value = self.raw.get(key, {})
        if not isinstance(value, dict):
            raise SchemaError(f"scenario section {key!r} must be an object", path=str(self.path))
        return value

    def input_name(self, key: str) -> str | None:
        inputs = self.section("inputs")
        value = inputs.get(key)
        if value is None:
            return None
        if not isinstance(value, str):
            raise SchemaError(f"inputs.{key} must be a path string", path=str(self.path))
        return value

    def resolve(self, name: str) -> Path:
        """Find an input file: absolute, scenario-relative, AIRTOLL_DATA_DIR, packaged."""
        candidate = Path(name)
        if candidate.is_absolute():
            if candidate.exists():
                return candidate
            raise SchemaError(f"input not found: {candidate}")
        tried: list[Path] = [self.directory / candidate]
        data_dir = os.environ.get("AIRTOLL_DATA_DIR")
        if data_dir:
            tried.append(Path(data_dir) / candidate)
        tried.append(packaged_data_path(name))
        for option in tried:
            if option.exists():
                return option
        raise SchemaError(
            f"input {name!r} not found; tried: " + ", ".join(str(t) for t in tried)
        )

    def require_input(self, key: str) -> Path:
        name = self.input_name(key)
        if name is None:
            raise SchemaError(f"scenario is missing inputs.{key}", path=str(self.path))
        return self.resolve(name)


def _species_masses(obj: Any, context: str) -> PollutantVector:
    if not isinstance(obj, dict):
        raise SchemaError(f"{context} must map species to metric tons")
    known = {s.value for s in SPECIES_ORDER}
    unknown = sorted(set(obj) - known)
    if unknown:
        raise SchemaError(f"{context}: unknown species {', '.join(unknown)}")
    try:
        vector = PollutantVector(**{k: float(v) for k, v in obj.items()})
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"{context}: {exc}") from None
    return vector.require_non_negative(context)


# ---------------------------------------------------------------------------
# Deterministic writers


def _fmt(value: Any) -> str:
    if value is None:
        return "undefined"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write_csv(path: Path, header: list[str], rows: Iterable[Iterable[Any]]) -> None:
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(cell) for cell in row])


def _write_json(path: Path, payload: Any) -> None:
    with path.open("w", encoding="utf-8") as handle:
        json.dump(payload, handle, indent=2, sort_keys=True, ensure_ascii=False)
        handle.write("\n")


# ---------------------------------------------------------------------------
# attribute


def _attribution_emissions(scenario: Scenario) -> list[tuple[str, str, PollutantVector]]:
    """Evaluate the scenario's attribution section.

    Returns (scope, source_region, vector) tuples in deterministic order.
    """
    config = scenario.section("attribution")
    if not any(key in config for key in _SCOPE_NAMES):
        raise SchemaError("attribution section defines no scopes", path=str(scenario.path))
    window_hours = float(config.get("window_hours", scheduler.HOURS_PER_YEAR))
    out: list[tuple[str, str, PollutantVector]] = []

    if "scope1" in config:
        section = config["scope1"]
        task = attribution.TaskProfile(
            power_fraction=float(section["power_fraction"]),
            duration_hours=float(section["duration_hours"]),
        )
        vector = attribution.scope1(
            _species_masses(section.get("site_annual_tons"), "scope1.site_annual_tons"),
            task,
            window_hours=window_hours,
            allow_longer=bool(section.get("allow_longer", False)),
        )
        out.append(("scope1", str(section["source_region"]), vector))

    if "scope2" in config:
        section = config["scope2"]
        rate = _species_masses(section.get("rate_tons_per_mwh"), "scope2.rate_tons_per_mwh")
        vector = attribution.scope2(float(section["energy_mwh"]), rate)
        out.append(("scope2", str(section["source_region"]), vector))

    if "scope3" in config:
        section = config["scope3"]
        components = [
            attribution.ComponentRecord(
                component_id=str(item.get("component_id", f"component{i}")),
                location=str(item["location"]),
                embodied=_species_masses(item.get("embodied_tons"), "scope3 embodied_tons"),
                lifespan_hours=float(item["lifespan_hours"]),
            )
            for i, item in enumerate(section.get("components", []))
        ]
        if not components:
            raise SchemaError("scope3 has no components", path=str(scenario.path))
        grouped = attribution.scope3(
            components,
            duration_hours=float(section["duration_hours"]),
            allow_longer=bool(section.get("allow_longer", False)),
        )
        for location, vector in grouped.items():
            out.append(("scope3", location, vector))

    regions_name = scenario.input_name("regions")
    if regions_name is not None:
        registry = dispersion.load_regions(scenario.resolve(regions_name))
        missing = sorted({region for _, region, _ in out} - set(registry))
        if missing:
            raise SchemaError(f"attribution references unknown region(s): {', '.join(missing)}")
    return out


def cmd_attribute(args: argparse.Namespace) -> int:
    scenario = Scenario.load(args.scenario)
    emissions = _attribution_emissions(scenario)
    scenario.output_dir.mkdir(parents=True, exist_ok=True)
    rows = []
    for scope, region, vector in emissions:
        for species in SPECIES_ORDER:
            rows.append((scope, region, species.value, float(vector.get(species))))
    _write_csv(scenario.output_dir / "emissions.csv", ["scope", "source_region", "species", "metric_tons"], rows)
    total = PollutantVector()
    for _, _, vector in emissions:
        total = total + vector
    print(f"wrote {scenario.output_dir / 'emissions.csv'}")
    print(
        "totals (metric tons): "
        + ", ".join(f"{s.value}={total.get(s):.6g}" for s in SPECIES_ORDER)
    )
    return 0


# ---------------------------------------------------------------------------
# health


def _load_emissions_csv(path: Path) -> list[tuple[str, str, PollutantVector]]:
    expected = {"scope", "source_region", "species", "metric_tons"}
    masses: dict[tuple[str, str], dict[str, float]] = {}
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        if set(reader.fieldnames or ()) != expected:
            raise SchemaError(f"expected columns {sorted(expected)}", path=str(path), line=1)
        for lineno, row in enumerate(reader, start=2):
            try:
                value = float(row["metric_tons"])
            except ValueError:
                raise SchemaError(f"bad metric_tons {row['metric_tons']!r}", path=str(path), line=lineno) from None
            key = (row["scope"], row["source_region"])
            bucket = masses.setdefault(key, {})
            species = row["species"]
            if species in bucket:
                raise SchemaError(f"duplicate row for {key + (species,)}", path=str(path), line=lineno)
            bucket[species] = value
    out = []
    for (scope, region), bucket in sorted(masses.items()):
        out.append((scope, region, _species_masses(bucket, f"{scope}/{region}")))
    return out


def _emissions_for_health(scenario: Scenario) -> list[tuple[str, str, PollutantVector]]:
    name = scenario.input_name("emissions")
    if name is not None:
        return _load_emissions_csv(scenario.resolve(name))
    return _attribution_emissions(scenario)


def _dispersion_matrix(
    scenario: Scenario, regions: dict[str, dispersion.Region]
) -> dispersion.SourceReceptorMatrix:
    name = scenario.input_name("sr_matrix")
    if name is not None:
        return dispersion.SourceReceptorMatrix.load(scenario.resolve(name))
    params = scenario.section("inputs").get("sr_synthesis", {})
    if not isinstance(params, dict):
        raise SchemaError("inputs.sr_synthesis must be an object", path=str(scenario.path))
    scale_cfg = params.get("species_scale", {})
    if not isinstance(scale_cfg, dict):
        raise SchemaError("sr_synthesis.species_scale must be an object", path=str(scenario.path))
    try:
        species_scale = {Species(key): float(value) for key, value in scale_cfg.items()}
    except ValueError as exc:
        raise SchemaError(f"sr_synthesis.species_scale: {exc}", path=str(scenario.path)) from None
    return dispersion.SourceReceptorMatrix.synthesize(
        regions,
        decay_length_km=float(params.get("decay_length_km", dispersion.DEFAULT_DECAY_LENGTH_KM)),
        self_coefficient=float(params.get("self_coefficient", dispersion.DEFAULT_SELF_COEFFICIENT)),
        species_scale=species_scale,
    )


def cmd_health(args: argparse.Namespace) -> int:
    scenario = Scenario.load(args.scenario)
    registry = dispersion.load_regions(scenario.require_input("regions"))
    endpoints = health.load_endpoints(scenario.require_input("endpoints"))
    emissions = _emissions_for_health(scenario)
    matrix = _dispersion_matrix(scenario, registry)

    discount = float(scenario.section("health").get("discount_rate", health.DEFAULT_DISCOUNT_RATE))
    if args.discount_rate is not None:
        discount = args.discount_rate

    by_region: dict[str, PollutantVector] = {}
    total = PollutantVector()
    for _, region, vector in emissions:
        by_region[region] = by_region.get(region, PollutantVector()) + vector
        total = total + vector

    field = matrix.apply(by_region)
    counts = health.incidences(field, registry, endpoints)
    report = health.monetize(counts, endpoints, discount_rate=discount)
    household_costs = health.per_household(report, registry)
    trips = health.car_trip_equivalent(total)

    scenario.output_dir.mkdir(parents=True, exist_ok=True)
    records = []
    for i, region_id in enumerate(report.receptors):
        records.append(
            {
                "region_id": region_id,
                "cost_low": float(report.cost_low[i]),
                "cost_mid": float(report.cost_mid[i]),
                "cost_high": float(report.cost_high[i]),
                "per_household_mid": household_costs[region_id],
            }
        )
    payload = {
        "name": scenario.name,
        "discount_rate": discount,
        "regions": sorted(records, key=lambda r: r["region_id"]),
        "national": {
            "cost_low": report.national_low,
            "cost_mid": report.national_mid,
            "cost_high": report.national_high,
        },
    }
    _write_json(scenario.output_dir / "health_report.json", payload)

    household_rows = []
    for region_id in sorted(household_costs):
        index = report.receptors.index(region_id)
        household_rows.append(
            (
                region_id,
                float(registry[region_id].households),
                float(report.cost_mid[index]),
                household_costs[region_id],
            )
        )
    _write_csv(
        scenario.output_dir / "per_household.csv",
        ["region_id", "households", "cost_mid_usd", "usd_per_household"],
        household_rows,
    )

    trip_rows = [
        ("pm25", float(total.pm25), health.ROUND_TRIP_PM25_GRAMS, trips[Species.PM25]),
        ("nox", float(total.nox), health.ROUND_TRIP_NOX_GRAMS, trips[Species.NOX]),
    ]
    _write_csv(
        scenario.output_dir / "car_trips.csv",
        ["species", "emitted_metric_tons", "grams_per_round_trip", "round_trips"],
        trip_rows,
    )
    print(f"wrote {scenario.output_dir / 'health_report.json'}")
    print(
        f"national mid cost: ${report.national_mid:,.2f} "
        f"(low ${report.national_low:,.2f}, high ${report.national_high:,.2f})"
    )
    return 0


# ---------------------------------------------------------------------------
# glb


def _parse_price_list(raw: Iterable[Any], context: str) -> list[float]:
    prices = []
    for item in raw:
        try:
            price = float(item)
        except (TypeError, ValueError):
            raise SchemaError(f"{context}: bad carbon price {item!r}") from None
        if math.isnan(price) or price < 0.0:
            raise SchemaError(f"{context}: carbon price must be non-negative, got {price}")
        prices.append(price)
    if not prices:
        raise SchemaError(f"{context}: empty carbon price list")
    return prices


def _price_tag(price: float) -> str:
    if math.isinf(price):
        return "inf"
    return f"{price:g}"


def _build_instance(scenario: Scenario, slackness: float, slots: int) -> scheduler.GlbInstance:
    sites = scheduler.load_sites(scenario.require_input("sites"))
    config = scenario.section("glb")
    instance = _signals_or_constant_instance(scenario, sites, config, slackness, slots)
    demand_override = config.get("demand_mwh_per_slot")
    if demand_override is not None:
        demand = float(demand_override)
        if demand < 0.0 or not math.isfinite(demand):
            raise SchemaError("glb.demand_mwh_per_slot must be finite and non-negative")
        instance = dataclasses.replace(instance, demand=np.full(instance.slots, demand))
    return instance


def _signals_or_constant_instance(
    scenario: Scenario,
    sites: list[scheduler.SiteRecord],
    config: dict[str, Any],
    slackness: float,
    slots: int,
) -> scheduler.GlbInstance:
    if bool(config.get("use_signals", False)):
        inputs = scenario.section("inputs")
        names = inputs.get("signals", [])
        if not isinstance(names, list) or not names:
            raise SchemaError("glb.use_signals requires inputs.signals", path=str(scenario.path))
        merged: dict[tuple[str, SignalKind], signals.SignalSeries] = {}
        for name in names:
            loaded = signals.load_signal_file(scenario.resolve(str(name)))
            for key, series in loaded.items():
                if key in merged:
                    raise SchemaError(f"duplicate series {key} across signal files")
                merged[key] = series
        hourly = {key: signals.hourly_mean(series) for key, series in merged.items()}
        return scheduler.GlbInstance.from_sites_and_signals(sites, hourly, slots, slackness)
    return scheduler.GlbInstance.from_sites(sites, slots, slackness)


def _allocation_rows(allocation: scheduler.GlbAllocation) -> list[tuple[int, str, float]]:
    rows = []
    for slot in range(allocation.w.shape[0]):
        for j, site_id in enumerate(allocation.site_ids):
            rows.append((slot, site_id, float(allocation.w[slot, j])))
    return rows


def cmd_glb(args: argparse.Namespace) -> int:
    scenario = Scenario.load(args.scenario)
    config = scenario.section("glb")
    slackness = float(config.get("slackness", DEFAULT_SLACKNESS))
    if args.slackness is not None:
        slackness = args.slackness
    slots = int(config.get("slots", DEFAULT_GLB_SLOTS))
    prices = _parse_price_list(config.get("carbon_prices", DEFAULT_CARBON_PRICES), "glb.carbon_prices")
    if args.carbon_price is not None:
        prices = args.carbon_price

    instance = _build_instance(scenario, slackness, slots)
    base_alloc = scheduler.baseline_allocation(instance)
    base = scheduler.evaluate(instance, base_alloc)

    solved: list[tuple[str, scheduler.GlbAllocation, scheduler.AllocationCosts]] = [
        ("baseline", base_alloc, base)
    ]
    for price in prices:
        allocation = scheduler.solve_greedy(instance, scheduler.ObjectiveWeights.carbon_aware(price))
        solved.append((f"carbon_aware_p{_price_tag(price)}", allocation, scheduler.evaluate(instance, allocation)))
    hi_alloc = scheduler.solve_greedy(instance, scheduler.ObjectiveWeights.health_informed())
    solved.append(("health_informed", hi_alloc, scheduler.evaluate(instance, hi_alloc)))

    metrics = (
        ("energy_usd", lambda c: c.energy_usd),
        ("health_usd", lambda c: c.health_usd),
        ("carbon_tons", lambda c: c.carbon_tons),
    )
    rows = []
    for solver, _, costs in solved:
        for metric, pick in metrics:
            baseline_value = pick(base)
            value = pick(costs)
            if baseline_value > 0.0:
                percent: float | None = (value - baseline_value) / baseline_value * 100.0
            else:
                percent = None
            rows.append((f"{solver}:{metric}", baseline_value, value, percent))

    scenario.output_dir.mkdir(parents=True, exist_ok=True)
    _write_csv(
        scenario.output_dir / "glb_results.csv",
        ["metric", "baseline", "value", "percent_change"],
        rows,
    )
    for solver, allocation, _ in solved:
        _write_csv(
            scenario.output_dir / f"allocation_{solver}.csv",
            ["slot", "site_id", "mwh"],
            _allocation_rows(allocation),
        )
    print(f"wrote {scenario.output_dir / 'glb_results.csv'} and {len(solved)} allocation files")
    for solver, _, costs in solved:
        print(
            f"{solver}: energy ${costs.energy_usd:,.2f}, health ${costs.health_usd:,.2f}, "
            f"carbon {costs.carbon_tons:,.3f} t"
        )
    return 0


# ---------------------------------------------------------------------------
# stats


def _load_all_signals(scenario: Scenario) -> dict[tuple[str, SignalKind], signals.SignalSeries]:
    inputs = scenario.section("inputs")
    names = inputs.get("signals")
    if not isinstance(names, list) or not names:
        raise SchemaError("stats requires inputs.signals (a list of files)", path=str(scenario.path))
    merged: dict[tuple[str, SignalKind], signals.SignalSeries] = {}
    for name in names:
        for key, series in signals.load_signal_file(scenario.resolve(str(name))).items():
            if key in merged:
                raise SchemaError(f"duplicate series {key} across signal files")
            merged[key] = series
    return merged


def cmd_stats(args: argparse.Namespace) -> int:
    scenario = Scenario.load(args.scenario)
    archive = _load_all_signals(scenario)
    if bool(scenario.section("stats").get("hourly_mean", False)):
        archive = {key: signals.hourly_mean(series) for key, series in archive.items()}

    summary_rows = []
    for (region, kind), series in sorted(archive.items(), key=lambda kv: (kv[0][0], kv[0][1].value)):
        s = stats.summary(series.values)
        summary_rows.append(
            (region, kind.value, s.mean, s.std, s.iqr, s.normalized_std, s.normalized_iqr)
        )

    # Table of per-region health/carbon comparisons, one row per region
    # that carries both series.
    table_rows = []
    regions = sorted({region for region, _ in archive})
    for region in regions:
        health_series = archive.get((region, SignalKind.HEALTH_PRICE))
        carbon_series = archive.get((region, SignalKind.CARBON_INTENSITY))
        if health_series is None or carbon_series is None:
            continue
        joined = _join_series(health_series, carbon_series)
        correlation = stats.pearson(joined[0], joined[1]) if len(joined[0]) >= 2 else None
        hs = stats.summary(health_series.values)
        cs = stats.summary(carbon_series.values)
        table_rows.append(
            (
                region,
                correlation,
                hs.normalized_iqr,
                cs.normalized_iqr,
                _ratio(hs.normalized_iqr, cs.normalized_iqr),
                hs.normalized_std,
                cs.normalized_std,
                _ratio(hs.normalized_std, cs.normalized_std),
            )
        )

    by_kind_means: dict[SignalKind, list[float]] = {}
    for (region, kind), series in sorted(archive.items(), key=lambda kv: (kv[0][0], kv[0][1].value)):
        by_kind_means.setdefault(kind, []).append(float(series.values.mean()))

    scenario.output_dir.mkdir(parents=True, exist_ok=True)
    _write_csv(
        scenario.output_dir / "summary_stats.csv",
        ["region_id", "kind", "mean", "std", "iqr", "normalized_std", "normalized_iqr"],
        summary_rows,
    )
    _write_csv(
        scenario.output_dir / "region_stats.csv",
        [
            "region_id",
            "pearson_health_carbon",
            "health_iqr_norm",
            "carbon_iqr_norm",
            "iqr_ratio",
            "health_std_norm",
            "carbon_std_norm",
            "std_ratio",
        ],
        table_rows,
    )
    pair_rows = []
    for kind_x, kind_y in (
        (SignalKind.HEALTH_PRICE, SignalKind.CARBON_INTENSITY),
        (SignalKind.ELECTRICITY_PRICE, SignalKind.HEALTH_PRICE),
        (SignalKind.ELECTRICITY_PRICE, SignalKind.CARBON_INTENSITY),
    ):
        xs, ys = _paired_region_means(archive, kind_x, kind_y)
        correlation = stats.pearson(xs, ys) if len(xs) >= 2 else None
        pair_rows.append((kind_x.value, kind_y.value, correlation, len(xs)))
    _write_csv(
        scenario.output_dir / "spatial_correlation.csv",
        ["kind_x", "kind_y", "pearson", "regions"],
        pair_rows,
    )
    for kind in sorted(by_kind_means, key=lambda k: k.value):
        pairs = stats.cdf(by_kind_means[kind])
        _write_csv(
            scenario.output_dir / f"cdf_{kind.value}.csv",
            ["value", "cumulative_fraction"],
            pairs,
        )
    print(f"wrote statistics for {len(archive)} series to {scenario.output_dir}")
    return 0


def _join_series(
    a: signals.SignalSeries, b: signals.SignalSeries
) -> tuple[list[float], list[float]]:
    """Values of two series at their common timestamps."""
    index_b = {ts: i for i, ts in enumerate(b.timestamps)}
    xs: list[float] = []
    ys: list[float] = []
    for i, ts in enumerate(a.timestamps):
        j = index_b.get(ts)
        if j is not None:
            xs.append(float(a.values[i]))
            ys.append(float(b.values[j]))
    return xs, ys


def _paired_region_means(
    archive: dict[tuple[str, SignalKind], signals.SignalSeries],
    kind_x: SignalKind,
    kind_y: SignalKind,
) -> tuple[list[float], list[float]]:
    xs: list[float] = []
    ys: list[float] = []
    for region in sorted({region for region, _ in archive}):
        sx = archive.get((region, kind_x))
        sy = archive.get((region, kind_y))
        if sx is None or sy is None:
            continue
        xs.append(float(sx.values.mean()))
        ys.append(float(sy.values.mean()))
    return xs, ys


def _ratio(numerator: float | None, denominator: float | None) -> float | None:
    if numerator is None or denominator is None or denominator == 0.0:
        return None
    return numerator / denominator


# ---------------------------------------------------------------------------
# entry point


def _parse_carbon_prices(raw: str) -> list[float]:
    return _parse_price_list(raw.split(","), "--carbon-price")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="airtoll",
        description="Emission attribution, dispersion, health costing, and load balancing.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    attribute = sub.add_parser("attribute", help="write the scoped emission report")
    attribute.add_argument("--scenario", required=True, help="scenario JSON file")
    attribute.set_defaults(func=cmd_attribute)

    health_cmd = sub.add_parser("health", help="disperse emissions and price the health burden")
    health_cmd.add_argument("--scenario", required=True, help="scenario JSON file")
    health_cmd.add_argument(
        "--discount-rate",
        dest="discount_rate",
        type=float,
        default=None,
        help="override the mortality discount rate",
    )
    health_cmd.set_defaults(func=cmd_health)

    glb = sub.add_parser("glb", help="run the load-balancing solvers")
    glb.add_argument("--scenario", required=True, help="scenario JSON file")
    glb.add_argument(
        "--lambda",
        dest="slackness",
        type=float,
        default=None,
        help="override the capacity slackness factor (>= 1)",
    )
    glb.add_argument(
        "--carbon-price",
        dest="carbon_price",
        type=_parse_carbon_prices,
        default=None,
        help="override the carbon price sweep, comma separated (inf allowed)",
    )
    glb.set_defaults(func=cmd_glb)

    stats_cmd = sub.add_parser("stats", help="summarize signal archives")
    stats_cmd.add_argument("--scenario", required=True, help="scenario JSON file")
    stats_cmd.set_defaults(func=cmd_stats)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return int(args.func(args))
    except InfeasibleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (SchemaError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
