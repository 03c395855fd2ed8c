"""Attribute emissions of a compute task to scopes 1, 2, and 3.

Scope 1 covers on-site combustion (backup generators), prorated by the
task's share of site power and its share of the accounting window. Scope 2
covers purchased electricity via a grid emission rate, either the
generation-weighted average over a plant fleet or one marginal plant.
Scope 3 amortizes embodied manufacturing emissions over hardware lifetime
and keeps them grouped by manufacture location, because they disperse from
where the hardware was built, not where it runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from airtoll.pollutants import PollutantVector


@dataclass(frozen=True)
class TaskProfile:
    """A compute task: its power share, duration, and energy draw.

    ``power_fraction`` is the task's share of site power in (0, 1].
    ``energy_mwh`` is the electricity it consumes, used for scope 2.
    """

    power_fraction: float
    duration_hours: float
    energy_mwh: float = 0.0

    def __post_init__(self) -> None:
        if not 0.0 < self.power_fraction <= 1.0:
            raise ValueError(f"power_fraction must be in (0, 1], got {self.power_fraction}")
        if not self.duration_hours > 0.0:
            raise ValueError(f"duration_hours must be positive, got {self.duration_hours}")
        if self.energy_mwh < 0.0 or not math.isfinite(self.energy_mwh):
            raise ValueError(f"energy_mwh must be finite and non-negative, got {self.energy_mwh}")


@dataclass(frozen=True)
class PlantRecord:
    """One generating plant: annual generation and its emission rates."""

    plant_id: str
    generation_mwh: float
    rate: PollutantVector  # metric tons per MWh generated

    def __post_init__(self) -> None:
        if self.generation_mwh < 0.0:
            raise ValueError(f"plant {self.plant_id}: negative generation")
        self.rate.require_non_negative(f"plant {self.plant_id} rate")


@dataclass(frozen=True)
class ComponentRecord:
    """A hardware component with embodied manufacturing emissions."""

    component_id: str
    location: str  # region where the component was manufactured
    embodied: PollutantVector  # total manufacturing emissions, metric tons
    lifespan_hours: float

    def __post_init__(self) -> None:
        if not self.lifespan_hours > 0.0:
            raise ValueError(f"component {self.component_id}: lifespan_hours must be positive")
        self.embodied.require_non_negative(f"component {self.component_id} embodied")


def scope1(
    site_annual: PollutantVector,
    task: TaskProfile,
    window_hours: float = 8760.0,
    allow_longer: bool = False,
) -> PollutantVector:
    """Prorate a site's annual on-site emissions onto one task.

    The task receives its power share times its time share of the window.
    Tasks longer than the window are rejected unless ``allow_longer`` is
    set, in which case the proration simply exceeds one window's worth.
    """
    if window_hours <= 0.0:
        raise ValueError(f"window_hours must be positive, got {window_hours}")
    if task.duration_hours > window_hours and not allow_longer:
        raise ValueError(
            f"task duration {task.duration_hours} h exceeds window {window_hours} h; "
            "pass allow_longer=True to amortize across windows"
        )
    site_annual.require_non_negative("site annual emissions")
    return site_annual.scale(task.power_fraction * task.duration_hours / window_hours)


def average_emission_rate(plants: list[PlantRecord]) -> PollutantVector:
    """Generation-weighted average emission rate over a plant fleet."""
    if not plants:
        raise ValueError("plant fleet is empty")
    total_generation = sum(p.generation_mwh for p in plants)
    if total_generation <= 0.0:
        raise ValueError("plant fleet has zero total generation")
    weighted = PollutantVector()
    for plant in plants:
        weighted = weighted + plant.rate.scale(plant.generation_mwh)
    return weighted.scale(1.0 / total_generation)


def marginal_emission_rate(plants: list[PlantRecord], plant_id: str) -> PollutantVector:
    """Emission rate of the named marginal plant."""
    for plant in plants:
        if plant.plant_id == plant_id:
            return plant.rate
    raise ValueError(f"no plant with id {plant_id!r}")


def scope2(energy_mwh: float, rate: PollutantVector) -> PollutantVector:
    """Emissions from purchased electricity: energy times grid rate."""
    if energy_mwh < 0.0 or not math.isfinite(energy_mwh):
        raise ValueError(f"energy_mwh must be finite and non-negative, got {energy_mwh}")
    rate.require_non_negative("emission rate")
    return rate.scale(energy_mwh)


def fleet_emissions(plants: list[PlantRecord]) -> PollutantVector:
    """Total emissions of a plant fleet over the accounting period."""
    total = PollutantVector()
    for plant in plants:
        total = total + plant.rate.scale(plant.generation_mwh)
    return total


def grid_share_fraction(dc_energy_mwh: float, total_energy_mwh: float) -> float:
    """Share of a grid's energy consumed by the data centers in scope."""
    if total_energy_mwh <= 0.0:
        raise ValueError(f"total_energy_mwh must be positive, got {total_energy_mwh}")
    if dc_energy_mwh < 0.0:
        raise ValueError(f"dc_energy_mwh must be non-negative, got {dc_energy_mwh}")
    if dc_energy_mwh > total_energy_mwh:
        raise ValueError(
            f"data-center energy {dc_energy_mwh} exceeds grid total {total_energy_mwh}"
        )
    return dc_energy_mwh / total_energy_mwh


def training_energy_estimate(gpu_hours: float, tdp_watts: float, pue: float) -> float:
    """Estimate training energy in MWh from GPU-hours, TDP, and PUE."""
    if gpu_hours <= 0.0 or tdp_watts <= 0.0:
        raise ValueError("gpu_hours and tdp_watts must be positive")
    if pue < 1.0:
        raise ValueError(f"PUE cannot be below 1.0, got {pue}")
    return gpu_hours * tdp_watts * pue / 1.0e6


def scope3(
    components: list[ComponentRecord],
    duration_hours: float,
    allow_longer: bool = False,
) -> dict[str, PollutantVector]:
    """Amortize embodied emissions over component lifetimes.

    Each component contributes duration / lifespan of its embodied total.
    Results are grouped by manufacture location and returned sorted by
    location id so downstream output is deterministic.
    """
    if not duration_hours > 0.0:
        raise ValueError(f"duration_hours must be positive, got {duration_hours}")
    by_location: dict[str, PollutantVector] = {}
    for component in components:
        if duration_hours > component.lifespan_hours and not allow_longer:
            raise ValueError(
                f"task duration {duration_hours} h exceeds lifespan of "
                f"component {component.component_id}; pass allow_longer=True"
            )
        share = component.embodied.scale(duration_hours / component.lifespan_hours)
        current = by_location.get(component.location, PollutantVector())
        by_location[component.location] = current + share
    return dict(sorted(by_location.items()))
