"""Global load balancing across data-center sites.

Demand in each hourly slot must be placed across sites, where site i may
carry at most slackness * capacity_i per slot. Because the per-slot
problems are independent and the objective is linear, filling sites from
cheapest to dearest within each slot is exactly optimal (the fractional
knapsack argument); an LP solver is kept alongside as an independent
oracle for verification, never as the production path.

Objectives are built from per-MWh prices: electricity only (the baseline
practice), electricity plus a carbon price times carbon intensity, or
electricity plus the health price (health-informed balancing). An infinite
carbon price is honored lexicographically: minimize carbon first, then the
finite part of the objective among carbon-minimal orderings.
"""

from __future__ import annotations

import csv
import dataclasses
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from airtoll import kernels
from airtoll.errors import InfeasibleError, SchemaError
from airtoll.signals import SignalKind, SignalSeries

HOURS_PER_YEAR = 8760.0

# Slot sums may miss demand by accumulated rounding; anything beyond this
# relative tolerance is treated as real infeasibility.
FEASIBILITY_RTOL = 1.0e-9


@dataclass(frozen=True)
class SiteRecord:
    """One data-center site and its annual-average signal levels."""

    site_id: str
    region_id: str
    annual_energy_mwh: float
    electricity_price_usd_mwh: float
    health_price_usd_mwh: float
    carbon_ton_mwh: float

    def __post_init__(self) -> None:
        if self.annual_energy_mwh <= 0.0:
            raise ValueError(f"site {self.site_id}: annual_energy_mwh must be positive")
        for name in ("electricity_price_usd_mwh", "health_price_usd_mwh", "carbon_ton_mwh"):
            value = getattr(self, name)
            if value < 0.0 or not math.isfinite(value):
                raise ValueError(f"site {self.site_id}: {name} must be finite and non-negative")


def load_sites(path: str | Path) -> list[SiteRecord]:
    """Load the site registry, sorted by site id."""
    path = Path(path)
    expected = {
        "site_id",
        "region_id",
        "annual_energy_mwh",
        "electricity_price_usd_mwh",
        "health_price_usd_mwh",
        "carbon_ton_mwh",
    }
    sites: dict[str, SiteRecord] = {}
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        if set(reader.fieldnames or ()) != expected:
            raise SchemaError(f"expected columns {sorted(expected)}", path=str(path), line=1)
        for lineno, row in enumerate(reader, start=2):
            site_id = row["site_id"]
            if site_id in sites:
                raise SchemaError(f"duplicate site {site_id!r}", path=str(path), line=lineno)
            try:
                sites[site_id] = SiteRecord(
                    site_id=site_id,
                    region_id=row["region_id"],
                    annual_energy_mwh=float(row["annual_energy_mwh"]),
                    electricity_price_usd_mwh=float(row["electricity_price_usd_mwh"]),
                    health_price_usd_mwh=float(row["health_price_usd_mwh"]),
                    carbon_ton_mwh=float(row["carbon_ton_mwh"]),
                )
            except ValueError as exc:
                raise SchemaError(str(exc), path=str(path), line=lineno) from None
    if not sites:
        raise SchemaError("site registry has no rows", path=str(path), line=1)
    return [sites[k] for k in sorted(sites)]


@dataclass(frozen=True)
class ObjectiveWeights:
    """Which per-MWh price terms the scheduler minimizes.

    ``carbon_price`` is USD per ton; ``math.inf`` requests lexicographic
    carbon minimization (carbon strictly first, finite terms as the
    tie-break). None leaves carbon out entirely.
    """

    include_electricity: bool = True
    include_health: bool = False
    carbon_price: float | None = None

    def __post_init__(self) -> None:
        if self.carbon_price is not None:
            if math.isnan(self.carbon_price) or self.carbon_price < 0.0:
                raise ValueError(f"carbon_price must be non-negative or inf, got {self.carbon_price}")
        if not (self.include_electricity or self.include_health or self.carbon_price is not None):
            raise ValueError("objective has no terms")

    @classmethod
    def baseline(cls) -> "ObjectiveWeights":
        """Electricity cost only, today's common practice."""
        return cls(include_electricity=True)

    @classmethod
    def carbon_aware(cls, price: float) -> "ObjectiveWeights":
        return cls(include_electricity=True, carbon_price=price)

    @classmethod
    def health_informed(cls) -> "ObjectiveWeights":
        return cls(include_electricity=True, include_health=True)

    @property
    def lexicographic_carbon(self) -> bool:
        return self.carbon_price is not None and math.isinf(self.carbon_price)

    def finite_key(self, instance: "GlbInstance") -> np.ndarray:
        """Per-(slot, site) price excluding any infinite carbon term."""
        key = np.zeros_like(instance.electricity_price)
        if self.include_electricity:
            key = key + instance.electricity_price
        if self.include_health:
            key = key + instance.health_price
        if self.carbon_price is not None and math.isfinite(self.carbon_price):
            key = key + self.carbon_price * instance.carbon_rate
        return key


@dataclass(frozen=True)
class GlbInstance:
    """A scheduling instance: capacities, demand, and per-slot signals.

    ``capacity`` is each site's nominal per-slot load (annual energy spread
    over the year); slackness scales it into the per-slot cap. Signal
    arrays have shape (slots, sites) and follow site order.
    """

    site_ids: tuple[str, ...]
    capacity: np.ndarray = field(repr=False)  # (N,) MWh per slot
    demand: np.ndarray = field(repr=False)  # (T,) MWh
    slackness: float
    electricity_price: np.ndarray = field(repr=False)  # (T, N) USD/MWh
    health_price: np.ndarray = field(repr=False)  # (T, N) USD/MWh
    carbon_rate: np.ndarray = field(repr=False)  # (T, N) ton/MWh

    def __post_init__(self) -> None:
        n = len(self.site_ids)
        capacity = np.ascontiguousarray(np.asarray(self.capacity, dtype=float))
        demand = np.ascontiguousarray(np.asarray(self.demand, dtype=float))
        object.__setattr__(self, "capacity", capacity)
        object.__setattr__(self, "demand", demand)
        if n == 0:
            raise ValueError("instance has no sites")
        if len(set(self.site_ids)) != n:
            raise ValueError("duplicate site ids")
        if capacity.shape != (n,) or np.any(capacity < 0.0) or not np.all(np.isfinite(capacity)):
            raise ValueError("capacity must be a non-negative (sites,) vector")
        if demand.ndim != 1 or demand.size == 0 or np.any(demand < 0.0) or not np.all(np.isfinite(demand)):
            raise ValueError("demand must be a non-negative (slots,) vector")
        if not self.slackness >= 1.0:
            raise ValueError(f"slackness must be at least 1, got {self.slackness}")
        t = demand.size
        for name in ("electricity_price", "health_price", "carbon_rate"):
            arr = np.ascontiguousarray(np.asarray(getattr(self, name), dtype=float))
            object.__setattr__(self, name, arr)
            if arr.shape != (t, n):
                raise ValueError(f"{name} shape {arr.shape}, expected {(t, n)}")
            if np.any(arr < 0.0) or not np.all(np.isfinite(arr)):
                raise ValueError(f"{name} must be finite and non-negative")

    @property
    def slots(self) -> int:
        return self.demand.size

    def with_slackness(self, slackness: float) -> "GlbInstance":
        return dataclasses.replace(self, slackness=slackness)

    @classmethod
    def from_sites(
        cls,
        sites: list[SiteRecord],
        slots: int,
        slackness: float,
        hours_per_year: float = HOURS_PER_YEAR,
    ) -> "GlbInstance":
        """Constant-signal instance from annual-average site records.

        Per-slot capacity is annual energy over the year, demand is the sum
        of capacities (the status quo where every site runs its own load).
        """
        if slots <= 0:
            raise ValueError(f"slots must be positive, got {slots}")
        ordered = sorted(sites, key=lambda s: s.site_id)
        capacity = np.array([s.annual_energy_mwh / hours_per_year for s in ordered])
        demand = np.full(slots, capacity.sum())
        pe = np.tile([s.electricity_price_usd_mwh for s in ordered], (slots, 1))
        ph = np.tile([s.health_price_usd_mwh for s in ordered], (slots, 1))
        rc = np.tile([s.carbon_ton_mwh for s in ordered], (slots, 1))
        return cls(
            site_ids=tuple(s.site_id for s in ordered),
            capacity=capacity,
            demand=demand,
            slackness=slackness,
            electricity_price=pe,
            health_price=ph,
            carbon_rate=rc,
        )

    @classmethod
    def from_sites_and_signals(
        cls,
        sites: list[SiteRecord],
        series: dict[tuple[str, SignalKind], SignalSeries],
        slots: int,
        slackness: float,
        hours_per_year: float = HOURS_PER_YEAR,
    ) -> "GlbInstance":
        """Instance with hourly series where available.

        A site's signal comes from the series for (its region, kind) when
        one is present and long enough; otherwise the constant level from
        the site record fills in. Series must already be hourly.
        """
        base = cls.from_sites(sites, slots, slackness, hours_per_year)
        columns = {
            SignalKind.ELECTRICITY_PRICE: np.array(base.electricity_price),
            SignalKind.HEALTH_PRICE: np.array(base.health_price),
            SignalKind.CARBON_INTENSITY: np.array(base.carbon_rate),
        }
        ordered = sorted(sites, key=lambda s: s.site_id)
        for j, site in enumerate(ordered):
            for kind, target in columns.items():
                s = series.get((site.region_id, kind))
                if s is None:
                    continue
                if len(s) < slots:
                    raise ValueError(
                        f"series ({site.region_id}, {kind.value}) has {len(s)} samples, "
                        f"need {slots}"
                    )
                target[:, j] = s.values[:slots]
        return dataclasses.replace(
            base,
            electricity_price=columns[SignalKind.ELECTRICITY_PRICE],
            health_price=columns[SignalKind.HEALTH_PRICE],
            carbon_rate=columns[SignalKind.CARBON_INTENSITY],
        )


@dataclass(frozen=True)
class GlbAllocation:
    """Per-slot, per-site allocation in MWh."""

    site_ids: tuple[str, ...]
    w: np.ndarray = field(repr=False)  # (T, N)

    def __post_init__(self) -> None:
        w = np.asarray(self.w, dtype=float)
        object.__setattr__(self, "w", w)
        if w.ndim != 2 or w.shape[1] != len(self.site_ids):
            raise ValueError(f"allocation shape {w.shape} does not match {len(self.site_ids)} sites")


@dataclass(frozen=True)
class AllocationCosts:
    """Totals of an allocation under the instance's signals."""

    energy_usd: float
    health_usd: float
    carbon_tons: float


def _check_feasible_demand(instance: GlbInstance) -> None:
    caps_total = instance.slackness * instance.capacity.sum()
    tolerance = FEASIBILITY_RTOL * np.maximum(1.0, instance.demand)
    bad = np.nonzero(instance.demand > caps_total + tolerance)[0]
    if bad.size:
        slot = int(bad[0])
        raise InfeasibleError(
            f"demand {instance.demand[slot]:.6f} MWh exceeds total slack capacity "
            f"{caps_total:.6f} MWh",
            slot=slot,
        )


def baseline_allocation(instance: GlbInstance) -> GlbAllocation:
    """The no-shifting status quo: every site carries its nominal share.

    Each slot's demand splits proportionally to capacity, which equals
    exactly capacity_i when demand is the sum of capacities.
    """
    total = instance.capacity.sum()
    if total <= 0.0:
        raise InfeasibleError("no capacity available", slot=0)
    _check_feasible_demand(instance)
    shares = instance.capacity / total
    w = np.outer(instance.demand, shares)
    return GlbAllocation(site_ids=instance.site_ids, w=w)


def solve_greedy(instance: GlbInstance, weights: ObjectiveWeights) -> GlbAllocation:
    """Optimal allocation by per-slot cheapest-first filling.

    Sites are ordered per slot by the objective's per-MWh price (stable,
    so ties keep site-id order) and filled to their slack caps until the
    slot's demand is met. Linearity and per-slot independence make this the
    exact LP optimum, not a heuristic.
    """
    _check_feasible_demand(instance)
    finite = weights.finite_key(instance)
    if weights.lexicographic_carbon:
        # Carbon strictly dominates; finite terms only break carbon ties.
        order = np.lexsort((finite, instance.carbon_rate), axis=1)
    else:
        order = np.argsort(finite, axis=1, kind="stable")
    order = np.ascontiguousarray(order.astype(np.int64, copy=False))
    caps = np.ascontiguousarray(instance.slackness * instance.capacity)
    w = kernels.greedy_fill(order, caps, np.ascontiguousarray(instance.demand))
    w = np.asarray(w)
    placed = w.sum(axis=1)
    residual = instance.demand - placed
    tolerance = FEASIBILITY_RTOL * np.maximum(1.0, instance.demand)
    bad = np.nonzero(residual > tolerance)[0]
    if bad.size:
        slot = int(bad[0])
        raise InfeasibleError(f"could not place {residual[slot]:.6e} MWh of demand", slot=slot)
    return GlbAllocation(site_ids=instance.site_ids, w=w)


def evaluate(instance: GlbInstance, allocation: GlbAllocation, check: bool = True) -> AllocationCosts:
    """Cost an allocation directly from the instance's signal arrays.

    Recomputed independently of any solver so that solver bugs cannot hide
    in their own bookkeeping. ``check`` verifies feasibility first.
    """
    if allocation.site_ids != instance.site_ids:
        raise ValueError("allocation and instance site ids differ")
    w = allocation.w
    if w.shape != (instance.slots, len(instance.site_ids)):
        raise ValueError(f"allocation shape {w.shape} does not match instance")
    if check:
        if np.any(w < 0.0):
            raise ValueError("allocation has negative entries")
        caps = instance.slackness * instance.capacity
        cap_tol = FEASIBILITY_RTOL * np.maximum(1.0, caps)
        if np.any(w > caps[None, :] + cap_tol[None, :]):
            raise ValueError("allocation exceeds a site's slack capacity")
        placed = w.sum(axis=1)
        tolerance = FEASIBILITY_RTOL * np.maximum(1.0, instance.demand)
        if np.any(np.abs(placed - instance.demand) > tolerance):
            raise ValueError("allocation does not meet slot demand")
    return AllocationCosts(
        energy_usd=float((instance.electricity_price * w).sum()),
        health_usd=float((instance.health_price * w).sum()),
        carbon_tons=float((instance.carbon_rate * w).sum()),
    )


def objective_value(instance: GlbInstance, allocation: GlbAllocation, weights: ObjectiveWeights) -> float:
    """Finite-part objective of an allocation under the given weights."""
    return float((weights.finite_key(instance) * allocation.w).sum())


def lp_oracle(instance: GlbInstance, weights: ObjectiveWeights, max_variables: int = 5000) -> float:
    """Independent LP optimum for verification.

    Solves the full linear program with scipy's HiGHS backend and returns
    the optimal finite-part objective. Under an infinite carbon price a
    two-stage solve minimizes carbon first, then the finite part subject to
    staying carbon-minimal. Sized for test instances, not production.
    """
    from scipy.optimize import linprog

    t, n = instance.slots, len(instance.site_ids)
    if t * n > max_variables:
        raise ValueError(f"oracle limited to {max_variables} variables, got {t * n}")
    caps = instance.slackness * instance.capacity
    bounds = [(0.0, float(caps[i])) for _ in range(t) for i in range(n)]
    a_eq = np.zeros((t, t * n))
    for slot in range(t):
        a_eq[slot, slot * n : (slot + 1) * n] = 1.0

    def solve(c: np.ndarray, a_ub: np.ndarray | None = None, b_ub: np.ndarray | None = None) -> float:
        res = linprog(
            c,
            A_ub=a_ub,
            b_ub=b_ub,
            A_eq=a_eq,
            b_eq=instance.demand,
            bounds=bounds,
            method="highs",
        )
        if res.status == 2:
            raise InfeasibleError("LP oracle found the instance infeasible")
        if not res.success:
            raise RuntimeError(f"LP oracle failed: {res.message}")
        return float(res.fun)

    finite_cost = weights.finite_key(instance).ravel()
    if not weights.lexicographic_carbon:
        return solve(finite_cost)
    carbon_cost = instance.carbon_rate.ravel()
    minimal_carbon = solve(carbon_cost)
    slack = 1.0e-9 * max(1.0, abs(minimal_carbon))
    return solve(finite_cost, a_ub=carbon_cost[None, :], b_ub=np.array([minimal_carbon + slack]))


def sweep_carbon_price(
    instance: GlbInstance, prices: list[float]
) -> list[tuple[float, AllocationCosts]]:
    """Solve the carbon-aware objective at each price, in the given order."""
    out: list[tuple[float, AllocationCosts]] = []
    for price in prices:
        allocation = solve_greedy(instance, ObjectiveWeights.carbon_aware(price))
        out.append((price, evaluate(instance, allocation)))
    return out


def sweep_slackness(
    instance: GlbInstance, weights: ObjectiveWeights, slackness_values: list[float]
) -> list[tuple[float, AllocationCosts]]:
    """Solve the same objective across slackness levels."""
    out: list[tuple[float, AllocationCosts]] = []
    for slackness in slackness_values:
        scaled = instance.with_slackness(slackness)
        allocation = solve_greedy(scaled, weights)
        out.append((slackness, evaluate(scaled, allocation)))
    return out
