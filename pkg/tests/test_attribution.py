"""Scope attribution identities and guards."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from airtoll.attribution import (
    ComponentRecord,
    PlantRecord,
    TaskProfile,
    average_emission_rate,
    fleet_emissions,
    grid_share_fraction,
    marginal_emission_rate,
    scope1,
    scope2,
    scope3,
    training_energy_estimate,
)
from airtoll.pollutants import SPECIES_ORDER, PollutantVector

SITE = PollutantVector(pm25=1.2, nox=5.0, so2=3.0, voc=0.4)


def test_scope1_full_window_equals_power_share():
    task = TaskProfile(power_fraction=0.25, duration_hours=8760.0)
    result = scope1(SITE, task)
    for species in SPECIES_ORDER:
        assert result.get(species) == pytest.approx(0.25 * SITE.get(species), rel=1e-12)


def test_scope1_linear_in_power_fraction():
    half = scope1(SITE, TaskProfile(power_fraction=0.2, duration_hours=1000.0))
    full = scope1(SITE, TaskProfile(power_fraction=0.4, duration_hours=1000.0))
    for species in SPECIES_ORDER:
        assert full.get(species) == pytest.approx(2.0 * half.get(species), rel=1e-12)


def test_scope1_rejects_overlong_task_without_flag():
    task = TaskProfile(power_fraction=0.5, duration_hours=9000.0)
    with pytest.raises(ValueError, match="allow_longer"):
        scope1(SITE, task)
    # with the flag the proration exceeds one window proportionally
    result = scope1(SITE, task, allow_longer=True)
    assert result.pm25 == pytest.approx(0.5 * 9000.0 / 8760.0 * SITE.pm25, rel=1e-12)


def test_task_profile_domain():
    with pytest.raises(ValueError):
        TaskProfile(power_fraction=0.0, duration_hours=1.0)
    with pytest.raises(ValueError):
        TaskProfile(power_fraction=1.1, duration_hours=1.0)
    with pytest.raises(ValueError):
        TaskProfile(power_fraction=0.5, duration_hours=0.0)
    with pytest.raises(ValueError):
        TaskProfile(power_fraction=0.5, duration_hours=1.0, energy_mwh=-1.0)


def test_scope2_additive_in_energy():
    rate = PollutantVector(pm25=2.0e-5, nox=3.0e-4)
    combined = scope2(1500.0, rate)
    split = scope2(600.0, rate) + scope2(900.0, rate)
    for species in SPECIES_ORDER:
        assert combined.get(species) == pytest.approx(split.get(species), rel=1e-12, abs=1e-300)


def test_average_rate_weights_by_generation():
    plants = [
        PlantRecord("coal", 1000.0, PollutantVector(so2=0.004)),
        PlantRecord("gas", 3000.0, PollutantVector(so2=0.0004)),
    ]
    rate = average_emission_rate(plants)
    assert rate.so2 == pytest.approx((0.004 * 1000 + 0.0004 * 3000) / 4000, rel=1e-12)


def test_average_rate_consistency_with_grid_share():
    # scope 2 under the fleet-average rate must equal the grid share of
    # total fleet emissions when the fleet covers the whole grid
    plants = [
        PlantRecord("a", 1250.0, PollutantVector(pm25=1.1e-5, nox=2.2e-4, so2=3.1e-4)),
        PlantRecord("b", 2750.0, PollutantVector(pm25=0.4e-5, nox=4.0e-4, so2=0.9e-4)),
        PlantRecord("c", 610.0, PollutantVector(pm25=2.0e-5, nox=1.5e-4, so2=5.5e-4, voc=1e-5)),
    ]
    total_generation = sum(p.generation_mwh for p in plants)
    dc_energy = 777.0
    via_rate = scope2(dc_energy, average_emission_rate(plants))
    via_share = fleet_emissions(plants).scale(grid_share_fraction(dc_energy, total_generation))
    for species in SPECIES_ORDER:
        assert via_rate.get(species) == pytest.approx(via_share.get(species), rel=1e-12, abs=1e-300)


def test_marginal_rate_lookup():
    plants = [PlantRecord("a", 10.0, PollutantVector(nox=0.001))]
    assert marginal_emission_rate(plants, "a").nox == 0.001
    with pytest.raises(ValueError, match="no plant"):
        marginal_emission_rate(plants, "zzz")


def test_grid_share_domain():
    assert grid_share_fraction(44.0, 1000.0) == pytest.approx(0.044)
    with pytest.raises(ValueError):
        grid_share_fraction(-1.0, 100.0)
    with pytest.raises(ValueError):
        grid_share_fraction(101.0, 100.0)
    with pytest.raises(ValueError):
        grid_share_fraction(1.0, 0.0)


def test_training_energy_estimate_guards():
    assert training_energy_estimate(1.0e6, 500.0, 1.2) == pytest.approx(600.0)
    with pytest.raises(ValueError):
        training_energy_estimate(0.0, 700.0, 1.1)
    with pytest.raises(ValueError):
        training_energy_estimate(1.0, 700.0, 0.9)


def test_scope3_groups_by_location():
    components = [
        ComponentRecord("gpu0", "eastvale", PollutantVector(pm25=1.0), 50000.0),
        ComponentRecord("gpu1", "eastvale", PollutantVector(pm25=3.0), 50000.0),
        ComponentRecord("board", "graylock", PollutantVector(nox=2.0), 25000.0),
    ]
    grouped = scope3(components, duration_hours=5000.0)
    assert sorted(grouped) == ["eastvale", "graylock"]
    assert grouped["eastvale"].pm25 == pytest.approx(4.0 * 5000.0 / 50000.0, rel=1e-12)
    assert grouped["graylock"].nox == pytest.approx(2.0 * 5000.0 / 25000.0, rel=1e-12)


def test_scope3_rejects_duration_beyond_lifespan():
    components = [ComponentRecord("gpu", "eastvale", PollutantVector(pm25=1.0), 100.0)]
    with pytest.raises(ValueError, match="allow_longer"):
        scope3(components, duration_hours=101.0)
    grouped = scope3(components, duration_hours=101.0, allow_longer=True)
    assert grouped["eastvale"].pm25 == pytest.approx(1.01, rel=1e-12)


@given(
    x=st.floats(min_value=1e-6, max_value=1.0),
    hours=st.floats(min_value=0.1, max_value=8760.0),
)
def test_scope1_never_negative(x, hours):
    result = scope1(SITE, TaskProfile(power_fraction=x, duration_hours=hours))
    assert all(result.get(s) >= 0.0 for s in SPECIES_ORDER)
