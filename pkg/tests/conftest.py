"""Shared fixtures: packaged data, demo scenarios, and RNG seeding."""

import json
from pathlib import Path

import numpy as np
import pytest

from airtoll import dispersion, health, scheduler
from airtoll.pollutants import packaged_data_path


@pytest.fixture(scope="session")
def meta_sites() -> list[scheduler.SiteRecord]:
    return scheduler.load_sites(packaged_data_path("meta_sites.csv"))


@pytest.fixture(scope="session")
def sample_regions() -> dict[str, dispersion.Region]:
    return dispersion.load_regions(packaged_data_path("regions_sample.csv"))


@pytest.fixture(scope="session")
def sample_endpoints() -> list[health.EndpointParams]:
    return health.load_endpoints(packaged_data_path("endpoints_sample.csv"))


@pytest.fixture()
def rng() -> np.random.Generator:
    return np.random.default_rng(20260819)


DEMO_SCENARIO = {
    "name": "demo",
    "inputs": {
        "regions": "regions_sample.csv",
        "endpoints": "endpoints_sample.csv",
        "sites": "meta_sites.csv",
    },
    "attribution": {
        "window_hours": 8760,
        "scope1": {
            "source_region": "ashford",
            "site_annual_tons": {"pm25": 1.2, "nox": 5.0, "so2": 3.0, "voc": 0.4},
            "power_fraction": 0.1,
            "duration_hours": 8760,
        },
        "scope2": {
            "source_region": "brackenridge",
            "energy_mwh": 29710.8,
            "rate_tons_per_mwh": {
                "pm25": 2.4e-05,
                "nox": 0.00024,
                "so2": 0.00048,
                "voc": 1.2e-05,
            },
        },
        "scope3": {
            "duration_hours": 8760,
            "components": [
                {
                    "component_id": "accelerators",
                    "location": "graylock",
                    "embodied_tons": {"pm25": 0.9, "nox": 2.1, "so2": 1.5},
                    "lifespan_hours": 43800,
                },
                {
                    "component_id": "chassis",
                    "location": "caldermoor",
                    "embodied_tons": {"pm25": 0.3, "nox": 0.8, "so2": 0.5, "voc": 0.2},
                    "lifespan_hours": 61320,
                },
            ],
        },
    },
    "health": {"discount_rate": 0.02},
    "glb": {"slots": 6, "slackness": 1.5, "carbon_prices": [0, 5, 200, "inf"]},
    "output_dir": "out",
}


@pytest.fixture()
def demo_scenario(tmp_path: Path) -> Path:
    """Write the demo scenario into a temp dir and return its path."""
    path = tmp_path / "scenario.json"
    path.write_text(json.dumps(DEMO_SCENARIO, indent=2), encoding="utf-8")
    return path
