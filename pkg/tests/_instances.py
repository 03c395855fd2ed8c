"""Random scheduling instances shared by unit and acceptance tests."""

import numpy as np

from airtoll.scheduler import GlbInstance, ObjectiveWeights


def random_instance(
    rng: np.random.Generator,
    n_min: int = 2,
    n_max: int = 6,
    t_min: int = 1,
    t_max: int = 24,
) -> GlbInstance:
    n = int(rng.integers(n_min, n_max + 1))
    t = int(rng.integers(t_min, t_max + 1))
    capacity = rng.uniform(0.2, 3.0, n)
    slackness = float(rng.uniform(1.0, 2.0))
    headroom = slackness * capacity.sum()
    demand = rng.uniform(0.0, headroom, t)
    if t > 1:
        # keep one slot right at the boundary to exercise saturation
        demand[int(rng.integers(0, t))] = headroom * float(rng.uniform(0.999, 1.0))
    return GlbInstance(
        site_ids=tuple(f"s{i:02d}" for i in range(n)),
        capacity=capacity,
        demand=demand,
        slackness=slackness,
        electricity_price=rng.uniform(5.0, 120.0, (t, n)),
        health_price=rng.uniform(0.0, 80.0, (t, n)),
        carbon_rate=rng.uniform(0.05, 1.2, (t, n)),
    )


def random_weights(rng: np.random.Generator) -> ObjectiveWeights:
    include_health = bool(rng.integers(0, 2))
    roll = rng.uniform()
    if roll < 0.4:
        carbon = None
    elif roll < 0.55:
        carbon = 0.0
    else:
        carbon = float(rng.uniform(0.0, 300.0))
    return ObjectiveWeights(
        include_electricity=True, include_health=include_health, carbon_price=carbon
    )
