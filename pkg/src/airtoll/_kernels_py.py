"""Pure-numpy fallback for the compiled kernels.

Semantics match airtoll._kernels exactly; only rounding of intermediate
sums can differ at the last bit, because the greedy fill here uses a
cumulative sum where the compiled loop subtracts sequentially.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def greedy_fill(order: np.ndarray, caps: np.ndarray, demand: np.ndarray) -> np.ndarray:
    """Fill each slot's demand into sites in the given per-slot order.

    ``order[t]`` lists site indices from cheapest to dearest for slot t,
    ``caps[i]`` is site i's per-slot capacity, ``demand[t]`` the load that
    must be placed in slot t. Returns the allocation matrix w with shape
    (slots, sites); residual demand a slot could not place stays unserved
    and is the caller's job to detect.
    """
    order = np.asarray(order, dtype=np.int64)
    caps = np.asarray(caps, dtype=float)
    demand = np.asarray(demand, dtype=float)
    sorted_caps = caps[order]
    prior = np.cumsum(sorted_caps, axis=1) - sorted_caps
    take = np.clip(demand[:, None] - prior, 0.0, sorted_caps)
    w = np.zeros_like(take)
    np.put_along_axis(w, order, take, axis=1)
    return w


def sr_apply(coeff: np.ndarray, emissions: np.ndarray) -> np.ndarray:
    """Contract a (receptor, source, species) operator with (source, species) emissions."""
    return np.einsum("rjs,js->rs", np.asarray(coeff, dtype=float), np.asarray(emissions, dtype=float))
