"""Brute-force grid search over map pairs, for validating the optimizer.

Enumerates every map whose columns lie on a discretized simplex (entries
are multiples of the resolution) and returns the best under the objective.
Only feasible for tiny instances; the free-parameter cap keeps it honest.
"""

from __future__ import annotations

from itertools import product

import numpy as np

from .divergence import DEFAULT_POLICY, SmoothingPolicy
from .model import FiniteStateModel
from .objective import OntologyMap, _check_pair, _total

MAX_FREE_PARAMETERS = 6


def free_parameters(n0: int, n1: int) -> int:
    return n1 * (n0 - 1) + n0 * (n1 - 1)


def _grid_columns(dim: int, steps: int) -> list[np.ndarray]:
    """All probability vectors of the given dimension whose entries are
    multiples of 1/steps."""
    cols = []
    for combo in product(range(steps + 1), repeat=dim - 1):
        rest = steps - sum(combo)
        if rest >= 0:
            cols.append(np.array(combo + (rest,), dtype=float) / steps)
    return cols


def oracle_search(
    o0: FiniteStateModel,
    o1: FiniteStateModel,
    resolution: float = 0.05,
    policy: SmoothingPolicy = DEFAULT_POLICY,
) -> tuple[OntologyMap, float]:
    """Exhaustive search; returns (best map, best total)."""
    _check_pair(o0, o1)
    n0, n1 = o0.n, o1.n
    if free_parameters(n0, n1) > MAX_FREE_PARAMETERS:
        raise ValueError(
            f"instance has {free_parameters(n0, n1)} free parameters; "
            f"oracle is capped at {MAX_FREE_PARAMETERS}"
        )
    steps = round(1.0 / resolution)
    phi_cols = _grid_columns(n0, steps)
    phi_inv_cols = _grid_columns(n1, steps)
    eps = policy.epsilon
    phi = np.empty((n0, n1))
    phi_inv = np.empty((n1, n0))
    best_total = np.inf
    best = None
    for phi_choice in product(phi_cols, repeat=n1):
        for j, col in enumerate(phi_choice):
            phi[:, j] = col
        for inv_choice in product(phi_inv_cols, repeat=n0):
            for j, col in enumerate(inv_choice):
                phi_inv[:, j] = col
            total = _total(o0, o1, phi, phi_inv, eps)
            if total < best_total:
                best_total = total
                best = OntologyMap(phi=phi.copy(), phi_inv=phi_inv.copy())
    return best, best_total


def grid_step_variation(
    o0: FiniteStateModel,
    o1: FiniteStateModel,
    mapping: OntologyMap,
    resolution: float = 0.05,
    policy: SmoothingPolicy = DEFAULT_POLICY,
) -> float:
    """Largest objective change from moving one grid step away from the map.

    Moves one unit of mass (of size ``resolution``) between a pair of
    entries within a single column; used as the tolerance when comparing
    the oracle's best against the optimizer's.
    """
    eps = policy.epsilon
    base = _total(o0, o1, mapping.phi, mapping.phi_inv, eps)
    worst = 0.0
    for which in ("phi", "phi_inv"):
        mat = getattr(mapping, which)
        rows, cols = mat.shape
        for j in range(cols):
            for a in range(rows):
                for b in range(rows):
                    if a == b or mat[a, j] < resolution:
                        continue
                    phi = np.array(mapping.phi)
                    phi_inv = np.array(mapping.phi_inv)
                    target = phi if which == "phi" else phi_inv
                    target[a, j] -= resolution
                    target[b, j] += resolution
                    total = _total(o0, o1, phi, phi_inv, eps)
                    worst = max(worst, abs(total - base))
    return worst
