import numpy as np
import pytest

from ontomap.corridor import CorridorSpec, build_corridor
from ontomap.model import FiniteStateModel
from ontomap.objective import OntologyMap


@pytest.fixture(scope="session")
def corridor4():
    return build_corridor(CorridorSpec(4))


@pytest.fixture(scope="session")
def corridor5():
    return build_corridor(CorridorSpec(5))


def permuted_copy(model: FiniteStateModel, perm: np.ndarray) -> FiniteStateModel:
    """Relabel states so that new state perm[i] is old state i."""
    n = model.n
    p = np.zeros((n, n))
    p[perm, np.arange(n)] = 1.0
    return FiniteStateModel(
        n=n,
        motor=model.motor,
        sensor=model.sensor,
        transitions={x: p @ model.transitions[x] @ p.T for x in model.motor},
        output=model.output @ p.T,
    )


def published_corridor_map() -> OntologyMap:
    """The 4<->5 corridor map pair reported to three significant figures,
    with columns renormalized to exact distributions."""
    phi = np.array(
        [
            [1, 0, 0, 0, 0],
            [0, 1, 0.503, 0, 0],
            [0, 0, 0.496, 1, 0],
            [0, 0, 0, 0, 1],
        ],
        dtype=float,
    )
    phi_inv = np.array(
        [
            [1, 0.014, 0.001, 0],
            [0, 0.715, 0, 0],
            [0, 0.270, 0.283, 0],
            [0, 0, 0.715, 0],
            [0, 0, 0, 1],
        ],
        dtype=float,
    )
    phi = phi / phi.sum(axis=0, keepdims=True)
    phi_inv = phi_inv / phi_inv.sum(axis=0, keepdims=True)
    return OntologyMap(phi=phi, phi_inv=phi_inv)


def random_model(rng: np.random.Generator, n: int, motor, sensor) -> FiniteStateModel:
    def stoch(rows, cols):
        m = rng.standard_exponential((rows, cols))
        return m / m.sum(axis=0, keepdims=True)

    return FiniteStateModel(
        n=n,
        motor=motor,
        sensor=sensor,
        transitions={x: stoch(n, n) for x in motor},
        output=stoch(len(sensor), n),
    )
