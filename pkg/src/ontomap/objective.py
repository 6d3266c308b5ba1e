"""Composite bisimulation objective for a pair of models and a map pair.

For models O0 (n0 states) and O1 (n1 states) and column-stochastic maps
phi (n0 x n1) and phi_inv (n1 x n0), the objective sums, over every motor
symbol x, the column-KL of T1^x against phi_inv @ T0^x @ phi and of T0^x
against phi @ T1^x @ phi_inv, plus the two output terms comparing A1 with
A0 @ phi and A0 with A1 @ phi_inv.

Note on the output terms: conjugating A0 by phi_inv on the left is
dimensionally impossible (phi_inv maps state distributions, not sensor
distributions), so the output comparisons compose the maps on the state
side only: A0 @ phi against A1, and A1 @ phi_inv against A0.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .divergence import DEFAULT_POLICY, SmoothingPolicy, _kl_columns_raw, kl_columns
from .model import STOCHASTIC_TOL, FiniteStateModel, validate_model


@dataclass(frozen=True)
class OntologyMap:
    """Pair of column-stochastic maps between the state spaces of two models.

    phi carries O1 state distributions to O0; phi_inv carries O0
    distributions to O1. phi_inv is a notational inverse only.
    """

    phi: np.ndarray
    phi_inv: np.ndarray

    def __post_init__(self):
        phi = np.array(self.phi, dtype=float)
        phi_inv = np.array(self.phi_inv, dtype=float)
        for name, m in (("phi", phi), ("phi_inv", phi_inv)):
            if m.ndim != 2:
                raise ValueError(f"{name} must be a matrix")
            if np.any(m < -STOCHASTIC_TOL) or np.any(m > 1 + STOCHASTIC_TOL):
                raise ValueError(f"{name} has entries outside [0, 1]")
            sums = m.sum(axis=0)
            if np.any(np.abs(sums - 1.0) > STOCHASTIC_TOL):
                j = int(np.argmax(np.abs(sums - 1.0)))
                raise ValueError(f"{name} column {j + 1} sums to {sums[j]!r}, expected 1")
        if phi.shape != phi_inv.shape[::-1]:
            raise ValueError(
                f"phi is {phi.shape} but phi_inv is {phi_inv.shape}; expected transposed shapes"
            )
        phi.flags.writeable = False
        phi_inv.flags.writeable = False
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "phi_inv", phi_inv)

    @property
    def n0(self) -> int:
        return self.phi.shape[0]

    @property
    def n1(self) -> int:
        return self.phi.shape[1]

    def swapped(self) -> "OntologyMap":
        """The same map pair viewed from the other model's side."""
        return OntologyMap(phi=self.phi_inv, phi_inv=self.phi)


@dataclass(frozen=True)
class ObjectiveReport:
    """Objective value with its per-term breakdown."""

    total: float
    forward_transition_terms: dict[str, float]
    forward_output_term: float
    backward_transition_terms: dict[str, float]
    backward_output_term: float

    def terms(self) -> list[float]:
        return (
            list(self.forward_transition_terms.values())
            + [self.forward_output_term]
            + list(self.backward_transition_terms.values())
            + [self.backward_output_term]
        )

    def to_dict(self) -> dict:
        return {
            "total": self.total,
            "forward_transition_terms": dict(self.forward_transition_terms),
            "forward_output_term": self.forward_output_term,
            "backward_transition_terms": dict(self.backward_transition_terms),
            "backward_output_term": self.backward_output_term,
        }

    def to_bytes(self) -> bytes:
        return (json.dumps(self.to_dict(), indent=2) + "\n").encode("utf-8")


def read_map(source) -> OntologyMap:
    """Parse a map file: JSON with row-major ``phi`` and ``phi_inv``."""
    from .model import ModelFormatError

    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    try:
        doc = json.loads(source)
        phi = np.asarray(doc["phi"], dtype=float)
        phi_inv = np.asarray(doc["phi_inv"], dtype=float)
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
        raise ModelFormatError(f"malformed map file: {e}") from None
    return OntologyMap(phi=phi, phi_inv=phi_inv)


def write_map(mapping: OntologyMap) -> bytes:
    doc = {"phi": mapping.phi.tolist(), "phi_inv": mapping.phi_inv.tolist()}
    return (json.dumps(doc, indent=2) + "\n").encode("utf-8")


def _check_pair(o0: FiniteStateModel, o1: FiniteStateModel) -> None:
    if o0.motor != o1.motor or o0.sensor != o1.sensor:
        raise ValueError("models must share motor and sensor alphabets")
    for m, name in ((o0, "o0"), (o1, "o1")):
        violations = validate_model(m)
        if violations:
            raise ValueError(f"{name} is not a valid model: {violations[0]}")


def _total(
    o0: FiniteStateModel,
    o1: FiniteStateModel,
    phi: np.ndarray,
    phi_inv: np.ndarray,
    epsilon: float,
) -> float:
    """Fast objective total; skips validation. Summation order matches
    evaluate() exactly so both paths give bit-identical totals."""
    forward = []
    backward = []
    for x in o0.motor:
        t0 = o0.transitions[x]
        t1 = o1.transitions[x]
        forward.append(_kl_columns_raw(t1, phi_inv @ t0 @ phi, epsilon))
        backward.append(_kl_columns_raw(t0, phi @ t1 @ phi_inv, epsilon))
    forward_out = _kl_columns_raw(o1.output, o0.output @ phi, epsilon)
    backward_out = _kl_columns_raw(o0.output, o1.output @ phi_inv, epsilon)
    return sum(forward) + forward_out + sum(backward) + backward_out


def evaluate(
    o0: FiniteStateModel,
    o1: FiniteStateModel,
    mapping: OntologyMap,
    policy: SmoothingPolicy = DEFAULT_POLICY,
) -> ObjectiveReport:
    """Evaluate the bisimulation objective; deterministic for fixed inputs."""
    _check_pair(o0, o1)
    if mapping.n0 != o0.n or mapping.n1 != o1.n:
        raise ValueError(
            f"map shape ({mapping.n0}, {mapping.n1}) does not match models ({o0.n}, {o1.n})"
        )
    phi, phi_inv = mapping.phi, mapping.phi_inv
    forward = {}
    backward = {}
    for x in o0.motor:
        t0 = o0.transitions[x]
        t1 = o1.transitions[x]
        forward[x] = kl_columns(t1, phi_inv @ t0 @ phi, policy)
        backward[x] = kl_columns(t0, phi @ t1 @ phi_inv, policy)
    forward_out = kl_columns(o1.output, o0.output @ phi, policy)
    backward_out = kl_columns(o0.output, o1.output @ phi_inv, policy)
    total = sum(forward.values()) + forward_out + sum(backward.values()) + backward_out
    return ObjectiveReport(
        total=total,
        forward_transition_terms=forward,
        forward_output_term=forward_out,
        backward_transition_terms=backward,
        backward_output_term=backward_out,
    )
