"""Utility functions on model states and their translation through a map.

Translating a utility through a stochastic map assigns each new state the
expected utility of its mapped distribution: the translated value at state
j is the phi-column-j-weighted average of the original utilities.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .model import ModelFormatError
from .objective import OntologyMap


@dataclass(frozen=True)
class UtilityVector:
    """Real-valued utility per hidden state of one model."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float).reshape(-1)
        if not np.all(np.isfinite(v)):
            raise ValueError("utility values must be finite")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    def __len__(self) -> int:
        return len(self.values)


def translate(u: UtilityVector, mapping: OntologyMap) -> UtilityVector:
    """Push a utility on the map's O0 side forward to its O1 side."""
    if len(u) != mapping.n0:
        raise ValueError(
            f"utility has length {len(u)} but map expects {mapping.n0} source states"
        )
    return UtilityVector(u.values @ mapping.phi)


def read_utility(source) -> UtilityVector:
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    try:
        doc = json.loads(source)
        n = int(doc["model_states"])
        values = [float(v) for v in doc["values"]]
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
        raise ModelFormatError(f"malformed utility file: {e}") from None
    if len(values) != n:
        raise ModelFormatError(
            f"utility declares {n} states but lists {len(values)} values"
        )
    return UtilityVector(values)


def write_utility(u: UtilityVector) -> bytes:
    doc = {"model_states": len(u), "values": u.values.tolist()}
    return (json.dumps(doc, indent=2) + "\n").encode("utf-8")
