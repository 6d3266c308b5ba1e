import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ontomap.divergence import SmoothingPolicy, kl_columns


def test_policy_range():
    with pytest.raises(ValueError):
        SmoothingPolicy(epsilon=0.0)
    with pytest.raises(ValueError):
        SmoothingPolicy(epsilon=0.01)
    SmoothingPolicy(epsilon=1e-3)


def test_identical_matrices_zero():
    p = np.array([[0.4, 0.1], [0.6, 0.9]])
    assert kl_columns(p, p) <= 1e-12


def test_single_column_hand_value():
    # KL((1,0) || (0.5,0.5)) = 1*ln(1/0.5) = ln 2
    p = np.array([[1.0], [0.0]])
    q = np.array([[0.5], [0.5]])
    assert kl_columns(p, q) == pytest.approx(math.log(2), abs=1e-9)


def test_two_column_hand_value():
    # col1: 1*ln(1/0.9) ; col2: 1*ln(1/0.8)
    p = np.eye(2)
    q = np.array([[0.9, 0.2], [0.1, 0.8]])
    expected = -math.log(0.9) - math.log(0.8)
    assert kl_columns(p, q) == pytest.approx(expected, abs=1e-9)


def test_shape_mismatch():
    with pytest.raises(ValueError):
        kl_columns(np.eye(2), np.eye(3))


def test_true_side_must_be_distribution():
    with pytest.raises(ValueError):
        kl_columns(np.array([[0.5], [0.4]]), np.array([[0.5], [0.5]]))


def test_finite_with_zero_denominator():
    p = np.array([[1.0], [0.0]])
    q = np.array([[0.0], [1.0]])
    v = kl_columns(p, q)
    assert math.isfinite(v)
    assert v > 0


def _random_stochastic(rng, rows, cols, interior=False):
    m = rng.standard_exponential((rows, cols))
    if interior:
        m += 0.05
    return m / m.sum(axis=0, keepdims=True)


@settings(max_examples=120, deadline=None)
@given(
    seed=st.integers(0, 2**32 - 1),
    rows=st.integers(2, 6),
    cols=st.integers(1, 6),
)
def test_identity_property(seed, rows, cols):
    rng = np.random.default_rng(seed)
    p = _random_stochastic(rng, rows, cols, interior=True)
    assert kl_columns(p, p) <= 1e-12


@settings(max_examples=120, deadline=None)
@given(
    seed=st.integers(0, 2**32 - 1),
    rows=st.integers(2, 6),
    cols=st.integers(1, 6),
)
def test_nonnegativity_and_finiteness(seed, rows, cols):
    rng = np.random.default_rng(seed)
    p = _random_stochastic(rng, rows, cols)
    q = rng.standard_exponential((rows, cols))
    q[rng.random((rows, cols)) < 0.3] = 0.0  # exercise zero entries
    policy = SmoothingPolicy()
    v = kl_columns(p, q, policy)
    assert math.isfinite(v)
    assert v >= -rows * cols * policy.epsilon


@settings(max_examples=120, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), rows=st.integers(2, 5), cols=st.integers(2, 5))
def test_column_permutation_invariance(seed, rows, cols):
    rng = np.random.default_rng(seed)
    p = _random_stochastic(rng, rows, cols)
    q = _random_stochastic(rng, rows, cols)
    perm = rng.permutation(cols)
    assert kl_columns(p[:, perm], q[:, perm]) == kl_columns(p, q)
