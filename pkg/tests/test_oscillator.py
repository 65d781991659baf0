"""Tests for oscillator radial functions and ladder elements."""
from __future__ import annotations

import math

import numpy as np
import pytest

from afm_duality.solvers.oscillator import (
    kinetic_matrix,
    radial_function,
    radial_matrix,
    reduced_ladder,
)


@pytest.mark.parametrize("l", [0, 1, 3])
def test_radial_functions_are_orthonormal(l: int) -> None:
    overlap = radial_matrix(l, 6, np.ones_like, 200)
    np.testing.assert_allclose(overlap, np.eye(6), atol=1e-10)


@pytest.mark.parametrize("l", [0, 2])
def test_kinetic_matrix_matches_momentum_quadrature(l: int) -> None:
    size = 5
    momentum = radial_matrix(l, size, np.square, 200, phase=True)
    np.testing.assert_allclose(momentum, kinetic_matrix(l, size), atol=1e-10)


def test_kinetic_matrix_shape() -> None:
    matrix = kinetic_matrix(1, 4)
    assert matrix.shape == (4, 4)
    assert matrix[0, 0] == pytest.approx(2.5)
    assert matrix[0, 2] == 0.0
    np.testing.assert_array_equal(matrix, matrix.T)


def test_ground_state_value() -> None:
    r = np.array([0.0, 1.0])
    values = radial_function(0, 0, r)
    assert values[0] == pytest.approx(2.0 / math.pi**0.25)
    assert values[1] == pytest.approx(values[0] * math.exp(-0.5))


def test_reduced_ladder() -> None:
    raising, lowering = reduced_ladder(0, 1, 0, 0)
    assert raising == pytest.approx(math.sqrt(3.0), rel=1e-12)
    assert lowering == 0.0

    raising, lowering = reduced_ladder(0, 0, 0, 1)
    assert raising == 0.0
    assert lowering != 0.0


@pytest.mark.parametrize(
    "states",
    [(0, 0, 0, 2), (1, 0, 0, 0), (0, 1, 1, 1), (2, 1, 0, 0)],
)
def test_reduced_ladder_selection_rules(states: tuple[int, int, int, int]) -> None:
    assert reduced_ladder(*states) == (0.0, 0.0)
