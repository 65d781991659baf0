"""Tests for the two-body Lagrange mesh solver."""
from __future__ import annotations

import math

import numpy as np
import pytest

from afm_duality.const import AIRY_FIRST_ZERO
from afm_duality.exact_nr import MeshConfig, solve_radial_2b, universal_f_fn
from afm_duality.solvers import mesh
from afm_duality.solvers.exceptions import AfmConvergenceError, AfmInvalidParameterError

# second zero of the Airy function Ai
AIRY_SECOND_ZERO = 4.087949444130970


def test_linear_ground_state(linear) -> None:
    energy = solve_radial_2b(4.0, linear, 0, 0)
    assert energy == pytest.approx(AIRY_FIRST_ZERO * 4.0 ** (-1 / 3), abs=1e-6)
    assert energy == pytest.approx(1.473, abs=1e-3)


def test_linear_radial_excitation(linear) -> None:
    energy = solve_radial_2b(4.0, linear, 1, 0)
    assert energy == pytest.approx(AIRY_SECOND_ZERO * 4.0 ** (-1 / 3), abs=1e-5)
    assert energy == pytest.approx(2.5753, abs=1e-4)


def test_coulomb_ground_state(coulomb) -> None:
    assert solve_radial_2b(1.0, coulomb, 0, 0) == pytest.approx(-0.25, rel=1e-6)
    assert solve_radial_2b(1.0, coulomb, 0, 1) == pytest.approx(-0.25 / 4, rel=1e-6)


@pytest.mark.parametrize("mass", [0.5, 2.0, 9.0])
def test_oscillator(quadratic, mass: float) -> None:
    assert universal_f_fn(quadratic, mass) == pytest.approx(3 / math.sqrt(mass), rel=1e-7)
    assert solve_radial_2b(mass, quadratic, 1, 2) == pytest.approx(
        (4 + 4 + 3) / math.sqrt(mass), rel=1e-7
    )


def test_universal_f_scaling(linear) -> None:
    assert universal_f_fn(linear, 1.0) == pytest.approx(AIRY_FIRST_ZERO, abs=1e-6)
    ratio = universal_f_fn(linear, 8.0) / universal_f_fn(linear, 1.0)
    assert ratio == pytest.approx(0.5, rel=1e-6)


def test_fixed_scale(linear) -> None:
    free = solve_radial_2b(4.0, linear, 0, 0)
    h = mesh.initial_scale(2.0, 100)
    fixed = solve_radial_2b(4.0, linear, 0, 0, MeshConfig(points=100, scale=h))
    assert fixed == pytest.approx(free, rel=1e-6)


def test_mesh_levels_ascending(quadratic) -> None:
    levels = mesh.radial_levels(1.0, quadratic.value, 0, 40, 0.1)
    assert np.all(np.diff(levels) > 0)
    assert levels[0] == pytest.approx(3.0, rel=1e-6)


def test_unconverged_mesh(linear) -> None:
    with pytest.raises(AfmConvergenceError) as info:
        solve_radial_2b(4.0, linear, 0, 0, MeshConfig(points=20, scale=1e-3))
    coarse, fine = info.value.values
    assert coarse != fine


def test_invalid_requests(linear) -> None:
    with pytest.raises(AfmInvalidParameterError):
        MeshConfig(points=10)
    with pytest.raises(AfmInvalidParameterError):
        MeshConfig(scale=-1.0)
    with pytest.raises(AfmInvalidParameterError):
        solve_radial_2b(0.0, linear, 0, 0)
    with pytest.raises(AfmInvalidParameterError):
        solve_radial_2b(1.0, linear, -1, 0)
    with pytest.raises(AfmInvalidParameterError):
        solve_radial_2b(1.0, linear, 30, 0, MeshConfig(points=20, scale=0.1))
