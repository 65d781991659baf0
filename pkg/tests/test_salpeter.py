"""Tests for the two-body spinless Salpeter solver."""
from __future__ import annotations

import math

import pytest

from afm_duality.exact_nr import solve_salpeter_2b
from afm_duality.potentials import parse_potential
from afm_duality.solvers.exceptions import AfmInvalidParameterError
from afm_duality.solvers.salpeter import salpeter_levels


def test_massless_linear(linear) -> None:
    mass = solve_salpeter_2b(2.0, 0.0, linear, 0, 0)
    # independent sine-basis diagonalization of 2|p| + r
    assert mass == pytest.approx(3.15694, rel=1e-4)
    assert mass == pytest.approx((32 / math.pi) ** 0.5, rel=0.02)


def test_heavy_oscillator(quadratic) -> None:
    mass = 10.0
    binding = solve_salpeter_2b(2.0, mass, quadratic, 0, 0) - 2 * mass
    assert binding == pytest.approx(3 / mass**0.5, rel=0.01)


def test_weak_coulomb() -> None:
    potential = parse_potential("coulomb:a=0.2")
    # nonrelativistic limit 2m - m a^2 / 4
    assert solve_salpeter_2b(2.0, 1.0, potential, 0, 0) == pytest.approx(1.990, rel=2e-3)


def test_levels_ordering(linear) -> None:
    first = solve_salpeter_2b(2.0, 0.0, linear, 0, 0)
    excited = solve_salpeter_2b(2.0, 0.0, linear, 1, 0)
    orbital = solve_salpeter_2b(2.0, 0.0, linear, 0, 1)
    assert first < orbital < excited


def test_sigma_scaling(linear) -> None:
    # massless levels scale like sqrt(sigma a) for a linear potential
    one = solve_salpeter_2b(1.0, 0.0, linear, 0, 0)
    four = solve_salpeter_2b(4.0, 0.0, linear, 0, 0)
    assert four == pytest.approx(2 * one, rel=1e-3)


def test_levels_at_fixed_length(quadratic) -> None:
    levels = salpeter_levels(2.0, 1.0, quadratic.value, 0, 40, 1.0)
    assert levels.shape == (40,)
    assert list(levels) == sorted(levels)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"sigma": 0.0, "m": 1.0},
        {"sigma": 2.0, "m": -1.0},
        {"sigma": 2.0, "m": 1.0, "basis_size": 10},
        {"sigma": 2.0, "m": 1.0, "n": 60},
    ],
)
def test_invalid_requests(linear, kwargs: dict) -> None:
    args = {"n": 0, "l": 0, **kwargs}
    with pytest.raises(AfmInvalidParameterError):
        solve_salpeter_2b(V=linear, **args)
