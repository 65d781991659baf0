"""Tests for the AFM transcendental solver and its closed forms."""
from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from afm_duality.afm_core import (
    Flavor,
    SystemSpec,
    closed_harmonic,
    closed_powerlaw,
    compact_nr,
    compact_ur,
    pair_count,
    parse_flavor,
    solve_afm,
    universal_F,
    universal_G,
)
from afm_duality.potentials import make_potential, parse_potential
from afm_duality.solvers.exceptions import (
    AfmDomainError,
    AfmExponentMismatchError,
    AfmInvalidParameterError,
    AfmUnsupportedError,
)


def test_two_body_oscillator(quadratic) -> None:
    spec = SystemSpec(Flavor.NONRELATIVISTIC, 2, 1.0, two_body=quadratic)
    solution = solve_afm(spec, 1.5)
    assert solution.value == pytest.approx(3.0, rel=1e-12)
    assert solution.residual <= 1e-12
    assert solution.r0_one_body is None
    assert solution.r0_two_body > 0


def test_ultrarelativistic_linear(linear) -> None:
    spec = SystemSpec(Flavor.ULTRARELATIVISTIC, 3, 0.0, one_body=linear)
    assert solve_afm(spec, 3.0).value == pytest.approx(6.0, rel=1e-12)


@given(
    n=st.integers(2, 8),
    q=st.floats(1.0, 20.0),
    a=st.floats(0.1, 5.0),
)
def test_ultrarelativistic_mass_formula(n: int, q: float, a: float) -> None:
    spec = SystemSpec(Flavor.ULTRARELATIVISTIC, n, 0.0, one_body=make_potential("linear", a=a))
    assert solve_afm(spec, q).value == pytest.approx(math.sqrt(4 * n * a * q), rel=1e-10)


def test_general_limits(linear) -> None:
    heavy = 1e4
    sr = solve_afm(SystemSpec(Flavor.GENERAL_SR, 2, heavy, two_body=linear), 1.5).value
    nr = solve_afm(SystemSpec(Flavor.NONRELATIVISTIC, 2, heavy, two_body=linear), 1.5).value
    assert abs((sr - 2 * heavy) - nr) / abs(nr) <= 1e-3

    light = solve_afm(SystemSpec(Flavor.GENERAL_SR, 2, 1e-6, two_body=linear), 1.5).value
    ur = solve_afm(SystemSpec(Flavor.ULTRARELATIVISTIC, 2, 0.0, two_body=linear), 1.5).value
    assert light == pytest.approx(ur, rel=1e-6)


def test_sigma_matches_closed_harmonic(quadratic) -> None:
    spec = SystemSpec(Flavor.SIGMA_SR, mass=0.0, two_body=quadratic, sigma=2.0)
    assert solve_afm(spec, 1.5).value == pytest.approx(closed_harmonic(spec, 1.5), rel=1e-10)


def test_universal_functions(linear, quadratic, coulomb) -> None:
    assert universal_F(linear, 4.0) == pytest.approx(4.0, rel=1e-12)
    assert universal_G(linear, 1.0) == pytest.approx(1.5, rel=1e-12)
    for x in (0.3, 1.0, 7.0):
        assert universal_F(quadratic, x) == pytest.approx(3 * (x / 2) ** (2 / 3), rel=1e-12)
        assert universal_G(quadratic, x) == pytest.approx(math.sqrt(2 * x), rel=1e-12)
    # hydrogen-like ground state of p^2/m - 1/r with m = 1
    assert pair_count(2) * universal_G(coulomb, 2.0) == pytest.approx(-0.25, rel=1e-12)


def test_universal_domain(linear) -> None:
    with pytest.raises(AfmDomainError):
        universal_F(linear, -1.0)


def test_compact_ur_matches_universal(linear) -> None:
    n, q = 3, 3.0
    spec = SystemSpec(Flavor.ULTRARELATIVISTIC, n, 0.0, two_body=linear)
    cn = pair_count(n)
    expected = cn * universal_F(linear, 2 * q / ((n - 1) * math.sqrt(cn)))
    assert compact_ur(spec, q) == pytest.approx(expected, rel=1e-10)
    assert compact_ur(spec, q, a=7.0) == pytest.approx(compact_ur(spec, q, a=1.0), rel=1e-10)


def test_compact_ur_matches_solver(linear) -> None:
    spec = SystemSpec(Flavor.ULTRARELATIVISTIC, 3, 0.0, one_body=linear, two_body=linear)
    assert compact_ur(spec, 3.0) == pytest.approx(solve_afm(spec, 3.0).value, rel=1e-10)


def test_compact_nr(linear, quadratic) -> None:
    n, m, q = 4, 1.7, 4.5
    spec = SystemSpec(Flavor.NONRELATIVISTIC, n, m, two_body=linear)
    cn = pair_count(n)
    expected = cn * universal_G(linear, n * q * q / (m * cn * cn))
    assert compact_nr(spec, q) == pytest.approx(expected, rel=1e-10)
    assert compact_nr(spec, q, a=0.2) == pytest.approx(compact_nr(spec, q), rel=1e-10)

    both = SystemSpec(Flavor.NONRELATIVISTIC, 3, 2.0, one_body=quadratic, two_body=quadratic)
    assert compact_nr(both, 3.0) == pytest.approx(math.sqrt((2 / 2.0) * (1 + 3)) * 3.0)
    with pytest.raises(AfmUnsupportedError):
        compact_ur(both, 3.0)


def test_closed_powerlaw(linear) -> None:
    spec = SystemSpec(Flavor.NONRELATIVISTIC, 2, 4.0, two_body=linear)
    assert closed_powerlaw(spec, 1.375) == pytest.approx(1.4722, abs=1e-3)

    ur = SystemSpec(Flavor.ULTRARELATIVISTIC, 3, 0.0, one_body=linear)
    assert closed_powerlaw(ur, 2.2) == pytest.approx(math.sqrt(12 * 2.2), rel=1e-12)


@pytest.mark.parametrize("lam", [-1.0, 0.5, 1.0, 2.0])
@settings(max_examples=25)
@given(n=st.integers(2, 8), m=st.floats(0.1, 10.0), q=st.floats(1.0, 20.0))
def test_closed_powerlaw_matches_solver(lam: float, n: int, m: float, q: float) -> None:
    p = make_potential("powerlaw", a=1.3, lam=lam)
    spec = SystemSpec(Flavor.NONRELATIVISTIC, n, m, one_body=p, two_body=p)
    assert closed_powerlaw(spec, q) == pytest.approx(solve_afm(spec, q).value, rel=1e-10)


def test_closed_form_errors(linear, quadratic) -> None:
    mixed = SystemSpec(Flavor.NONRELATIVISTIC, 3, 1.0, one_body=linear, two_body=quadratic)
    with pytest.raises(AfmExponentMismatchError):
        closed_powerlaw(mixed, 3.0)
    with pytest.raises(AfmExponentMismatchError):
        closed_harmonic(SystemSpec(Flavor.NONRELATIVISTIC, 2, 1.0, two_body=linear), 1.5)
    with pytest.raises(AfmDomainError):
        solve_afm(SystemSpec(Flavor.NONRELATIVISTIC, 2, 1.0, two_body=linear), 0.0)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"flavor": Flavor.ULTRARELATIVISTIC, "mass": 1.0},
        {"flavor": Flavor.NONRELATIVISTIC, "mass": 0.0},
        {"flavor": Flavor.NONRELATIVISTIC, "mass": 1.0, "n_bodies": 1},
        {"flavor": Flavor.NONRELATIVISTIC, "mass": 1.0, "sigma": 2.0},
        {"flavor": Flavor.SIGMA_SR, "mass": 1.0},
    ],
)
def test_system_validation(kwargs: dict) -> None:
    with pytest.raises(AfmInvalidParameterError):
        SystemSpec(two_body=parse_potential("linear:a=1"), **kwargs)


def test_system_requires_potential() -> None:
    with pytest.raises(AfmInvalidParameterError):
        SystemSpec(Flavor.NONRELATIVISTIC, 2, 1.0)


def test_parse_flavor() -> None:
    assert parse_flavor("ur") is Flavor.ULTRARELATIVISTIC
    assert parse_flavor("nonrelativistic") is Flavor.NONRELATIVISTIC
    with pytest.raises(AfmInvalidParameterError):
        parse_flavor("fast")


@settings(max_examples=25)
@given(
    beta=st.floats(0.1, 10.0),
    n=st.integers(2, 6),
    m=st.floats(0.2, 5.0),
    q=st.floats(1.0, 10.0),
)
def test_nonrelativistic_scaling(beta: float, n: int, m: float, q: float) -> None:
    linear = make_potential("linear", a=1.0)
    base = SystemSpec(Flavor.NONRELATIVISTIC, n, m, one_body=linear, two_body=linear)
    heavy = beta * beta * m
    scaled = SystemSpec(Flavor.NONRELATIVISTIC, n, heavy, one_body=linear, two_body=linear)
    expected = solve_afm(base, q).value
    assert solve_afm(scaled, beta * q).value == pytest.approx(expected, rel=1e-10)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"flavor": Flavor.NONRELATIVISTIC, "n_bodies": 3, "mass": 1.0},
        {"flavor": Flavor.ULTRARELATIVISTIC, "n_bodies": 3, "mass": 0.0},
        {"flavor": Flavor.GENERAL_SR, "n_bodies": 3, "mass": 1.0},
        {"flavor": Flavor.SIGMA_SR, "mass": 1.0, "sigma": 2.0},
    ],
)
def test_value_increases_with_q(kwargs: dict, linear) -> None:
    spec = SystemSpec(two_body=linear, **kwargs)
    grid = [0.5 * 1.25**k for k in range(16)]
    values = [solve_afm(spec, q).value for q in grid]
    assert all(low < high for low, high in zip(values, values[1:]))


@pytest.mark.parametrize("text", ["linear:a=1", "quadratic:k=0.7", "powerlaw:a=1.3,lambda=0.5"])
@given(x=st.floats(0.05, 50.0))
def test_universal_functions_depend_only_on_argument(text: str, x: float) -> None:
    first, second = parse_potential(text), parse_potential(text)
    f_value, g_value = universal_F(first, x), universal_G(first, x)
    universal_F(second, 3.0 * x)
    universal_G(second, 0.5 * x)
    assert universal_F(second, x) == f_value
    assert universal_G(second, x) == g_value
