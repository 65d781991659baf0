"""Test configuration for the AFM duality toolkit."""
from __future__ import annotations

import pytest

from afm_duality.afm_core import Flavor, SystemSpec
from afm_duality.exact_nr import MeshConfig, Symmetry, ThreeBodyBasisConfig
from afm_duality.potentials import PotentialSpec, parse_potential


@pytest.fixture
def linear() -> PotentialSpec:
    """Linear confinement a r with a = 1."""
    return parse_potential("linear:a=1")


@pytest.fixture
def quadratic() -> PotentialSpec:
    """Harmonic potential k r^2 with k = 1."""
    return parse_potential("quadratic:k=1")


@pytest.fixture
def coulomb() -> PotentialSpec:
    """Attractive Coulomb -a/r with a = 1."""
    return parse_potential("coulomb:a=1")


@pytest.fixture
def funnel() -> PotentialSpec:
    """Cornell potential -a/r + b r."""
    return parse_potential("funnel:a=0.25,b=1")


@pytest.fixture
def nr_linear_system(linear: PotentialSpec) -> SystemSpec:
    """Two nonrelativistic bodies bound by a linear pair potential."""
    return SystemSpec(Flavor.NONRELATIVISTIC, 2, 1.0, two_body=linear)


@pytest.fixture
def mesh_config() -> MeshConfig:
    """Default Lagrange mesh."""
    return MeshConfig()


@pytest.fixture
def small_basis() -> ThreeBodyBasisConfig:
    """Three-body basis small enough for unit tests."""
    return ThreeBodyBasisConfig(band_max=8, symmetry=Symmetry.ANY, levels=6)

