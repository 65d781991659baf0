"""Tests for the three-body oscillator basis solver."""
from __future__ import annotations

import math

import numpy as np
import pytest

from afm_duality.exact_nr import (
    Symmetry,
    ThreeBodyBasisConfig,
    solve_3b,
    spectrum_all,
    three_body_ground,
)
from afm_duality.quantum_numbers import StateLabels
from afm_duality.solvers import three_body
from afm_duality.solvers.exceptions import AfmInvalidParameterError
from afm_duality.solvers.three_body import SpectrumEntry, ThreeBodyBasis


def test_oscillator_ground_state(quadratic) -> None:
    cfg = ThreeBodyBasisConfig(band_max=4, levels=1)
    spectrum = solve_3b(2.0, quadratic, cfg=cfg)
    assert spectrum[0].energy == pytest.approx(3 * math.sqrt(3), rel=1e-6)
    assert spectrum[0].labels == StateLabels.ground(3)
    assert spectrum[0].band == 0


def test_oscillator_odd_parity(quadratic) -> None:
    cfg = ThreeBodyBasisConfig(band_max=5, symmetry=Symmetry.ANY, levels=2)
    spectrum = solve_3b(2.0, quadratic, 1, -1, cfg)
    assert spectrum[0].energy == pytest.approx(4 * math.sqrt(3), rel=1e-6)
    assert spectrum.energies == sorted(spectrum.energies)


def test_fixed_length(linear) -> None:
    cfg = ThreeBodyBasisConfig(b=0.6, band_max=6, symmetry=Symmetry.BOSONIC, levels=3)
    spectrum = solve_3b(2.0, linear, cfg=cfg)
    assert spectrum.b == 0.6
    assert len(spectrum) <= 3


@pytest.mark.integration
def test_linear_ground_state(linear) -> None:
    spectrum = solve_3b(2.0, linear, cfg=ThreeBodyBasisConfig(levels=1))
    assert spectrum[0].energy == pytest.approx(4.867, abs=1e-3)


@pytest.mark.integration
@pytest.mark.parametrize("symmetry", [Symmetry.ANY, Symmetry.MIXED])
def test_linear_odd_parity(linear, symmetry: Symmetry) -> None:
    spectrum = solve_3b(2.0, linear, 1, -1, ThreeBodyBasisConfig(symmetry=symmetry, levels=1))
    assert spectrum[0].energy == pytest.approx(5.934, abs=2e-3)


@pytest.mark.parametrize(("total_l", "parity"), [(0, 1), (1, -1), (2, 1)])
def test_projectors_partition_the_basis(total_l: int, parity: int) -> None:
    basis = ThreeBodyBasis(6, total_l, parity)
    widths = 0
    for symmetry in (Symmetry.BOSONIC, Symmetry.ANTISYMMETRIC, Symmetry.MIXED):
        columns = basis.projector(symmetry)
        np.testing.assert_allclose(columns.T @ columns, np.eye(columns.shape[1]), atol=1e-10)
        projector = columns @ columns.T
        np.testing.assert_allclose(projector @ projector, projector, atol=1e-10)
        widths += columns.shape[1]
    assert widths == basis.size


def test_symmetric_levels_belong_to_full_spectrum(linear) -> None:
    basis = ThreeBodyBasis(6, 0, 1)
    full, _ = three_body.diagonalize(basis, 2.0, linear.value, 0.6, Symmetry.ANY)
    bosonic, _ = three_body.diagonalize(basis, 2.0, linear.value, 0.6, Symmetry.BOSONIC)
    assert 0 < bosonic.size < full.size
    for energy in bosonic:
        assert np.min(np.abs(full - energy)) <= 1e-8


def test_variational_in_band_limit(linear) -> None:
    energies = []
    for band_max in (4, 6, 8):
        basis = ThreeBodyBasis(band_max, 0, 1)
        spectrum = three_body.solve_sector(2.0, linear.value, basis, 0.6, Symmetry.BOSONIC, 1)
        energies.append(spectrum[0].energy)
    assert energies[0] >= energies[1] - 1e-12
    assert energies[1] >= energies[2] - 1e-12


def test_ground_state_mass_rescaling(linear) -> None:
    cfg = ThreeBodyBasisConfig(band_max=6, levels=1)
    rescaled = three_body_ground(2.0, linear, cfg)
    direct = solve_3b(2.0, linear, cfg=cfg)[0].energy
    assert rescaled == pytest.approx(direct, rel=1e-5)


def test_pooled_spectrum(linear, small_basis) -> None:
    spectrum = spectrum_all(2.0, linear, 2, small_basis)
    assert spectrum.energies == sorted(spectrum.energies)
    assert {entry.total_l for entry in spectrum} <= {0, 1, 2}
    assert {entry.parity for entry in spectrum} == {1, -1}


def test_paired_entry_is_bracketed() -> None:
    labels = StateLabels.of(1, 2, 0, 0)
    assert str(SpectrumEntry(labels, 4, 8.4, 0.45, paired=True)) == "[1,2,0,0]"
    assert str(SpectrumEntry(labels, 4, 8.4, 0.9)) == "1,2,0,0"


def test_basis_validation() -> None:
    with pytest.raises(AfmInvalidParameterError):
        ThreeBodyBasis(4, 0, 0)
    with pytest.raises(AfmInvalidParameterError):
        ThreeBodyBasis(2, 3, 1)
    with pytest.raises(AfmInvalidParameterError):
        ThreeBodyBasisConfig(band_max=-1)
    with pytest.raises(AfmInvalidParameterError):
        ThreeBodyBasisConfig(b=0.0)


def test_empty_sector(linear) -> None:
    with pytest.raises(AfmInvalidParameterError):
        solve_3b(2.0, linear, 1, 1, ThreeBodyBasisConfig(band_max=1))
