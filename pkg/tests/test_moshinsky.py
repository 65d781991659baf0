"""Tests for Moshinsky brackets of the Jacobi rotation."""
from __future__ import annotations

import math

import numpy as np
import pytest

from afm_duality.const import THREE_BODY_ANGLE
from afm_duality.exact_nr import moshinsky_bracket
from afm_duality.solvers.exceptions import AfmInvalidParameterError
from afm_duality.solvers.moshinsky import MoshinskyTable, block_states, shared_table, six_j


def test_ground_bracket() -> None:
    assert moshinsky_bracket(0, 0, 0, 0, 0, 0, 0, 0, 0) == pytest.approx(1.0, abs=1e-14)


def test_single_quantum() -> None:
    value = moshinsky_bracket(0, 1, 0, 0, 0, 1, 0, 0, 1)
    assert abs(value) == pytest.approx(abs(math.cos(THREE_BODY_ANGLE)), abs=1e-12)
    cross = moshinsky_bracket(0, 0, 0, 1, 0, 1, 0, 0, 1)
    assert abs(cross) == pytest.approx(abs(math.sin(THREE_BODY_ANGLE)), abs=1e-12)


@pytest.mark.parametrize(
    ("out", "expected"),
    [
        ((1, 0, 0, 0), 0.25),
        ((0, 0, 1, 0), 0.75),
        ((0, 1, 0, 1), math.sqrt(6.0) / 4.0),
    ],
)
def test_band_two_monopole(out: tuple[int, int, int, int], expected: float) -> None:
    value = moshinsky_bracket(*out, 1, 0, 0, 0, 0)
    assert abs(value) == pytest.approx(expected, abs=1e-10)


def test_zero_angle_is_identity() -> None:
    table = MoshinskyTable(4, 0.0)
    for total_l in range(5):
        _, rotation = table.block(4, total_l)
        np.testing.assert_allclose(rotation, np.eye(rotation.shape[0]), atol=1e-14)


@pytest.mark.parametrize(("band", "total_l"), [(3, 1), (4, 0), (4, 2), (6, 3)])
def test_rotation_is_orthogonal(band: int, total_l: int) -> None:
    _, rotation = shared_table(6, THREE_BODY_ANGLE).block(band, total_l)
    size = rotation.shape[0]
    np.testing.assert_allclose(rotation @ rotation.T, np.eye(size), atol=1e-10)


def test_rotations_compose() -> None:
    _, once = MoshinskyTable(4, THREE_BODY_ANGLE).block(4, 2)
    _, twice = MoshinskyTable(4, 2 * THREE_BODY_ANGLE).block(4, 2)
    np.testing.assert_allclose(once @ once, twice, atol=1e-10)


def test_selection_rules() -> None:
    assert moshinsky_bracket(1, 0, 0, 0, 0, 0, 0, 0, 0) == 0.0
    assert moshinsky_bracket(0, 1, 0, 1, 0, 1, 0, 1, 3) == 0.0
    with pytest.raises(AfmInvalidParameterError):
        moshinsky_bracket(-1, 0, 0, 0, 0, 0, 0, 0, 0)


def test_block_states() -> None:
    assert set(block_states(2, 0)) == {(1, 0, 0, 0), (0, 0, 1, 0), (0, 1, 0, 1)}
    assert block_states(1, 0) == []
    assert all(2 * s[0] + s[1] + 2 * s[2] + s[3] == 5 for s in block_states(5, 2))


def test_table_limits() -> None:
    with pytest.raises(AfmInvalidParameterError):
        MoshinskyTable(-1, THREE_BODY_ANGLE)
    with pytest.raises(AfmInvalidParameterError):
        MoshinskyTable(2, THREE_BODY_ANGLE).block(3, 1)
    assert MoshinskyTable(2, THREE_BODY_ANGLE).bracket((0, 0, 2, 0), (2, 0, 0, 0), 0) == 0.0


def test_six_j() -> None:
    assert six_j(1, 1, 1, 1, 1, 1) == pytest.approx(1.0 / 6.0)
    assert six_j(1, 1, 3, 1, 1, 1) == 0.0
