"""Moshinsky brackets for the equal-mass Jacobi rotation.

Two-coordinate oscillator states |n1 l1, n2 l2; L> are mixed by a
rotation (x, y) -> (x cos t + y sin t, -x sin t + y cos t). The rotation
is exp(t G) with G = a_y^dagger . a_x - a_x^dagger . a_y, which keeps the
band B = 2n1 + l1 + 2n2 + l2 and L fixed, so each (B, L) block is
exponentiated on its own.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from numpy.typing import NDArray
from scipy.linalg import expm
from sympy.physics.wigner import wigner_6j

from .exceptions import AfmInvalidParameterError
from .oscillator import reduced_ladder

_LOGGER = logging.getLogger(__name__)

State = tuple[int, int, int, int]


@lru_cache(maxsize=None)
def six_j(j1: int, j2: int, j3: int, j4: int, j5: int, j6: int) -> float:
    """Return the Wigner 6j symbol {j1 j2 j3; j4 j5 j6}."""
    return float(wigner_6j(j1, j2, j3, j4, j5, j6))


def block_states(band: int, total_l: int) -> list[State]:
    """Return the (n1, l1, n2, l2) states of one band coupling to ``total_l``."""
    found = []
    for l1 in range(band + 1):
        for n1 in range((band - l1) // 2 + 1):
            rest = band - 2 * n1 - l1
            for l2 in range(rest + 1):
                if (rest - l2) % 2:
                    continue
                if abs(l1 - l2) <= total_l <= l1 + l2:
                    found.append((n1, l1, (rest - l2) // 2, l2))
    return sorted(found, key=lambda s: (s[1] + s[3], s[1], s[0], s[2]))


def _coupling(out: State, into: State, total_l: int) -> float:
    """Matrix element of G between two coupled states."""
    n1p, l1p, n2p, l2p = out
    n1, l1, n2, l2 = into
    if abs(l1p - l1) != 1 or abs(l2p - l2) != 1:
        return 0.0
    raise_x, lower_x = reduced_ladder(n1p, l1p, n1, l1)
    raise_y, lower_y = reduced_ladder(n2p, l2p, n2, l2)
    amplitude = lower_x * raise_y - raise_x * lower_y
    if amplitude == 0.0:
        return 0.0
    sign = -1.0 if (l1 + l2p + total_l) % 2 else 1.0
    return sign * six_j(total_l, l2p, l1p, 1, l1, l2) * amplitude


def generator(band: int, total_l: int) -> tuple[list[State], NDArray[np.float64]]:
    """Return the states and antisymmetric rotation generator of one block."""
    basis = block_states(band, total_l)
    size = len(basis)
    matrix = np.zeros((size, size))
    for i, out in enumerate(basis):
        for j, into in enumerate(basis):
            matrix[i, j] = _coupling(out, into, total_l)
    asymmetry = float(np.max(np.abs(matrix + matrix.T), initial=0.0))
    if asymmetry > 1e-10:
        _LOGGER.warning(
            "Generator for B=%d L=%d off by %.3g from antisymmetric", band, total_l, asymmetry
        )
    return basis, 0.5 * (matrix - matrix.T)


@dataclass
class MoshinskyTable:
    """Rotation matrices per (band, L) for a fixed angle, filled on demand."""

    band_max: int
    angle: float
    _blocks: dict[tuple[int, int], tuple[dict[State, int], NDArray[np.float64]]] = field(
        default_factory=dict, init=False, repr=False
    )

    def __post_init__(self) -> None:
        if self.band_max < 0:
            raise AfmInvalidParameterError(
                f"Band limit must be non-negative, got {self.band_max}"
            )

    def block(self, band: int, total_l: int) -> tuple[dict[State, int], NDArray[np.float64]]:
        """Return the state index and rotation matrix of one block."""
        if not 0 <= band <= self.band_max:
            raise AfmInvalidParameterError(f"Band {band} outside 0..{self.band_max}")
        key = (band, total_l)
        if key not in self._blocks:
            basis, gen = generator(band, total_l)
            rotation = expm(self.angle * gen) if basis else np.zeros((0, 0))
            rotation.setflags(write=False)
            self._blocks[key] = ({state: i for i, state in enumerate(basis)}, rotation)
            _LOGGER.debug("Moshinsky block B=%d L=%d has %d states", band, total_l, len(basis))
        return self._blocks[key]

    def bracket(self, out: State, into: State, total_l: int) -> float:
        """Return <out; L | R(angle) | into; L>, zero when selection rules fail."""
        band = 2 * out[0] + out[1] + 2 * out[2] + out[3]
        if band != 2 * into[0] + into[1] + 2 * into[2] + into[3] or band > self.band_max:
            return 0.0
        index, rotation = self.block(band, total_l)
        if out not in index or into not in index:
            return 0.0
        return float(rotation[index[out], index[into]])


@lru_cache(maxsize=16)
def shared_table(band_max: int, angle: float) -> MoshinskyTable:
    """Return a process-wide table for the given band limit and angle."""
    return MoshinskyTable(band_max, angle)
