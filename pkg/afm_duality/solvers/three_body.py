"""Three identical particles in an oscillator basis.

States are products |n1 l1 (x), n2 l2 (y); L> of the Jacobi coordinates
x = (r1 - r2)/sqrt(2), y = (r1 + r2 - 2 r3)/sqrt(6), truncated to bands
B = 2(n1 + n2) + l1 + l2 <= band_max. The pair potential depends on x
only; the two other pairs follow from rotating (x, y) by +-2 pi/3.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Callable, Iterator

import numpy as np
from numpy.typing import NDArray
from scipy.linalg import eigh
from scipy.optimize import minimize_scalar

from ..const import B_SCAN_POINTS, B_SCAN_STEP, SYMMETRIZER_TOLERANCE, THREE_BODY_ANGLE
from ..quantum_numbers import StateLabels
from .exceptions import AfmIllConditionedError, AfmInvalidParameterError
from .moshinsky import State, block_states, shared_table
from .oscillator import kinetic_matrix, radial_matrix

_LOGGER = logging.getLogger(__name__)

Potential = Callable[[NDArray[np.float64]], NDArray[np.float64]]

QUADRATURE_POINTS = 200
PAIR_TOLERANCE = 1e-3


class Symmetry(str, Enum):
    """Permutation symmetry kept by the projection."""

    BOSONIC = "bosonic"
    ANTISYMMETRIC = "antisymmetric"
    MIXED = "mixed"
    ANY = "any"


@dataclass(frozen=True)
class SpectrumEntry:
    """One level with the labels of its largest component."""

    labels: StateLabels
    band: int
    energy: float
    main_amplitude: float
    paired: bool = False
    total_l: int = 0
    parity: int = 1

    def __str__(self) -> str:
        text = ",".join(str(v) for pair in self.labels.pairs for v in pair)
        return f"[{text}]" if self.paired else text


@dataclass(frozen=True)
class Spectrum:
    """Levels in ascending energy."""

    entries: tuple[SpectrumEntry, ...]
    b: float
    band_max: int
    symmetry: Symmetry

    def __iter__(self) -> Iterator[SpectrumEntry]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, index: int) -> SpectrumEntry:
        return self.entries[index]

    @property
    def energies(self) -> list[float]:
        return [entry.energy for entry in self.entries]

    def merged(self, other: Spectrum) -> Spectrum:
        """Pool two spectra, keeping ascending order."""
        entries = sorted(self.entries + other.entries, key=lambda e: e.energy)
        return Spectrum(tuple(entries), self.b, self.band_max, self.symmetry)


def _band(state: State) -> int:
    return 2 * state[0] + state[1] + 2 * state[2] + state[3]


class ThreeBodyBasis:
    """Coupled oscillator states of one (L, parity) sector."""

    def __init__(self, band_max: int, total_l: int, parity: int) -> None:
        """Initialize basis."""
        if parity not in (1, -1):
            raise AfmInvalidParameterError(f"Parity must be +1 or -1, got {parity}")
        if total_l < 0 or band_max < total_l:
            raise AfmInvalidParameterError(
                f"Need 0 <= L <= Bmax, got L={total_l} Bmax={band_max}"
            )
        self.band_max = band_max
        self.total_l = total_l
        self.parity = parity
        self.table = shared_table(band_max, THREE_BODY_ANGLE)

        self.states: list[State] = []
        self.bands: list[tuple[int, slice]] = []
        first = 0 if parity == 1 else 1
        for band in range(first, band_max + 1, 2):
            block = block_states(band, total_l)
            if block:
                start = len(self.states)
                self.bands.append((band, slice(start, start + len(block))))
                self.states.extend(block)

        states = np.array(self.states, dtype=int).reshape(-1, 4)
        self._n1, self._l1, self._n2, self._l2 = states.T
        self._x_pairs = self._pairs(same=(1, 2, 3), moving=0)
        self._y_pairs = self._pairs(same=(0, 1, 3), moving=2)
        self._rotation = self._rotation_matrix()
        self._projectors: dict[Symmetry, NDArray[np.float64]] = {}

    @property
    def size(self) -> int:
        return len(self.states)

    def _pairs(self, same: tuple[int, ...], moving: int) -> dict[int, tuple[NDArray, NDArray]]:
        """Index pairs (i, j) differing only in one radial number, grouped by l."""
        groups: dict[tuple[int, ...], list[int]] = {}
        for i, state in enumerate(self.states):
            groups.setdefault(tuple(state[k] for k in same), []).append(i)
        orbital = moving + 1
        found: dict[int, tuple[list[int], list[int]]] = {}
        for members in groups.values():
            l = self.states[members[0]][orbital]
            rows, cols = found.setdefault(l, ([], []))
            for i in members:
                for j in members:
                    rows.append(i)
                    cols.append(j)
        return {l: (np.array(r), np.array(c)) for l, (r, c) in found.items()}

    def _rotation_matrix(self) -> NDArray[np.float64]:
        rotation = np.zeros((self.size, self.size))
        for band, where in self.bands:
            _, block = self.table.block(band, self.total_l)
            rotation[where, where] = block
        return rotation

    def _radial_operator(
        self,
        pairs: dict[int, tuple[NDArray, NDArray]],
        moving: int,
        matrices: dict[int, NDArray],
    ) -> NDArray[np.float64]:
        radial = self._n1 if moving == 0 else self._n2
        full = np.zeros((self.size, self.size))
        for l, (rows, cols) in pairs.items():
            full[rows, cols] = matrices[l][radial[rows], radial[cols]]
        return full

    def _size_for(self, l: int) -> int:
        return (self.band_max - l) // 2 + 1

    @cached_property
    def kinetic(self) -> NDArray[np.float64]:
        """Return p_x^2 + p_y^2 in oscillator units."""
        px = {l: kinetic_matrix(l, self._size_for(l)) for l in self._x_pairs}
        py = {l: kinetic_matrix(l, self._size_for(l)) for l in self._y_pairs}
        return self._radial_operator(self._x_pairs, 0, px) + self._radial_operator(
            self._y_pairs, 2, py
        )

    def pair_potential(self, potential: Potential, b: float) -> NDArray[np.float64]:
        """Return V(r12) with r12 = sqrt(2) b |x|."""

        def along_x(s: NDArray[np.float64]) -> NDArray[np.float64]:
            return potential(math.sqrt(2.0) * b * s)

        matrices = {
            l: radial_matrix(l, self._size_for(l), along_x, QUADRATURE_POINTS)
            for l in self._x_pairs
        }
        return self._radial_operator(self._x_pairs, 0, matrices)

    def hamiltonian(self, mass: float, potential: Potential, b: float) -> NDArray[np.float64]:
        """Return the full Hamiltonian at oscillator length b."""
        pair = self.pair_potential(potential, b)
        rot = self._rotation
        total = self.kinetic / (2.0 * mass * b**2) + pair
        total += rot @ pair @ rot.T + rot.T @ pair @ rot
        return 0.5 * (total + total.T)

    def projector(self, symmetry: Symmetry) -> NDArray[np.float64]:
        """Return an orthonormal basis of the requested symmetry sector."""
        if symmetry in self._projectors:
            return self._projectors[symmetry]
        if symmetry is Symmetry.ANY:
            return self._projectors.setdefault(symmetry, np.eye(self.size))
        columns = []
        for band, where in self.bands:
            columns.append((where, self._band_projector(band, where, symmetry)))
        width = sum(block.shape[1] for _, block in columns)
        basis = np.zeros((self.size, width))
        start = 0
        for where, block in columns:
            basis[where, start : start + block.shape[1]] = block
            start += block.shape[1]
        return self._projectors.setdefault(symmetry, basis)

    def _band_projector(
        self, band: int, where: slice, symmetry: Symmetry
    ) -> NDArray[np.float64]:
        rot = self._rotation[where, where]
        swap = np.diag(np.where(self._l1[where] % 2, -1.0, 1.0))
        size = rot.shape[0]
        cyclic = (np.eye(size) + rot + rot.T) / 3.0
        symmetric = cyclic @ (np.eye(size) + swap) / 2.0
        antisymmetric = cyclic @ (np.eye(size) - swap) / 2.0
        if symmetry is Symmetry.BOSONIC:
            operator = symmetric
        elif symmetry is Symmetry.ANTISYMMETRIC:
            operator = antisymmetric
        else:
            operator = np.eye(size) - symmetric - antisymmetric

        values, vectors = eigh(0.5 * (operator + operator.T))
        off = np.minimum(np.abs(values), np.abs(values - 1.0))
        if off.size and float(off.max()) > SYMMETRIZER_TOLERANCE:
            raise AfmIllConditionedError(
                f"Symmetrizer is not a projector in band {band} (off by {off.max():.3g})", band
            )
        return vectors[:, values > 0.5]

    def entry(self, vector: NDArray[np.float64], energy: float) -> SpectrumEntry:
        """Label a level by its largest component."""
        weights = vector**2
        order = np.argsort(weights)[::-1]
        main = int(order[0])
        paired = len(order) > 1 and weights[order[1]] >= (1.0 - PAIR_TOLERANCE) * weights[main]
        if paired:
            partner = int(order[1])
            n1, l1, n2, l2 = self.states[partner]
            if (n1, l1) > (n2, l2):
                main = partner
            _LOGGER.warning(
                "Degenerate label assignment at E=%.6f between %s and %s",
                energy,
                self.states[main],
                self.states[partner],
            )
        n1, l1, n2, l2 = self.states[main]
        return SpectrumEntry(
            labels=StateLabels(((n1, l1), (n2, l2))),
            band=_band(self.states[main]),
            energy=float(energy),
            main_amplitude=float(weights[main]),
            paired=bool(paired),
            total_l=self.total_l,
            parity=self.parity,
        )


def diagonalize(
    basis: ThreeBodyBasis,
    mass: float,
    potential: Potential,
    b: float,
    symmetry: Symmetry,
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Return energies and full-basis eigenvectors of one sector."""
    projected = basis.projector(symmetry)
    if projected.shape[1] == 0:
        return np.zeros(0), np.zeros((basis.size, 0))
    hamiltonian = projected.T @ basis.hamiltonian(mass, potential, b) @ projected
    energies, vectors = eigh(0.5 * (hamiltonian + hamiltonian.T))
    return energies, projected @ vectors


def optimal_length(
    basis: ThreeBodyBasis,
    mass: float,
    potential: Potential,
    symmetry: Symmetry,
    guess: float,
    level: int = 0,
) -> float:
    """Scan b geometrically around ``guess`` then refine the best point."""

    def energy(log_b: float) -> float:
        values, _ = diagonalize(basis, mass, potential, math.exp(log_b), symmetry)
        if values.size <= level:
            raise AfmInvalidParameterError(f"Sector has no level {level}")
        return float(values[level])

    step = math.log(B_SCAN_STEP)
    half = B_SCAN_POINTS // 2
    grid = [math.log(guess) + step * k for k in range(-half, half + 1)]
    scan = [energy(point) for point in grid]
    best = int(np.argmin(scan))
    if best in (0, len(grid) - 1):
        _LOGGER.warning("Oscillator length scan hit its edge at b=%.6g", math.exp(grid[best]))

    result = minimize_scalar(
        energy,
        bounds=(grid[best] - step, grid[best] + step),
        method="bounded",
        options={"xatol": 1e-4},
    )
    b = math.exp(float(result.x)) if result.fun <= scan[best] else math.exp(grid[best])
    _LOGGER.debug("Oscillator length b=%.6g after %d evaluations", b, len(grid) + result.nfev)
    return b


def solve_sector(
    mass: float,
    potential: Potential,
    basis: ThreeBodyBasis,
    b: float,
    symmetry: Symmetry,
    levels: int,
) -> Spectrum:
    """Diagonalize one sector at fixed b and label the lowest levels."""
    energies, vectors = diagonalize(basis, mass, potential, b, symmetry)
    entries = tuple(
        basis.entry(vectors[:, k], energies[k]) for k in range(min(levels, energies.size))
    )
    return Spectrum(entries, b, basis.band_max, symmetry)
