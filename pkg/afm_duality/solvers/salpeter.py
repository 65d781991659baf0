"""Spinless Salpeter equation sigma sqrt(p^2 + m^2) + V(r) in an oscillator basis."""
from __future__ import annotations

import logging
import math
from typing import Callable

import numpy as np
from numpy.typing import NDArray
from scipy.linalg import eigvalsh
from scipy.optimize import minimize_scalar

from ..const import B_SCAN_POINTS, B_SCAN_STEP, SALPETER_CONVERGENCE, SALPETER_QUAD_POINTS
from .exceptions import AfmConvergenceError, AfmInvalidParameterError
from .oscillator import radial_matrix

_LOGGER = logging.getLogger(__name__)

Potential = Callable[[NDArray[np.float64]], NDArray[np.float64]]


def _points(size: int) -> int:
    return max(SALPETER_QUAD_POINTS, 4 * size)


def salpeter_levels(
    sigma: float, mass: float, potential: Potential, l: int, size: int, b: float
) -> NDArray[np.float64]:
    """Return every eigenvalue for ``size`` radial states at oscillator length b."""
    points = _points(size)

    def kinetic(q: NDArray[np.float64]) -> NDArray[np.float64]:
        return sigma * np.sqrt((q / b) ** 2 + mass**2)

    def pair(s: NDArray[np.float64]) -> NDArray[np.float64]:
        return potential(b * s)

    matrix = radial_matrix(l, size, kinetic, points, phase=True)
    matrix += radial_matrix(l, size, pair, points)
    return eigvalsh(matrix)


def optimal_length(
    sigma: float, mass: float, potential: Potential, n: int, l: int, size: int, guess: float
) -> float:
    """Scan b around ``guess`` and refine, minimizing level n."""

    def level(log_b: float) -> float:
        return float(salpeter_levels(sigma, mass, potential, l, size, math.exp(log_b))[n])

    step = math.log(B_SCAN_STEP)
    half = B_SCAN_POINTS // 2
    grid = [math.log(guess) + step * k for k in range(-half, half + 1)]
    scan = [level(point) for point in grid]
    best = int(np.argmin(scan))
    result = minimize_scalar(
        level, bounds=(grid[best] - step, grid[best] + step), method="bounded"
    )
    b = math.exp(float(result.x)) if result.fun <= scan[best] else math.exp(grid[best])
    _LOGGER.debug("Salpeter oscillator length b=%.6g for n=%d l=%d", b, n, l)
    return b


def solve_salpeter(
    sigma: float,
    mass: float,
    potential: Potential,
    n: int,
    l: int,
    size: int,
    b: float,
) -> float:
    """Return level n of partial wave l, checked against a basis half again as large."""
    if n < 0 or l < 0:
        raise AfmInvalidParameterError(f"Quantum numbers must be non-negative: n={n}, l={l}")
    if n >= size:
        raise AfmInvalidParameterError(f"Basis of {size} states has no level n={n}")

    coarse = float(salpeter_levels(sigma, mass, potential, l, size, b)[n])
    fine = float(salpeter_levels(sigma, mass, potential, l, math.ceil(1.5 * size), b)[n])
    if abs(fine - coarse) > SALPETER_CONVERGENCE * max(abs(fine), abs(coarse)):
        raise AfmConvergenceError(
            f"Salpeter basis not converged for n={n} l={l}: {coarse!r} vs {fine!r}",
            coarse,
            fine,
        )
    return fine
