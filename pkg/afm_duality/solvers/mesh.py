"""Regularized Lagrange-Laguerre mesh for the two-body radial equation.

The radial Hamiltonian p^2/m + V(r) in partial wave l is represented on
the zeros x_i of the Laguerre polynomial L_N, scaled to r_i = h x_i. The
regularized basis vanishes at the origin like r, so Coulomb and
centrifugal singularities need no special care.
"""
from __future__ import annotations

import logging
import math
from functools import lru_cache
from typing import Callable

import numpy as np
from numpy.typing import NDArray
from scipy.linalg import eigvalsh
from scipy.optimize import minimize_scalar
from scipy.special import roots_laguerre

from ..const import MESH_CONVERGENCE, MESH_SCALE_SPAN
from .exceptions import AfmConvergenceError, AfmInvalidParameterError

_LOGGER = logging.getLogger(__name__)

Potential = Callable[[NDArray[np.float64]], NDArray[np.float64]]

# Fraction of the largest mesh point that should cover the classical region.
SPREAD_FACTOR = 4.0


@lru_cache(maxsize=8)
def _mesh(points: int) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Return the Laguerre zeros and the -d^2/dx^2 matrix on them."""
    x, _ = roots_laguerre(points)
    x.setflags(write=False)

    xi = x[:, None]
    xj = x[None, :]
    sign = np.where((np.arange(points)[:, None] + np.arange(points)[None, :]) % 2, -1.0, 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        kinetic = sign * (xi + xj) / (np.sqrt(xi * xj) * (xi - xj) ** 2)
    diagonal = (4.0 + (4.0 * points + 2.0) * x - x**2) / (12.0 * x**2)
    kinetic[np.diag_indices(points)] = diagonal
    kinetic.setflags(write=False)
    return x, kinetic


def radial_levels(
    mass: float, potential: Potential, l: int, points: int, scale: float
) -> NDArray[np.float64]:
    """Return all mesh eigenvalues in ascending order."""
    x, kinetic = _mesh(points)
    r = scale * x
    inertia = mass * scale**2
    diagonal = l * (l + 1) / (inertia * x**2) + np.asarray(potential(r), dtype=float)
    hamiltonian = kinetic / inertia + np.diag(diagonal)
    return eigvalsh(hamiltonian)


def initial_scale(radius: float, points: int) -> float:
    """Scale that maps a few mean radii onto the largest mesh point."""
    x, _ = _mesh(points)
    return SPREAD_FACTOR * radius / float(x[-1])


def optimal_scale(
    mass: float, potential: Potential, n: int, l: int, points: int, guess: float
) -> float:
    """Minimize the requested level over log h around ``guess``."""
    span = MESH_SCALE_SPAN * math.log(10.0) / 2.0
    center = math.log(guess)

    def level(log_scale: float) -> float:
        return float(radial_levels(mass, potential, l, points, math.exp(log_scale))[n])

    result = minimize_scalar(level, bounds=(center - span, center + span), method="bounded")
    scale = math.exp(float(result.x))
    _LOGGER.debug(
        "Mesh scale h=%.6g for n=%d l=%d after %d evaluations (guess %.6g)",
        scale,
        n,
        l,
        result.nfev,
        guess,
    )
    return scale


def solve_radial(
    mass: float,
    potential: Potential,
    n: int,
    l: int,
    points: int,
    scale: float,
) -> float:
    """Return the n-th level in partial wave l, checked against a doubled mesh."""
    if n < 0 or l < 0:
        raise AfmInvalidParameterError(f"Quantum numbers must be non-negative: n={n}, l={l}")
    if n >= points:
        raise AfmInvalidParameterError(f"Mesh of {points} points has no level n={n}")

    coarse = float(radial_levels(mass, potential, l, points, scale)[n])
    fine = float(radial_levels(mass, potential, l, 2 * points, scale)[n])
    if not (math.isfinite(coarse) and math.isfinite(fine)):
        raise AfmConvergenceError("Mesh produced a non-finite level", coarse, fine)
    if abs(fine - coarse) > MESH_CONVERGENCE * max(abs(fine), abs(coarse)):
        raise AfmConvergenceError(
            f"Mesh not converged for n={n} l={l}: {coarse!r} vs {fine!r}", coarse, fine
        )
    return fine
