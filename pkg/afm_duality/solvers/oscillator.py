"""Harmonic oscillator radial functions and matrix elements.

Everything is dimensionless: lengths in units of the oscillator length b
and momenta in units of 1/b. Radial functions follow
R_nl(r) = N r^l L_n^(l+1/2)(r^2) exp(-r^2/2), normalized on r^2 dr.
"""
from __future__ import annotations

import math
from functools import lru_cache
from typing import Callable

import numpy as np
from numpy.typing import NDArray
from scipy.special import eval_genlaguerre, gammaln, roots_hermite, roots_legendre

RadialFunction = Callable[[NDArray[np.float64]], NDArray[np.float64]]

# Gaussian tail beyond the outermost classical turning point.
TAIL_MARGIN = 6.0


def norm(n: int, l: int) -> float:
    """Return the normalization constant of R_nl."""
    return math.exp(0.5 * (math.log(2.0) + gammaln(n + 1) - gammaln(n + l + 1.5)))


def radial_function(n: int, l: int, r: NDArray[np.float64]) -> NDArray[np.float64]:
    """Evaluate R_nl on an array of radii."""
    r = np.asarray(r, dtype=float)
    return norm(n, l) * r**l * eval_genlaguerre(n, l + 0.5, r**2) * np.exp(-0.5 * r**2)


def _polynomial_part(n: int, l: int, r: NDArray[np.float64]) -> NDArray[np.float64]:
    """R_nl without its Gaussian factor."""
    return norm(n, l) * r**l * eval_genlaguerre(n, l + 0.5, r**2)


def _laguerre_slope(n: int, l: int, r: NDArray[np.float64]) -> NDArray[np.float64]:
    """Derivative of L_n^(l+1/2) with respect to its argument, at r^2."""
    if n == 0:
        return np.zeros_like(r)
    return -eval_genlaguerre(n - 1, l + 1.5, r**2)


def kinetic_matrix(l: int, size: int) -> NDArray[np.float64]:
    """Return p^2 in the first ``size`` states of partial wave l."""
    n = np.arange(size, dtype=float)
    matrix = np.diag(2.0 * n + l + 1.5)
    upper = np.sqrt((n[:-1] + 1.0) * (n[:-1] + l + 1.5))
    matrix[np.arange(size - 1), np.arange(1, size)] = upper
    matrix[np.arange(1, size), np.arange(size - 1)] = upper
    return matrix


def radial_grid(band_max: int, points: int) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Gauss-Legendre nodes and weights covering every state up to ``band_max``."""
    extent = math.sqrt(2.0 * band_max + 3.0) + TAIL_MARGIN
    nodes, weights = roots_legendre(points)
    return 0.5 * extent * (nodes + 1.0), 0.5 * extent * weights


def radial_matrix(
    l: int,
    size: int,
    func: RadialFunction,
    points: int,
    *,
    phase: bool = False,
) -> NDArray[np.float64]:
    """Return <n'l|f(r)|nl> for the first ``size`` states by quadrature.

    With ``phase`` the elements carry (-1)^(n+n'), which turns the same
    integral into a matrix element of f(p) since the oscillator functions
    are their own Fourier transforms up to that sign.
    """
    r, weights = radial_grid(2 * (size - 1) + l, points)
    basis = np.array([radial_function(n, l, r) for n in range(size)])
    weighted = basis * (weights * r**2 * np.asarray(func(r), dtype=float))
    matrix = weighted @ basis.T
    matrix = 0.5 * (matrix + matrix.T)
    if phase:
        sign = np.where(np.add.outer(np.arange(size), np.arange(size)) % 2, -1.0, 1.0)
        matrix *= sign
    return matrix


@lru_cache(maxsize=4)
def _hermite(points: int) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    nodes, weights = roots_hermite(points)
    keep = nodes > 0
    return nodes[keep], weights[keep]


@lru_cache(maxsize=None)
def reduced_ladder(n_out: int, l_out: int, n_in: int, l_in: int) -> tuple[float, float]:
    """Return the reduced elements <out||a^dagger||in> and <out||a||in>.

    a^dagger = (r - grad)/sqrt(2) raises the band 2n+l by one and a
    lowers it by one; any other pair of states gives zeros. Integrands
    are even polynomials times exp(-r^2), so Gauss-Hermite is exact.
    """
    band_in = 2 * n_in + l_in
    band_out = 2 * n_out + l_out
    if abs(l_out - l_in) != 1 or abs(band_out - band_in) != 1:
        return 0.0, 0.0

    r, weights = _hermite(band_in + band_out + 5)
    bra = _polynomial_part(n_out, l_out, r)
    ket = _polynomial_part(n_in, l_in, r)
    # d/dr of the ket with the Gaussian factored out: R' = (P' - r P) e^(-r^2/2)
    slope = norm(n_in, l_in) * (
        l_in * r ** (l_in - 1) * eval_genlaguerre(n_in, l_in + 0.5, r**2)
        + 2.0 * r ** (l_in + 1) * _laguerre_slope(n_in, l_in, r)
    ) - r * ket

    position = float(np.sum(weights * bra * ket * r**3))
    if l_out == l_in + 1:
        radial_gradient = float(np.sum(weights * bra * (slope - l_in * ket / r) * r**2))
        factor = math.sqrt(l_in + 1)
    else:
        radial_gradient = float(np.sum(weights * bra * (slope + (l_in + 1) * ket / r) * r**2))
        factor = -math.sqrt(l_in)
    position *= factor
    gradient = factor * radial_gradient

    raising = (position - gradient) / math.sqrt(2.0)
    lowering = (position + gradient) / math.sqrt(2.0)
    if band_out == band_in + 1:
        return raising, 0.0
    return 0.0, lowering
