"""Bracketed root finding shared by the AFM solvers."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable

from scipy.optimize import brentq

from ..const import (
    BRACKET_FACTOR,
    BRACKET_MAX,
    BRACKET_MIN,
    BRACKET_START,
    BRENT_RTOL,
    MAX_ITERATIONS,
)
from .exceptions import AfmConvergenceError, AfmNoBracketError, AfmNonMonotoneError

_LOGGER = logging.getLogger(__name__)

MONOTONE_SLACK = 1e-12


@dataclass(frozen=True)
class RootResult:
    """Root of a scalar function with solver diagnostics."""

    x: float
    iterations: int
    function_calls: int
    bracket: tuple[float, float]


def _sign(value: float) -> int:
    if value > 0:
        return 1
    if value < 0:
        return -1
    return 0


def scan_bracket(
    func: Callable[[float], float],
    *,
    start: float = BRACKET_START,
    factor: float = BRACKET_FACTOR,
    lower: float = BRACKET_MIN,
    upper: float = BRACKET_MAX,
    require_increasing: bool = False,
) -> tuple[float, float]:
    """Expand geometrically from start until func changes sign.

    Points are visited alternately above and below ``start``. With
    ``require_increasing`` every visited value must exceed the values at
    smaller arguments, otherwise AfmNonMonotoneError is raised.
    """
    samples: dict[float, float] = {start: func(start)}
    if samples[start] == 0.0:
        return start, start

    hi = lo = start
    while True:
        moved = False
        if hi * factor <= upper * (1 + 1e-12):
            nxt = hi * factor
            samples[nxt] = func(nxt)
            moved = True
            if _sign(samples[hi]) * _sign(samples[nxt]) <= 0 and _is_finite(
                samples[hi], samples[nxt]
            ):
                _check_increasing(samples, require_increasing)
                _LOGGER.debug("Bracket found in [%g, %g]", hi, nxt)
                return hi, nxt
            hi = nxt
        if lo / factor >= lower * (1 - 1e-12):
            nxt = lo / factor
            samples[nxt] = func(nxt)
            moved = True
            if _sign(samples[nxt]) * _sign(samples[lo]) <= 0 and _is_finite(
                samples[lo], samples[nxt]
            ):
                _check_increasing(samples, require_increasing)
                _LOGGER.debug("Bracket found in [%g, %g]", nxt, lo)
                return nxt, lo
            lo = nxt
        if not moved:
            break

    _check_increasing(samples, require_increasing)
    raise AfmNoBracketError(
        f"No sign change found for arguments in [{lower:g}, {upper:g}]"
    )


def _is_finite(*values: float) -> bool:
    return all(not math.isnan(value) for value in values)


def _check_increasing(samples: dict[float, float], required: bool) -> None:
    if not required:
        return
    ordered = [samples[key] for key in sorted(samples)]
    for left, right in zip(ordered, ordered[1:]):
        if not right > left + MONOTONE_SLACK * abs(left):
            raise AfmNonMonotoneError(
                "Function is not strictly increasing over the bracket scan"
            )


def find_root(
    func: Callable[[float], float],
    *,
    require_increasing: bool = False,
    start: float = BRACKET_START,
) -> RootResult:
    """Scan for a bracket and polish the root with Brent's method."""
    lo, hi = scan_bracket(func, start=start, require_increasing=require_increasing)
    if lo == hi:
        return RootResult(lo, 0, 1, (lo, hi))

    try:
        root, info = brentq(
            func,
            lo,
            hi,
            xtol=lo * 1e-15,
            rtol=BRENT_RTOL,
            maxiter=MAX_ITERATIONS,
            full_output=True,
            disp=False,
        )
    except (ValueError, RuntimeError) as err:
        raise AfmConvergenceError(f"Root polishing failed: {err}") from err

    if not info.converged:
        raise AfmConvergenceError(
            f"No convergence after {info.iterations} iterations ({info.flag})",
            lo,
            hi,
        )
    _LOGGER.debug(
        "Root %.15g after %d iterations (%d calls)",
        root,
        info.iterations,
        info.function_calls,
    )
    return RootResult(float(root), info.iterations, info.function_calls, (lo, hi))
