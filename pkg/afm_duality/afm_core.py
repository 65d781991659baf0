"""Auxiliary field method solutions for N-body systems."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable

from .const import ROOT_TOLERANCE
from .potentials import PotentialSpec, as_powerlaw
from .solvers.exceptions import (
    AfmDomainError,
    AfmExponentMismatchError,
    AfmInvalidParameterError,
    AfmUnsupportedError,
)
from .solvers.roots import find_root

_LOGGER = logging.getLogger(__name__)


class Flavor(str, Enum):
    """Kinematics of the kinetic energy operator."""

    GENERAL_SR = "general_sr"
    ULTRARELATIVISTIC = "ultrarelativistic"
    NONRELATIVISTIC = "nonrelativistic"
    SIGMA_SR = "sigma_sr"


FLAVOR_ALIASES: dict[str, Flavor] = {
    "sr": Flavor.GENERAL_SR,
    "ur": Flavor.ULTRARELATIVISTIC,
    "nr": Flavor.NONRELATIVISTIC,
    "sigma": Flavor.SIGMA_SR,
}


def parse_flavor(text: str) -> Flavor:
    """Return the flavor for a short alias or full name."""
    try:
        return FLAVOR_ALIASES.get(text) or Flavor(text)
    except ValueError as err:
        raise AfmInvalidParameterError(f"Unknown kinematics '{text}'") from err


def pair_count(n_bodies: int) -> float:
    """Return C_N = N(N-1)/2."""
    return n_bodies * (n_bodies - 1) / 2.0


@dataclass(frozen=True)
class SystemSpec:
    """Kinematics, body count, mass and potentials of a system.

    The sigma flavor describes sigma*sqrt(p^2+m^2) + V(r) and uses only
    ``two_body``; ``n_bodies`` is ignored for it.
    """

    flavor: Flavor
    n_bodies: int = 2
    mass: float = 0.0
    one_body: PotentialSpec | None = None
    two_body: PotentialSpec | None = None
    sigma: float | None = None

    def __post_init__(self) -> None:
        flavor = Flavor(self.flavor)
        object.__setattr__(self, "flavor", flavor)
        if not math.isfinite(self.mass) or self.mass < 0:
            raise AfmInvalidParameterError(f"Mass must be finite and >= 0, got {self.mass}")

        if flavor is Flavor.SIGMA_SR:
            if self.sigma is None or not (math.isfinite(self.sigma) and self.sigma > 0):
                raise AfmInvalidParameterError("sigma_sr requires sigma > 0")
            if self.two_body is None or self.one_body is not None:
                raise AfmInvalidParameterError("sigma_sr takes a single potential V")
            return

        if self.sigma is not None:
            raise AfmInvalidParameterError(
                f"sigma only applies to sigma_sr, not {flavor.value}"
            )
        if self.one_body is None and self.two_body is None:
            raise AfmInvalidParameterError("At least one potential is required")
        if int(self.n_bodies) != self.n_bodies or self.n_bodies < 2:
            raise AfmInvalidParameterError(f"N must be an integer >= 2, got {self.n_bodies}")
        if (self.mass == 0) != (flavor is Flavor.ULTRARELATIVISTIC):
            needed = "m = 0" if flavor is Flavor.ULTRARELATIVISTIC else "m > 0"
            raise AfmInvalidParameterError(f"{flavor.value} requires {needed}")

    @property
    def pairs(self) -> float:
        return pair_count(self.n_bodies)


@dataclass(frozen=True)
class AFMSolution:
    """Root of the transcendental equation and the resulting energy."""

    flavor: Flavor
    q: float
    x0: float
    value: float
    r0_one_body: float | None
    r0_two_body: float | None
    iterations: int
    function_calls: int
    residual: float


@dataclass(frozen=True)
class _Terms:
    """Both sides of a transcendental equation evaluated at one X."""

    lhs: float
    rhs: float

    @property
    def gap(self) -> float:
        return self.lhs - self.rhs

    @property
    def residual(self) -> float:
        scale = abs(self.lhs) + abs(self.rhs)
        return abs(self.gap) / scale if scale else 0.0


class _Equation:
    """Transcendental equation and mass formula of one system."""

    def __init__(self, spec: SystemSpec, q: float) -> None:
        self.spec = spec
        self.q = q

    def radii(self, x: float) -> tuple[float | None, float | None]:
        spec, q = self.spec, self.q
        if spec.flavor is Flavor.SIGMA_SR:
            return None, math.sqrt(q / x)
        n = spec.n_bodies
        r1 = math.sqrt(q / (n * x)) if spec.one_body is not None else None
        r2 = math.sqrt(2.0 * q / ((n - 1) * x)) if spec.two_body is not None else None
        return r1, r2

    def _forces(self, x: float) -> float:
        """Return K(r1) + N L(r2)."""
        r1, r2 = self.radii(x)
        total = 0.0
        if r1 is not None and self.spec.one_body is not None:
            total += self.spec.one_body.derivative(r1) / (2.0 * r1)
        if r2 is not None and self.spec.two_body is not None:
            total += self.spec.n_bodies * self.spec.two_body.derivative(r2) / (2.0 * r2)
        return float(total)

    def _potential_energy(self, x: float) -> float:
        spec = self.spec
        r1, r2 = self.radii(x)
        total = 0.0
        if r1 is not None and spec.one_body is not None:
            total += spec.n_bodies * spec.one_body.value(r1)
        if r2 is not None and spec.two_body is not None:
            total += spec.pairs * spec.two_body.value(r2)
        return float(total)

    def terms(self, x: float) -> _Terms:
        spec, q, m = self.spec, self.q, self.spec.mass
        flavor = spec.flavor
        if flavor is Flavor.SIGMA_SR:
            assert spec.sigma is not None and spec.two_body is not None
            r = math.sqrt(q / x)
            kinetic = math.sqrt(1.0 + (m * r / q) ** 2)
            return _Terms(spec.sigma * q, float(r * r * kinetic * spec.two_body.derivative(r)))
        forces = self._forces(x)
        n = spec.n_bodies
        if flavor is Flavor.GENERAL_SR:
            return _Terms(x * x, 2.0 * math.sqrt(m * m + q * x / n) * forces)
        if flavor is Flavor.ULTRARELATIVISTIC:
            return _Terms(math.sqrt(n / q) * x**1.5, 2.0 * forces)
        return _Terms(x * x, 2.0 * m * forces)

    def value(self, x: float) -> float:
        spec, q, m = self.spec, self.q, self.spec.mass
        flavor = spec.flavor
        if flavor is Flavor.SIGMA_SR:
            assert spec.sigma is not None and spec.two_body is not None
            r = math.sqrt(q / x)
            kinetic = spec.sigma * q / r * math.sqrt(1.0 + (m * r / q) ** 2)
            return kinetic + float(spec.two_body.value(r))
        n = spec.n_bodies
        if flavor is Flavor.GENERAL_SR:
            kinetic = n * math.sqrt(m * m + q * x / n)
        elif flavor is Flavor.ULTRARELATIVISTIC:
            kinetic = math.sqrt(n * q * x)
        else:
            kinetic = q * x / (2.0 * m)
        return kinetic + self._potential_energy(x)


def _check_q(q: float) -> float:
    q = float(q)
    if not (math.isfinite(q) and q > 0):
        raise AfmDomainError(f"Principal quantum number must be positive, got {q}")
    return q


def solve_afm(spec: SystemSpec, q: float) -> AFMSolution:
    """Solve the transcendental equation of ``spec`` and evaluate its energy.

    The value is the total mass for the relativistic flavors and the
    binding energy (rest mass removed) for the nonrelativistic one.
    """
    q = _check_q(q)
    equation = _Equation(spec, q)
    root = find_root(lambda x: equation.terms(x).gap)
    terms = equation.terms(root.x)
    if terms.residual > ROOT_TOLERANCE:
        _LOGGER.warning(
            "Residual %.3g above tolerance for %s at Q=%g",
            terms.residual,
            spec.flavor.value,
            q,
        )
    r1, r2 = equation.radii(root.x)
    solution = AFMSolution(
        flavor=spec.flavor,
        q=q,
        x0=root.x,
        value=equation.value(root.x),
        r0_one_body=r1,
        r0_two_body=r2,
        iterations=root.iterations,
        function_calls=root.function_calls,
        residual=terms.residual,
    )
    _LOGGER.debug(
        "AFM %s N=%d Q=%g: X0=%.12g value=%.12g",
        spec.flavor.value,
        spec.n_bodies,
        q,
        solution.x0,
        solution.value,
    )
    return solution


def _invert(func: Callable[[float], float], x: float, what: str) -> float:
    x = float(x)
    if not (math.isfinite(x) and x > 0):
        raise AfmDomainError(f"{what} argument must be positive, got {x}")
    return find_root(lambda r: func(r) - x, require_increasing=True).x


def universal_C(p: PotentialSpec, x: float) -> float:
    """Return C(x), the inverse of r^2 p'(r)."""
    return _invert(lambda r: r * r * float(p.derivative(r)), x, "C")


def universal_F(p: PotentialSpec, x: float) -> float:
    """Return F(x) = x/C(x) + p(C(x))."""
    c = universal_C(p, x)
    return x / c + float(p.value(c))


def universal_D(p: PotentialSpec, x: float) -> float:
    """Return D(x), the inverse of r^3 p'(r)."""
    return _invert(lambda r: r**3 * float(p.derivative(r)), x, "D")


def universal_G(p: PotentialSpec, x: float) -> float:
    """Return G(x) = x/(2 D(x)^2) + p(D(x))."""
    d = universal_D(p, x)
    return x / (2.0 * d * d) + float(p.value(d))


class _ReducedPotential:
    """Z(y) = U(y/sqrt(aN))/C_N + V(sqrt(2/(a(N-1))) y)/N."""

    def __init__(self, spec: SystemSpec, a: float) -> None:
        if not (math.isfinite(a) and a > 0):
            raise AfmInvalidParameterError(f"Reduction parameter must be positive, got {a}")
        self.spec = spec
        self.one_scale = 1.0 / math.sqrt(a * spec.n_bodies)
        self.two_scale = math.sqrt(2.0 / (a * (spec.n_bodies - 1)))

    def value(self, y: float) -> float:
        spec = self.spec
        total = 0.0
        if spec.one_body is not None:
            total += spec.one_body.value(self.one_scale * y) / spec.pairs
        if spec.two_body is not None:
            total += spec.two_body.value(self.two_scale * y) / spec.n_bodies
        return float(total)

    def derivative(self, y: float) -> float:
        spec = self.spec
        total = 0.0
        if spec.one_body is not None:
            total += self.one_scale * spec.one_body.derivative(self.one_scale * y) / spec.pairs
        if spec.two_body is not None:
            total += (
                self.two_scale * spec.two_body.derivative(self.two_scale * y) / spec.n_bodies
            )
        return float(total)


def _require_flavor(spec: SystemSpec, flavor: Flavor) -> None:
    if spec.flavor is not flavor:
        raise AfmUnsupportedError(f"Expected a {flavor.value} system, got {spec.flavor.value}")


def compact_ur(spec: SystemSpec, q: float, a: float = 1.0) -> float:
    """Return M_u = N C_N B_u(sqrt(aN) Q/(N C_N)); independent of ``a``."""
    _require_flavor(spec, Flavor.ULTRARELATIVISTIC)
    q = _check_q(q)
    z = _ReducedPotential(spec, a)
    n, pairs = spec.n_bodies, spec.pairs
    x = math.sqrt(a * n) * q / (n * pairs)
    y = _invert(lambda t: t * t * z.derivative(t), x, "A_u")
    return n * pairs * (x / y + z.value(y))


def compact_nr(spec: SystemSpec, q: float, a: float = 1.0) -> float:
    """Return E = N C_N B_n(a Q^2/(m N C_N)); independent of ``a``."""
    _require_flavor(spec, Flavor.NONRELATIVISTIC)
    q = _check_q(q)
    z = _ReducedPotential(spec, a)
    n, pairs = spec.n_bodies, spec.pairs
    x = a * q * q / (spec.mass * n * pairs)
    y = _invert(lambda t: t**3 * z.derivative(t), x, "A_n")
    return n * pairs * (x / (2.0 * y * y) + z.value(y))


def _powerlaw_terms(spec: SystemSpec) -> tuple[float, float, float]:
    """Return (a, b, lambda) of the one-body and two-body power laws."""
    exponents = set()
    a = b = 0.0
    if spec.one_body is not None:
        a, lam = as_powerlaw(spec.one_body)
        exponents.add(lam)
    if spec.two_body is not None:
        b, lam = as_powerlaw(spec.two_body)
        exponents.add(lam)
    if len(exponents) != 1:
        raise AfmExponentMismatchError(
            f"Power laws must share one exponent, got {sorted(exponents)}"
        )
    return a, b, exponents.pop()


def closed_powerlaw(spec: SystemSpec, q: float) -> float:
    """Closed-form AFM energy for power-law potentials sharing one exponent."""
    q = _check_q(q)
    a, b, lam = _powerlaw_terms(spec)
    n = spec.n_bodies
    big_a = a * abs(lam) * (n / q) ** ((2.0 - lam) / 2.0)
    big_b = b * abs(lam) * n * ((n - 1) / (2.0 * q)) ** ((2.0 - lam) / 2.0)
    total = (big_a + big_b) ** 2

    if spec.flavor is Flavor.NONRELATIVISTIC:
        return (lam + 2.0) / (2.0 * lam) * q * (total / spec.mass**lam) ** (1.0 / (lam + 2.0))
    if spec.flavor is Flavor.ULTRARELATIVISTIC:
        if lam <= -1:
            raise AfmDomainError(
                f"Ultrarelativistic power law needs lambda > -1, got {lam}"
            )
        return (lam + 1.0) / lam * (q ** (lam + 2.0) * n**lam * total) ** (
            1.0 / (2.0 * (lam + 1.0))
        )
    raise AfmUnsupportedError(f"No power-law closed form for {spec.flavor.value}")


def _quadratic_strength(p: PotentialSpec | None) -> float:
    if p is None:
        return 0.0
    coefficient, lam = as_powerlaw(p)
    if lam != 2:
        raise AfmExponentMismatchError(f"Expected a quadratic potential, got lambda={lam}")
    return coefficient


def closed_harmonic(spec: SystemSpec, q: float) -> float:
    """Closed-form AFM energy for harmonic one-body and two-body forces."""
    q = _check_q(q)
    if spec.flavor is Flavor.SIGMA_SR:
        if spec.mass != 0:
            raise AfmUnsupportedError("Harmonic sigma closed form needs m = 0")
        assert spec.sigma is not None
        a = _quadratic_strength(spec.two_body)
        return 3.0 * (math.sqrt(a) * spec.sigma * q / 2.0) ** (2.0 / 3.0)

    k = _quadratic_strength(spec.one_body)
    rho = _quadratic_strength(spec.two_body)
    n = spec.n_bodies
    if spec.flavor is Flavor.ULTRARELATIVISTIC:
        return 1.5 * (2.0 * n * (k + rho * n) * q * q) ** (1.0 / 3.0)
    if spec.flavor is Flavor.NONRELATIVISTIC:
        return math.sqrt(2.0 / spec.mass * (k + rho * n)) * q
    raise AfmUnsupportedError("The semirelativistic oscillator has no closed form here")
