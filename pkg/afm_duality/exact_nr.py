"""Exact two- and three-body eigenvalues and the spectrum predictors built on them."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from enum import Enum
from functools import lru_cache

from .afm_core import Flavor, SystemSpec, pair_count, solve_afm
from .const import (
    DEFAULT_BMAX,
    DEFAULT_LEVELS,
    DEFAULT_MESH_POINTS,
    DEFAULT_SALPETER_BASIS,
    MIN_MESH_POINTS,
    MIN_SALPETER_BASIS,
    THREE_BODY_ANGLE,
)
from .potentials import PotentialSpec, as_powerlaw
from .quantum_numbers import QPrescription, StateLabels
from .solvers import mesh, salpeter, three_body
from .solvers.exceptions import (
    AfmError,
    AfmInvalidParameterError,
    AfmPrescriptionError,
    AfmUnsupportedError,
)
from .solvers.moshinsky import shared_table
from .solvers.three_body import Spectrum, SpectrumEntry, Symmetry, ThreeBodyBasis

_LOGGER = logging.getLogger(__name__)

__all__ = [
    "EffectiveMass",
    "MeshConfig",
    "Prediction",
    "Spectrum",
    "SpectrumEntry",
    "Symmetry",
    "ThreeBodyBasisConfig",
    "effective_mass",
    "moshinsky_bracket",
    "predict_spectrum",
    "solve_3b",
    "solve_radial_2b",
    "solve_salpeter_2b",
    "refine_level",
    "spectrum_all",
    "three_body_ground",
    "universal_f_fn",
]


@dataclass(frozen=True)
class MeshConfig:
    """Lagrange mesh size and optional fixed scale h."""

    points: int = DEFAULT_MESH_POINTS
    scale: float | None = None

    def __post_init__(self) -> None:
        if self.points < MIN_MESH_POINTS:
            raise AfmInvalidParameterError(
                f"Mesh needs at least {MIN_MESH_POINTS} points, got {self.points}"
            )
        if self.scale is not None and not (math.isfinite(self.scale) and self.scale > 0):
            raise AfmInvalidParameterError(f"Mesh scale must be positive, got {self.scale}")


@dataclass(frozen=True)
class ThreeBodyBasisConfig:
    """Oscillator basis settings; b is optimized when left unset."""

    b: float | None = None
    band_max: int = DEFAULT_BMAX
    symmetry: Symmetry = Symmetry.BOSONIC
    levels: int = DEFAULT_LEVELS
    optimize_level: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "symmetry", Symmetry(self.symmetry))
        if self.b is not None and not (math.isfinite(self.b) and self.b > 0):
            raise AfmInvalidParameterError(f"Oscillator length must be positive, got {self.b}")
        if self.band_max < 0:
            raise AfmInvalidParameterError(f"Bmax must be non-negative, got {self.band_max}")
        if self.levels < 1 or self.optimize_level < 0:
            raise AfmInvalidParameterError("levels must be >= 1 and optimize_level >= 0")


class EffectiveMass(str, Enum):
    """Which effective mass formula to apply."""

    TWO_BODY = "two_body"
    N_BODY = "n_body"
    BIG_M = "big_M"


class Prediction(str, Enum):
    """Spectrum predictor built on exact ground states."""

    TWO_BODY_F = "two_body_f"
    N_BODY_GS = "n_body_gs"
    N_BODY_VIA_F = "n_body_via_f"
    GS_LINK = "gs_link"


def _check_mass(mass: float) -> float:
    mass = float(mass)
    if not (math.isfinite(mass) and mass > 0):
        raise AfmInvalidParameterError(f"Mass must be positive, got {mass}")
    return mass


def _check_state(n: int, l: int, size: int) -> None:
    if n < 0 or l < 0:
        raise AfmInvalidParameterError(f"Quantum numbers must be non-negative: n={n}, l={l}")
    if n >= size:
        raise AfmInvalidParameterError(f"Basis of {size} states has no level n={n}")


def _mean_radius(spec: SystemSpec, q: float) -> float:
    """AFM mean interparticle distance, or 1 when the AFM has no solution."""
    try:
        radius = solve_afm(spec, q).r0_two_body
    except AfmError as err:
        _LOGGER.debug("No AFM radius for %s (%s); using 1", spec.two_body, err)
        return 1.0
    return radius if radius and math.isfinite(radius) else 1.0


def solve_radial_2b(
    m: float, V: PotentialSpec, n: int, l: int, cfg: MeshConfig | None = None
) -> float:
    """Return the (n, l) eigenvalue of p^2/m + V(r)."""
    m = _check_mass(m)
    cfg = cfg or MeshConfig()
    _check_state(n, l, cfg.points)
    scale = cfg.scale
    if scale is None:
        radius = _mean_radius(
            SystemSpec(Flavor.NONRELATIVISTIC, 2, m, two_body=V), 2 * n + l + 1.5
        )
        guess = mesh.initial_scale(radius, cfg.points)
        scale = mesh.optimal_scale(m, V.value, n, l, cfg.points, guess)
    return mesh.solve_radial(m, V.value, n, l, cfg.points, scale)


def universal_f_fn(V: PotentialSpec, m: float, cfg: MeshConfig | None = None) -> float:
    """Return f(m), the two-body ground state energy of p^2/m + V(r)."""
    return solve_radial_2b(m, V, 0, 0, cfg)


def _q_value(presc: QPrescription, labels: StateLabels) -> float:
    q = presc(labels)
    if not (math.isfinite(q) and q > 0):
        raise AfmPrescriptionError(f"Prescription '{presc.name}' gives Q={q} for {labels}")
    return q


def effective_mass(
    kind: EffectiveMass | str,
    m: float,
    labels: StateLabels,
    presc: QPrescription,
    N: int = 2,
    q2: float | None = None,
) -> float:
    """Return the mass at which the ground state mimics the labelled state.

    ``q2`` overrides the two-body ground state number Q_2; by default it
    is presc(ground) for two_body and presc(ground of N)/(N-1) for big_M.
    """
    kind = EffectiveMass(kind)
    m = _check_mass(m)
    n_bodies = 2 if kind is EffectiveMass.TWO_BODY else N
    if len(labels) != n_bodies - 1:
        raise AfmInvalidParameterError(
            f"{kind.value} needs {n_bodies - 1} label pairs, got {len(labels)}"
        )
    q = _q_value(presc, labels)
    ground = _q_value(presc, StateLabels.ground(n_bodies))

    if kind is EffectiveMass.TWO_BODY:
        q_two = q2 if q2 is not None else ground
        return m * (q_two / q) ** 2
    if kind is EffectiveMass.N_BODY:
        return m * (ground / q) ** 2
    q_two = q2 if q2 is not None else ground / (n_bodies - 1)
    return 2.0 * m / n_bodies * (pair_count(n_bodies) * q_two / q) ** 2


def three_body_ground(
    m: float, V: PotentialSpec, cfg: ThreeBodyBasisConfig | None = None
) -> float:
    """Return the fully symmetric three-body ground state energy.

    Power laws are solved once at unit mass and rescaled by
    m^(-lambda/(lambda+2)).
    """
    m = _check_mass(m)
    cfg = cfg or ThreeBodyBasisConfig(levels=1)
    try:
        _, lam = as_powerlaw(V)
    except AfmInvalidParameterError:
        return _ground(m, V, cfg)
    return _ground(1.0, V, cfg) * m ** (-lam / (lam + 2.0))


@lru_cache(maxsize=32)
def _ground(m: float, V: PotentialSpec, cfg: ThreeBodyBasisConfig) -> float:
    return solve_3b(m, V, 0, 1, cfg)[0].energy


def predict_spectrum(
    mode: Prediction | str,
    m: float,
    labels: StateLabels,
    presc: QPrescription,
    N: int,
    V: PotentialSpec,
    mesh_cfg: MeshConfig | None = None,
    basis_cfg: ThreeBodyBasisConfig | None = None,
) -> float:
    """Predict an exact eigenvalue from a ground state at an effective mass."""
    mode = Prediction(mode)
    if mode is Prediction.TWO_BODY_F:
        mass = effective_mass(EffectiveMass.TWO_BODY, m, labels, presc)
        return universal_f_fn(V, mass, mesh_cfg)
    if mode is Prediction.N_BODY_GS:
        if N != 3:
            raise AfmUnsupportedError(
                f"Exact N-body ground states exist for N=3 only, got {N}"
            )
        mass = effective_mass(EffectiveMass.N_BODY, m, labels, presc, N)
        return three_body_ground(mass, V, basis_cfg)
    if mode is Prediction.N_BODY_VIA_F:
        mass = effective_mass(EffectiveMass.BIG_M, m, labels, presc, N)
        return pair_count(N) * universal_f_fn(V, mass, mesh_cfg)
    return pair_count(N) * universal_f_fn(V, N * _check_mass(m) / 2.0, mesh_cfg)


def moshinsky_bracket(
    n1: int,
    l1: int,
    n2: int,
    l2: int,
    n1p: int,
    l1p: int,
    n2p: int,
    l2p: int,
    L: int,
    angle: float = THREE_BODY_ANGLE,
) -> float:
    """Return <n1 l1 n2 l2; L | n1' l1' n2' l2'; L> for the rotation by ``angle``."""
    values = (n1, l1, n2, l2, n1p, l1p, n2p, l2p, L)
    if min(values) < 0:
        raise AfmInvalidParameterError(f"Quantum numbers must be non-negative: {values}")
    band = 2 * n1 + l1 + 2 * n2 + l2
    if band != 2 * n1p + l1p + 2 * n2p + l2p:
        return 0.0
    if not (abs(l1 - l2) <= L <= l1 + l2 and abs(l1p - l2p) <= L <= l1p + l2p):
        return 0.0
    return shared_table(band, float(angle)).bracket((n1, l1, n2, l2), (n1p, l1p, n2p, l2p), L)


def _oscillator_guess(m: float, V: PotentialSpec) -> float:
    """b such that the basis ground state matches the AFM mean distance."""
    radius = _mean_radius(SystemSpec(Flavor.NONRELATIVISTIC, 3, m, two_body=V), 3.0)
    return radius / math.sqrt(3.0)


def solve_3b(
    m: float,
    V: PotentialSpec,
    L: int = 0,
    parity: int = 1,
    cfg: ThreeBodyBasisConfig | None = None,
) -> Spectrum:
    """Return the lowest levels of three identical particles in one (L, parity) sector."""
    m = _check_mass(m)
    cfg = cfg or ThreeBodyBasisConfig()
    basis = ThreeBodyBasis(cfg.band_max, L, parity)
    if basis.size == 0:
        raise AfmInvalidParameterError(f"No basis states with L={L} and parity {parity:+d}")
    b = cfg.b
    if b is None:
        b = three_body.optimal_length(
            basis, m, V.value, cfg.symmetry, _oscillator_guess(m, V), cfg.optimize_level
        )
    spectrum = three_body.solve_sector(m, V.value, basis, b, cfg.symmetry, cfg.levels)
    _LOGGER.debug(
        "Three-body L=%d parity=%+d: %d levels at b=%.6g", L, parity, len(spectrum), b
    )
    return spectrum


def spectrum_all(
    m: float, V: PotentialSpec, l_max: int, cfg: ThreeBodyBasisConfig | None = None
) -> Spectrum:
    """Pool the levels of every L <= l_max and both parities at a common b."""
    m = _check_mass(m)
    cfg = cfg or ThreeBodyBasisConfig()
    b = cfg.b
    if b is None:
        ground = ThreeBodyBasis(cfg.band_max, 0, 1)
        b = three_body.optimal_length(
            ground, m, V.value, Symmetry.ANY, _oscillator_guess(m, V)
        )

    pooled: Spectrum | None = None
    for total_l in range(l_max + 1):
        for parity in (1, -1):
            basis = ThreeBodyBasis(cfg.band_max, total_l, parity)
            if basis.size == 0:
                continue
            sector = three_body.solve_sector(m, V.value, basis, b, cfg.symmetry, cfg.levels)
            pooled = sector if pooled is None else pooled.merged(sector)
    assert pooled is not None
    return pooled


def refine_level(
    m: float,
    V: PotentialSpec,
    L: int,
    parity: int,
    index: int,
    cfg: ThreeBodyBasisConfig | None = None,
) -> float:
    """Re-solve level ``index`` of one sector with b optimized for that level."""
    cfg = cfg or ThreeBodyBasisConfig()
    tuned = replace(cfg, b=None, optimize_level=index, levels=max(cfg.levels, index + 1))
    return solve_3b(m, V, L, parity, tuned)[index].energy


def solve_salpeter_2b(
    sigma: float,
    m: float,
    V: PotentialSpec,
    n: int,
    l: int,
    basis_size: int = DEFAULT_SALPETER_BASIS,
    b: float | None = None,
) -> float:
    """Return the (n, l) eigenvalue of sigma*sqrt(p^2 + m^2) + V(r)."""
    if not (math.isfinite(sigma) and sigma > 0):
        raise AfmInvalidParameterError(f"sigma must be positive, got {sigma}")
    if not (math.isfinite(m) and m >= 0):
        raise AfmInvalidParameterError(f"Mass must be non-negative, got {m}")
    if basis_size < MIN_SALPETER_BASIS:
        raise AfmInvalidParameterError(
            f"Basis needs at least {MIN_SALPETER_BASIS} states, got {basis_size}"
        )
    _check_state(n, l, basis_size)
    if b is None:
        q = 2 * n + l + 1.5
        radius = _mean_radius(SystemSpec(Flavor.SIGMA_SR, mass=m, two_body=V, sigma=sigma), q)
        b = salpeter.optimal_length(sigma, m, V.value, n, l, basis_size, radius / math.sqrt(q))
    return salpeter.solve_salpeter(sigma, m, V.value, n, l, basis_size, b)
