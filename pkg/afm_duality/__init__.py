"""Auxiliary field method energies, their duality relations and exact checks."""
from __future__ import annotations

from .afm_core import (
    AFMSolution,
    Flavor,
    SystemSpec,
    closed_harmonic,
    closed_powerlaw,
    compact_nr,
    compact_ur,
    solve_afm,
    universal_C,
    universal_D,
    universal_F,
    universal_G,
)
from .duality import (
    DualityCheckReport,
    DualityRelation,
    RelationId,
    bridge_verify,
    catalog,
    sweep,
    transform_params,
    verify_relation,
)
from .potentials import PotentialSpec, make_potential, parse_potential
from .quantum_numbers import QPrescription, StateLabels, parse_prescription, preset
from .solvers.exceptions import AfmError

__version__ = "0.1.0"

__all__ = [
    "AFMSolution",
    "AfmError",
    "DualityCheckReport",
    "DualityRelation",
    "Flavor",
    "PotentialSpec",
    "QPrescription",
    "RelationId",
    "StateLabels",
    "SystemSpec",
    "bridge_verify",
    "catalog",
    "closed_harmonic",
    "closed_powerlaw",
    "compact_nr",
    "compact_ur",
    "make_potential",
    "parse_potential",
    "parse_prescription",
    "preset",
    "solve_afm",
    "sweep",
    "transform_params",
    "universal_C",
    "universal_D",
    "universal_F",
    "universal_G",
    "verify_relation",
]
