"""Validation schemas for command-line requests."""
from __future__ import annotations

import math
from typing import Any, Callable

import voluptuous as vol

from .afm_core import parse_flavor
from .const import (
    DEFAULT_BMAX,
    DEFAULT_LEVELS,
    DEFAULT_MESH_POINTS,
    DEFAULT_SALPETER_BASIS,
    DUALITY_TOLERANCE,
    MIN_MESH_POINTS,
    MIN_SALPETER_BASIS,
    OUTPUT_CSV,
    OUTPUT_JSON,
    PRESET_HO,
    TABLES,
)
from .duality import RelationId
from .exact_nr import Prediction, Symmetry
from .potentials import parse_potential
from .quantum_numbers import parse_labels, parse_prescription
from .solvers.exceptions import AfmError, AfmInvalidParameterError

CONF_KINEMATICS = "kinematics"
CONF_N = "N"
CONF_MASS = "m"
CONF_SIGMA = "sigma"
CONF_Q = "Q"
CONF_ONE_BODY = "one_body"
CONF_TWO_BODY = "two_body"
CONF_LABELS = "labels"
CONF_PRESCRIPTION = "q_prescription"
CONF_METHOD = "method"
CONF_RELATION = "relation"
CONF_P = "p"
CONF_BETA = "beta"
CONF_C = "c"
CONF_TOL = "tol"
CONF_SEED = "seed"
CONF_COUNT = "count"
CONF_JOBS = "jobs"
CONF_POTENTIALS = "potentials"
CONF_POINTS = "points"
CONF_SCALE = "scale"
CONF_L = "L"
CONF_PARITY = "parity"
CONF_BMAX = "bmax"
CONF_B = "b"
CONF_SYMMETRY = "symmetry"
CONF_LEVELS = "levels"
CONF_BASIS = "basis"
CONF_MODE = "mode"
CONF_TARGET = "target"
CONF_FUNCTION = "function"
CONF_START = "start"
CONF_STOP = "stop"
CONF_NUM = "num"
CONF_OUTPUT = "output"
CONF_OUT = "out"

METHODS = ("afm", "compact", "closed_powerlaw", "closed_harmonic")
UNIVERSAL_FUNCTIONS = ("f", "F", "G", "C", "D")


def finite_float(value: Any) -> float:
    """Coerce to a finite real."""
    try:
        number = float(value)
    except (TypeError, ValueError) as err:
        raise vol.Invalid(f"expected a real number, got {value!r}") from err
    if not math.isfinite(number):
        raise vol.Invalid(f"expected a finite real, got {value!r}")
    return number


def _wrap(parser: Callable[[str], Any]) -> Callable[[Any], Any]:
    """Turn a library parser into a validator keeping its message."""

    def validate(value: Any) -> Any:
        try:
            return parser(str(value))
        except AfmError as err:
            raise vol.Invalid(str(err)) from err

    return validate


POSITIVE = vol.All(finite_float, vol.Range(min=0, min_included=False))
NON_NEGATIVE = vol.All(finite_float, vol.Range(min=0))
BODY_COUNT = vol.All(vol.Coerce(int), vol.Range(min=2))
COUNT = vol.All(vol.Coerce(int), vol.Range(min=1))
NON_NEGATIVE_INT = vol.All(vol.Coerce(int), vol.Range(min=0))
EXPONENT = vol.All(vol.Coerce(int), vol.Range(min=2))
SEED = vol.All(vol.Coerce(int), vol.Range(min=0, max=2**64 - 1))
POTENTIAL = _wrap(parse_potential)
LABELS = _wrap(parse_labels)
FLAVOR = _wrap(parse_flavor)
OPTIONAL_POTENTIAL = vol.Any(None, POTENTIAL)

OUTPUT_SCHEMA = {
    vol.Optional(CONF_OUTPUT, default=OUTPUT_JSON): vol.In([OUTPUT_JSON, OUTPUT_CSV]),
    vol.Optional(CONF_OUT, default=None): vol.Any(None, str),
    vol.Optional(CONF_JOBS, default=None): vol.Any(None, COUNT),
}

SOLVE_SCHEMA = vol.Schema(
    {
        vol.Required(CONF_KINEMATICS): FLAVOR,
        vol.Optional(CONF_N, default=2): BODY_COUNT,
        vol.Optional(CONF_MASS, default=0.0): NON_NEGATIVE,
        vol.Optional(CONF_SIGMA, default=None): vol.Any(None, POSITIVE),
        vol.Optional(CONF_Q, default=None): vol.Any(None, POSITIVE),
        vol.Optional(CONF_LABELS, default=None): vol.Any(None, LABELS),
        vol.Optional(CONF_PRESCRIPTION, default=PRESET_HO): str,
        vol.Optional(CONF_ONE_BODY, default=None): OPTIONAL_POTENTIAL,
        vol.Optional(CONF_TWO_BODY, default=None): OPTIONAL_POTENTIAL,
        vol.Optional(CONF_METHOD, default="afm"): vol.In(METHODS),
        **OUTPUT_SCHEMA,
    },
    extra=vol.ALLOW_EXTRA,
)

DUALITY_VERIFY_SCHEMA = vol.Schema(
    {
        vol.Required(CONF_RELATION): vol.All(str, vol.Coerce(RelationId)),
        vol.Optional(CONF_N, default=2): BODY_COUNT,
        vol.Optional(CONF_MASS, default=0.0): NON_NEGATIVE,
        vol.Optional(CONF_Q, default=None): vol.Any(None, POSITIVE),
        vol.Optional(CONF_LABELS, default=None): vol.Any(None, LABELS),
        vol.Optional(CONF_PRESCRIPTION, default=PRESET_HO): str,
        vol.Optional(CONF_ONE_BODY, default=None): OPTIONAL_POTENTIAL,
        vol.Optional(CONF_TWO_BODY, default=None): OPTIONAL_POTENTIAL,
        vol.Optional(CONF_P, default=None): vol.Any(None, EXPONENT),
        vol.Optional(CONF_SIGMA, default=None): vol.Any(None, POSITIVE),
        vol.Optional(CONF_BETA, default=None): vol.Any(None, finite_float),
        vol.Optional(CONF_C, default=None): vol.Any(None, POSITIVE),
        vol.Optional(CONF_TOL, default=DUALITY_TOLERANCE): POSITIVE,
        **OUTPUT_SCHEMA,
    },
    extra=vol.ALLOW_EXTRA,
)

DUALITY_SWEEP_SCHEMA = vol.Schema(
    {
        vol.Optional(CONF_SEED, default=0): SEED,
        vol.Optional(CONF_COUNT, default=200): COUNT,
        vol.Optional(CONF_TOL, default=DUALITY_TOLERANCE): POSITIVE,
        vol.Optional(CONF_POTENTIALS, default=None): vol.Any(None, [POTENTIAL]),
        vol.Optional(CONF_RELATION, default=None): vol.Any(
            None, vol.All(str, vol.Coerce(RelationId))
        ),
        **OUTPUT_SCHEMA,
    },
    extra=vol.ALLOW_EXTRA,
)

EXACT_2B_SCHEMA = vol.Schema(
    {
        vol.Required(CONF_MASS): POSITIVE,
        vol.Required(CONF_TWO_BODY): POTENTIAL,
        vol.Optional(CONF_LABELS, default="0,0"): LABELS,
        vol.Optional(CONF_POINTS, default=DEFAULT_MESH_POINTS): vol.All(
            vol.Coerce(int), vol.Range(min=MIN_MESH_POINTS)
        ),
        vol.Optional(CONF_SCALE, default=None): vol.Any(None, POSITIVE),
        **OUTPUT_SCHEMA,
    },
    extra=vol.ALLOW_EXTRA,
)

EXACT_3B_SCHEMA = vol.Schema(
    {
        vol.Required(CONF_MASS): POSITIVE,
        vol.Required(CONF_TWO_BODY): POTENTIAL,
        vol.Optional(CONF_L, default=0): NON_NEGATIVE_INT,
        vol.Optional(CONF_PARITY, default=1): vol.All(vol.Coerce(int), vol.In([1, -1])),
        vol.Optional(CONF_BMAX, default=DEFAULT_BMAX): NON_NEGATIVE_INT,
        vol.Optional(CONF_B, default=None): vol.Any(None, POSITIVE),
        vol.Optional(CONF_SYMMETRY, default=Symmetry.BOSONIC.value): vol.All(
            str, vol.Coerce(Symmetry)
        ),
        vol.Optional(CONF_LEVELS, default=DEFAULT_LEVELS): COUNT,
        **OUTPUT_SCHEMA,
    },
    extra=vol.ALLOW_EXTRA,
)

SALPETER_2B_SCHEMA = vol.Schema(
    {
        vol.Optional(CONF_SIGMA, default=2.0): POSITIVE,
        vol.Optional(CONF_MASS, default=0.0): NON_NEGATIVE,
        vol.Required(CONF_TWO_BODY): POTENTIAL,
        vol.Optional(CONF_LABELS, default="0,0"): LABELS,
        vol.Optional(CONF_BASIS, default=DEFAULT_SALPETER_BASIS): vol.All(
            vol.Coerce(int), vol.Range(min=MIN_SALPETER_BASIS)
        ),
        **OUTPUT_SCHEMA,
    },
    extra=vol.ALLOW_EXTRA,
)

PREDICT_SCHEMA = vol.Schema(
    {
        vol.Required(CONF_MODE): vol.All(str, vol.Coerce(Prediction)),
        vol.Required(CONF_MASS): POSITIVE,
        vol.Optional(CONF_N, default=2): BODY_COUNT,
        vol.Required(CONF_TWO_BODY): POTENTIAL,
        vol.Optional(CONF_LABELS, default=None): vol.Any(None, LABELS),
        vol.Optional(CONF_PRESCRIPTION, default=PRESET_HO): str,
        **OUTPUT_SCHEMA,
    },
    extra=vol.ALLOW_EXTRA,
)

TABLE_SCHEMA = vol.Schema(
    {
        vol.Required(CONF_TARGET): vol.In(TABLES),
        vol.Optional(CONF_PRESCRIPTION, default=None): vol.Any(None, str),
        **OUTPUT_SCHEMA,
    },
    extra=vol.ALLOW_EXTRA,
)

UNIVERSAL_SCHEMA = vol.Schema(
    {
        vol.Required(CONF_FUNCTION): vol.In(UNIVERSAL_FUNCTIONS),
        vol.Required(CONF_TWO_BODY): POTENTIAL,
        vol.Optional(CONF_START, default=0.1): POSITIVE,
        vol.Optional(CONF_STOP, default=10.0): POSITIVE,
        vol.Optional(CONF_NUM, default=50): COUNT,
        **OUTPUT_SCHEMA,
    },
    extra=vol.ALLOW_EXTRA,
)

SCHEMAS: dict[str, vol.Schema] = {
    "solve": SOLVE_SCHEMA,
    "duality-verify": DUALITY_VERIFY_SCHEMA,
    "duality-sweep": DUALITY_SWEEP_SCHEMA,
    "exact-2b": EXACT_2B_SCHEMA,
    "exact-3b": EXACT_3B_SCHEMA,
    "salpeter-2b": SALPETER_2B_SCHEMA,
    "predict": PREDICT_SCHEMA,
    "table": TABLE_SCHEMA,
    "universal": UNIVERSAL_SCHEMA,
}


def validate_request(command: str, options: dict[str, Any]) -> dict[str, Any]:
    """Validate raw flag values for ``command``, dropping unset flags first."""
    try:
        schema = SCHEMAS[command]
    except KeyError as err:
        raise AfmInvalidParameterError(f"Unknown command '{command}'") from err
    present = {key: value for key, value in options.items() if value is not None}
    try:
        validated: dict[str, Any] = schema(present)
    except vol.Invalid as err:
        raise AfmInvalidParameterError(f"Invalid input: {err}") from err
    if command != "table" and CONF_PRESCRIPTION in validated:
        try:
            validated[CONF_PRESCRIPTION] = parse_prescription(
                validated[CONF_PRESCRIPTION], validated.get(CONF_N)
            )
        except AfmError as err:
            raise AfmInvalidParameterError(f"Invalid input: {err}") from err
    return validated
