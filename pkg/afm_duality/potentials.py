"""Radial potential family shared by every solver."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Mapping, TypeVar

import numpy as np
import voluptuous as vol

from .solvers.exceptions import (
    AfmDomainError,
    AfmInvalidParameterError,
    AfmParseError,
)

_LOGGER = logging.getLogger(__name__)

ArrayOrFloat = TypeVar("ArrayOrFloat", float, np.ndarray)


class PotentialKind(str, Enum):
    """Supported radial potential shapes."""

    LINEAR = "linear"
    QUADRATIC = "quadratic"
    COULOMB = "coulomb"
    POWERLAW = "powerlaw"
    FUNNEL = "funnel"
    SQRTWELL = "sqrtwell"
    SQRT_TRANSFORMED = "sqrt_transformed"


FINITE_AT_ORIGIN = frozenset(
    {PotentialKind.LINEAR, PotentialKind.QUADRATIC, PotentialKind.SQRTWELL}
)


def _finite(value: float) -> float:
    if not math.isfinite(value):
        raise vol.Invalid("must be a finite real")
    return value


def _nonzero(value: float) -> float:
    if value == 0:
        raise vol.Invalid("exponent lambda must be non-zero")
    return value


_POSITIVE = vol.All(
    vol.Coerce(float),
    _finite,
    vol.Range(min=0, min_included=False, msg="must be strictly positive"),
)
_NON_NEGATIVE = vol.All(
    vol.Coerce(float), _finite, vol.Range(min=0, msg="must be non-negative")
)
_EXPONENT = vol.All(
    vol.Coerce(float),
    _finite,
    vol.Range(min=-1, max=2, msg="exponent lambda must lie in [-1, 2]"),
    _nonzero,
)

PARAMETER_SCHEMAS: dict[PotentialKind, vol.Schema] = {
    PotentialKind.LINEAR: vol.Schema({vol.Required("a"): _POSITIVE}),
    PotentialKind.QUADRATIC: vol.Schema({vol.Required("k"): _POSITIVE}),
    PotentialKind.COULOMB: vol.Schema({vol.Required("a"): _POSITIVE}),
    PotentialKind.POWERLAW: vol.Schema(
        {vol.Required("a"): _POSITIVE, vol.Required("lambda"): _EXPONENT}
    ),
    PotentialKind.FUNNEL: vol.Schema(
        {vol.Required("a"): _POSITIVE, vol.Required("b"): _POSITIVE}
    ),
    PotentialKind.SQRTWELL: vol.Schema({vol.Required("a"): _NON_NEGATIVE}),
    PotentialKind.SQRT_TRANSFORMED: vol.Schema({vol.Required("alpha"): _POSITIVE}),
}


@dataclass(frozen=True)
class PotentialSpec:
    """A member of the radial potential family.

    Instances are validated on construction and never mutated afterwards.
    """

    kind: PotentialKind
    params: Mapping[str, float] = field(default_factory=dict)
    inner: PotentialSpec | None = None

    def __post_init__(self) -> None:
        try:
            kind = PotentialKind(self.kind)
        except ValueError as err:
            raise AfmInvalidParameterError(
                f"Unknown potential kind '{self.kind}'"
            ) from err
        try:
            params = PARAMETER_SCHEMAS[kind](dict(self.params))
        except vol.Invalid as err:
            raise AfmInvalidParameterError(f"{kind.value}: {err}") from err

        if kind is PotentialKind.SQRT_TRANSFORMED and self.inner is None:
            raise AfmInvalidParameterError("sqrt_transformed requires an inner potential")
        if kind is not PotentialKind.SQRT_TRANSFORMED and self.inner is not None:
            raise AfmInvalidParameterError(f"{kind.value} takes no inner potential")

        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "params", params)

    def __hash__(self) -> int:
        return hash((self.kind, tuple(sorted(self.params.items())), self.inner))

    def __str__(self) -> str:
        return format_potential(self)

    @property
    def finite_at_origin(self) -> bool:
        """Return True when V(0) is finite."""
        return self.kind in FINITE_AT_ORIGIN

    def value(self, r: ArrayOrFloat) -> ArrayOrFloat:
        """Evaluate V(r) without domain checks (vectorized)."""
        p = self.params
        kind = self.kind
        if kind is PotentialKind.LINEAR:
            return p["a"] * r
        if kind is PotentialKind.QUADRATIC:
            return p["k"] * r * r
        if kind is PotentialKind.COULOMB:
            return -p["a"] / r
        if kind is PotentialKind.POWERLAW:
            lam = p["lambda"]
            return math.copysign(p["a"], lam) * r**lam
        if kind is PotentialKind.FUNNEL:
            return -p["a"] / r + p["b"] * r
        if kind is PotentialKind.SQRTWELL:
            return np.sqrt(r * r + p["a"])
        assert self.inner is not None
        return self.inner.value(p["alpha"] * np.sqrt(r))

    def derivative(self, r: ArrayOrFloat) -> ArrayOrFloat:
        """Evaluate dV/dr without domain checks (vectorized)."""
        p = self.params
        kind = self.kind
        if kind is PotentialKind.LINEAR:
            return p["a"] + 0.0 * r
        if kind is PotentialKind.QUADRATIC:
            return 2.0 * p["k"] * r
        if kind is PotentialKind.COULOMB:
            return p["a"] / (r * r)
        if kind is PotentialKind.POWERLAW:
            lam = p["lambda"]
            return p["a"] * abs(lam) * r ** (lam - 1.0)
        if kind is PotentialKind.FUNNEL:
            return p["a"] / (r * r) + p["b"]
        if kind is PotentialKind.SQRTWELL:
            return r / np.sqrt(r * r + p["a"])
        assert self.inner is not None
        alpha = p["alpha"]
        root = np.sqrt(r)
        return alpha / (2.0 * root) * self.inner.derivative(alpha * root)


def make_potential(
    kind: str | PotentialKind, inner: PotentialSpec | None = None, **params: float
) -> PotentialSpec:
    """Build a potential from keyword parameters ("lambda" is spelled lam)."""
    if "lam" in params:
        params["lambda"] = params.pop("lam")
    return PotentialSpec(PotentialKind(kind), params, inner)


def _check_radius(p: PotentialSpec, r: float, *, allow_origin: bool) -> float:
    r = float(r)
    if not math.isfinite(r):
        raise AfmDomainError(f"Radius must be finite, got {r}")
    if r < 0 or (r == 0 and not allow_origin):
        raise AfmDomainError(f"{p.kind.value} is not defined at r={r}")
    return r


def eval_potential(p: PotentialSpec, r: float) -> float:
    """Return V(r); r=0 is accepted for potentials finite at the origin."""
    r = _check_radius(p, r, allow_origin=p.finite_at_origin)
    return float(p.value(r))


def deriv_potential(p: PotentialSpec, r: float) -> float:
    """Return dV/dr at r>0."""
    r = _check_radius(p, r, allow_origin=False)
    return float(p.derivative(r))


def sqrt_transform(p: PotentialSpec, alpha: float) -> PotentialSpec:
    """Return W(r) = p(alpha*sqrt(r)), simplified for power laws."""
    if not (math.isfinite(alpha) and alpha > 0):
        raise AfmInvalidParameterError(f"alpha must be strictly positive, got {alpha}")
    kind = p.kind
    params = p.params
    if kind is PotentialKind.QUADRATIC:
        return make_potential(PotentialKind.LINEAR, a=params["k"] * alpha**2)
    if kind is PotentialKind.LINEAR:
        return make_potential(PotentialKind.POWERLAW, a=params["a"] * alpha, lam=0.5)
    if kind is PotentialKind.COULOMB:
        return make_potential(PotentialKind.POWERLAW, a=params["a"] / alpha, lam=-0.5)
    if kind is PotentialKind.POWERLAW:
        lam = params["lambda"]
        return make_potential(
            PotentialKind.POWERLAW, a=params["a"] * alpha**lam, lam=lam / 2.0
        )
    return make_potential(PotentialKind.SQRT_TRANSFORMED, inner=p, alpha=alpha)


def scale_amplitude(p: PotentialSpec, factor: float) -> PotentialSpec:
    """Return factor*V(r) within the family."""
    if not (math.isfinite(factor) and factor > 0):
        raise AfmInvalidParameterError(f"Amplitude factor must be positive, got {factor}")
    kind = p.kind
    params = dict(p.params)
    if kind is PotentialKind.SQRTWELL:
        raise AfmInvalidParameterError("sqrtwell is not closed under amplitude scaling")
    if kind is PotentialKind.SQRT_TRANSFORMED:
        assert p.inner is not None
        return PotentialSpec(kind, params, scale_amplitude(p.inner, factor))
    key = "k" if kind is PotentialKind.QUADRATIC else "a"
    params[key] *= factor
    if kind is PotentialKind.FUNNEL:
        params["b"] *= factor
    return PotentialSpec(kind, params)


def pair_equivalent(p: PotentialSpec) -> PotentialSpec:
    """Return V(r) = 2*U(r/2), the pair potential mirroring a one-body U."""
    kind = p.kind
    params = dict(p.params)
    if kind is PotentialKind.LINEAR:
        return PotentialSpec(kind, params)
    if kind is PotentialKind.QUADRATIC:
        return make_potential(kind, k=params["k"] / 2.0)
    if kind is PotentialKind.COULOMB:
        return make_potential(kind, a=4.0 * params["a"])
    if kind is PotentialKind.POWERLAW:
        lam = params["lambda"]
        return make_potential(kind, a=2.0 * params["a"] * 2.0 ** (-lam), lam=lam)
    if kind is PotentialKind.FUNNEL:
        return make_potential(kind, a=4.0 * params["a"], b=params["b"])
    if kind is PotentialKind.SQRTWELL:
        return make_potential(kind, a=4.0 * params["a"])
    assert p.inner is not None
    return make_potential(
        kind,
        inner=scale_amplitude(p.inner, 2.0),
        alpha=params["alpha"] / math.sqrt(2.0),
    )


def as_powerlaw(p: PotentialSpec) -> tuple[float, float]:
    """Return (coefficient, exponent) for potentials of pure power form."""
    params = p.params
    if p.kind is PotentialKind.LINEAR:
        return params["a"], 1.0
    if p.kind is PotentialKind.QUADRATIC:
        return params["k"], 2.0
    if p.kind is PotentialKind.COULOMB:
        return params["a"], -1.0
    if p.kind is PotentialKind.POWERLAW:
        return params["a"], params["lambda"]
    raise AfmInvalidParameterError(f"{p.kind.value} is not a power law")


def format_potential(p: PotentialSpec) -> str:
    """Render a potential in the kind:key=value mini-language."""
    parts = [f"{key}={value!r}" for key, value in p.params.items()]
    if p.inner is not None:
        parts.append(f"inner=({format_potential(p.inner)})")
    return f"{p.kind.value}:{','.join(parts)}"


class _PotentialParser:
    """Recursive descent parser for the potential mini-language."""

    def __init__(self, text: str) -> None:
        self._text = text
        self._pos = 0

    def parse(self) -> PotentialSpec:
        spec = self._potential()
        self._skip_spaces()
        if self._pos != len(self._text):
            raise AfmParseError("Unexpected trailing input", self._pos)
        return spec

    def _potential(self) -> PotentialSpec:
        self._skip_spaces()
        start = self._pos
        name = self._identifier()
        try:
            kind = PotentialKind(name)
        except ValueError as err:
            raise AfmParseError(f"Unknown potential kind '{name}'", start) from err

        params: dict[str, Any] = {}
        inner: PotentialSpec | None = None
        if self._peek() == ":":
            self._pos += 1
            while True:
                self._skip_spaces()
                key_pos = self._pos
                key = self._identifier()
                if key in params or (key == "inner" and inner is not None):
                    raise AfmParseError(f"Duplicate key '{key}'", key_pos)
                self._expect("=")
                if key == "inner":
                    self._expect("(")
                    inner = self._potential()
                    self._expect(")")
                else:
                    params[key] = self._number()
                self._skip_spaces()
                if self._peek() != ",":
                    break
                self._pos += 1
        return PotentialSpec(kind, params, inner)

    def _peek(self) -> str:
        return self._text[self._pos] if self._pos < len(self._text) else ""

    def _skip_spaces(self) -> None:
        while self._peek().isspace() and self._peek():
            self._pos += 1

    def _expect(self, char: str) -> None:
        self._skip_spaces()
        if self._peek() != char:
            raise AfmParseError(f"Expected '{char}'", self._pos)
        self._pos += 1

    def _identifier(self) -> str:
        start = self._pos
        while self._peek() and (self._peek().isalnum() or self._peek() == "_"):
            self._pos += 1
        if start == self._pos:
            raise AfmParseError("Expected a name", start)
        return self._text[start : self._pos]

    def _number(self) -> float:
        self._skip_spaces()
        start = self._pos
        while self._peek() and self._peek() not in ",)" and not self._peek().isspace():
            self._pos += 1
        token = self._text[start : self._pos]
        try:
            return float(token)
        except ValueError as err:
            raise AfmParseError(f"Invalid number '{token}'", start) from err


def parse_potential(text: str) -> PotentialSpec:
    """Parse ``kind:key=value[,key=value...]`` into a validated spec.

    The inner potential of ``sqrt_transformed`` is given in parentheses,
    e.g. ``sqrt_transformed:alpha=2,inner=(quadratic:k=1)``.
    """
    spec = _PotentialParser(text).parse()
    _LOGGER.debug("Parsed potential %s", spec)
    return spec
