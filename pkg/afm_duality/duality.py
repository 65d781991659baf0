"""Catalog and verification of AFM duality relations.

Every relation is a data record: the kinematics it holds in, which
potential the left-hand system carries, how the right-hand system is
built, and a formula mapping (N, m, Q) to the right-hand parameters and
the multiplier with LHS = multiplier * RHS.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Mapping, NamedTuple, Sequence

import numpy as np

from .afm_core import Flavor, SystemSpec, pair_count, solve_afm
from .const import (
    DUALITY_TOLERANCE,
    SWEEP_BETA_RANGE,
    SWEEP_C_RANGE,
    SWEEP_M_RANGE,
    SWEEP_N_RANGE,
    SWEEP_P_RANGE,
    SWEEP_POTENTIALS,
    SWEEP_Q_RANGE,
    SWEEP_SIGMA_RANGE,
)
from .coordinator import SweepCoordinator, SweepSummary
from .potentials import (
    PotentialSpec,
    pair_equivalent,
    parse_potential,
    scale_amplitude,
    sqrt_transform,
)
from .solvers.exceptions import (
    AfmDomainError,
    AfmError,
    AfmInvalidParameterError,
    AfmMissingParameterError,
)

_LOGGER = logging.getLogger(__name__)


class RelationId(str, Enum):
    """Identifiers of the catalogued duality relations."""

    GEN_1B_NP = "GEN_1B_NP"
    GEN_1B_SIGMA = "GEN_1B_SIGMA"
    GEN_1B_SIGMA4N = "GEN_1B_SIGMA4N"
    GEN_2B_NP = "GEN_2B_NP"
    GEN_2B_SIGMA = "GEN_2B_SIGMA"
    GEN_2B_SAMEMASS = "GEN_2B_SAMEMASS"
    GEN_2B_SAMEQ = "GEN_2B_SAMEQ"
    GEN_12_LINK = "GEN_12_LINK"
    UR_1B_NP = "UR_1B_NP"
    UR_1B_SIGMA = "UR_1B_SIGMA"
    UR_1B_ONE2ONE = "UR_1B_ONE2ONE"
    UR_2B_NP = "UR_2B_NP"
    UR_2B_SIGMA = "UR_2B_SIGMA"
    UR_2B_ONE2ONE = "UR_2B_ONE2ONE"
    UR_12_LINK = "UR_12_LINK"
    NR_SCALE = "NR_SCALE"
    NR_1B_NP = "NR_1B_NP"
    NR_1B_SAMEQ = "NR_1B_SAMEQ"
    NR_1B_BETA = "NR_1B_BETA"
    NR_2B_NP = "NR_2B_NP"
    NR_2B_ALT = "NR_2B_ALT"
    NR_2B_SAMEMASS = "NR_2B_SAMEMASS"
    NR_2B_SAMEQ = "NR_2B_SAMEQ"
    NR_12_LINK = "NR_12_LINK"
    NR_12_LINK_SAMEQ = "NR_12_LINK_SAMEQ"
    NR_12_LINK_SAMEMASS = "NR_12_LINK_SAMEMASS"
    BRIDGE_1B = "BRIDGE_1B"
    BRIDGE_2B = "BRIDGE_2B"


class Kinematics(str, Enum):
    """Regime a relation holds in."""

    GENERAL = "general"
    ULTRARELATIVISTIC = "ultrarelativistic"
    NONRELATIVISTIC = "nonrelativistic"
    BRIDGE = "bridge"


class Body(str, Enum):
    """Which potential a system carries."""

    ONE = "one"
    TWO = "two"
    ANY = "any"


class PotentialMap(str, Enum):
    """How the right-hand potential derives from the left-hand one."""

    SAME = "same"
    PAIR_EQUIVALENT = "pair_equivalent"
    SCALE_BY_C = "scale_by_c"
    BRIDGE = "bridge"


LHS_FLAVORS: dict[Kinematics, Flavor] = {
    Kinematics.GENERAL: Flavor.GENERAL_SR,
    Kinematics.ULTRARELATIVISTIC: Flavor.ULTRARELATIVISTIC,
    Kinematics.NONRELATIVISTIC: Flavor.NONRELATIVISTIC,
    Kinematics.BRIDGE: Flavor.NONRELATIVISTIC,
}

RHS_FLAVORS: dict[Kinematics, Flavor] = {
    Kinematics.GENERAL: Flavor.GENERAL_SR,
    Kinematics.ULTRARELATIVISTIC: Flavor.ULTRARELATIVISTIC,
    Kinematics.NONRELATIVISTIC: Flavor.NONRELATIVISTIC,
    Kinematics.BRIDGE: Flavor.ULTRARELATIVISTIC,
}


class _Inputs(NamedTuple):
    n: int
    m: float
    q: float
    p: int
    sigma: float
    beta: float
    c: float


class _Mapped(NamedTuple):
    n_bodies: int | None
    sigma: float | None
    mass: float
    q: float
    multiplier: float


@dataclass(frozen=True)
class RelationRule:
    """Catalog record describing one duality relation."""

    id: RelationId
    kinematics: Kinematics
    lhs_body: Body
    potential_map: PotentialMap
    required: tuple[str, ...]
    formula: Callable[[_Inputs], _Mapped] = field(repr=False, compare=False)
    summary: str = ""


# Formula building blocks


def _one_body_np(i: _Inputs, mass: float) -> _Mapped:
    return _Mapped(i.p, None, mass, i.p * i.q / i.n, i.n / i.p)


def _one_body_sigma(i: _Inputs, mass: float) -> _Mapped:
    return _Mapped(None, i.sigma, 2.0 * mass / i.sigma, 4.0 * i.q / (i.sigma * i.n), i.n / 2.0)


def _one_body_one_to_one(i: _Inputs, mass: float) -> _Mapped:
    return _Mapped(None, 4.0 / i.n, i.n * mass / 2.0, i.q, i.n / 2.0)


def _two_body_np(i: _Inputs, mass: float) -> _Mapped:
    ratio = (i.p - 1) / (i.n - 1)
    cn, cp = pair_count(i.n), pair_count(i.p)
    return _Mapped(i.p, None, ratio * mass, ratio * math.sqrt(cp / cn) * i.q, cn / cp)


def _two_body_sigma(i: _Inputs, mass: float) -> _Mapped:
    cn = pair_count(i.n)
    scale = i.sigma * (i.n - 1)
    return _Mapped(None, i.sigma, 2.0 * mass / scale, 2.0 * i.q / (scale * math.sqrt(cn)), cn)


def _two_body_same_q(i: _Inputs, mass: float) -> _Mapped:
    cn = pair_count(i.n)
    return _Mapped(None, 2.0 / ((i.n - 1) * math.sqrt(cn)), math.sqrt(cn) * mass, i.q, cn)


def _link(i: _Inputs, mass: float) -> _Mapped:
    cn = pair_count(i.n)
    return _Mapped(
        i.n,
        None,
        2.0 * i.c * mass / (i.n - 1),
        4.0 * i.c * math.sqrt(cn) * i.q / (i.n - 1) ** 2,
        (i.n - 1) / (2.0 * i.c),
    )


def _nr_link(i: _Inputs, beta: float) -> _Mapped:
    return _Mapped(
        i.n,
        None,
        beta**2 * (i.n - 1) ** 2 * i.m / (4.0 * i.c * i.n),
        abs(beta) * i.q,
        (i.n - 1) / (2.0 * i.c),
    )


def _beta_bodies(i: _Inputs) -> _Mapped:
    p = i.n / i.beta
    if abs(p - round(p)) > 1e-9 or round(p) < 2:
        raise AfmInvalidParameterError(
            f"N/beta must be an integer >= 2, got N={i.n}, beta={i.beta}"
        )
    return _Mapped(round(p), None, i.beta**2 * i.m, i.q, i.beta)


def _pair_ratio(i: _Inputs) -> float:
    return pair_count(i.n) / pair_count(i.p)


def _rule(
    rid: RelationId,
    kinematics: Kinematics,
    body: Body,
    potential_map: PotentialMap,
    required: tuple[str, ...],
    formula: Callable[[_Inputs], _Mapped],
    summary: str,
) -> RelationRule:
    return RelationRule(rid, kinematics, body, potential_map, required, formula, summary)


_G, _U, _N, _B = (
    Kinematics.GENERAL,
    Kinematics.ULTRARELATIVISTIC,
    Kinematics.NONRELATIVISTIC,
    Kinematics.BRIDGE,
)
_ONE, _TWO, _ANY = Body.ONE, Body.TWO, Body.ANY
_SAME, _PAIR, _SCALE = PotentialMap.SAME, PotentialMap.PAIR_EQUIVALENT, PotentialMap.SCALE_BY_C

# fmt: off
CATALOG: dict[RelationId, RelationRule] = {
    rule.id: rule
    for rule in (
        _rule(RelationId.GEN_1B_NP, _G, _ONE, _SAME, ("p",),
              lambda i: _one_body_np(i, i.m),
              "M(N; m, Q) = N/p M(p; m, pQ/N)"),
        _rule(RelationId.GEN_1B_SIGMA, _G, _ONE, _PAIR, ("sigma",),
              lambda i: _one_body_sigma(i, i.m),
              "M(N; m, Q) = N/2 Ms(sigma; 2m/sigma, 4Q/(sigma N))"),
        _rule(RelationId.GEN_1B_SIGMA4N, _G, _ONE, _PAIR, (),
              lambda i: _one_body_one_to_one(i, i.m),
              "M(N; m, Q) = N/2 Ms(4/N; Nm/2, Q)"),
        _rule(RelationId.GEN_2B_NP, _G, _TWO, _SAME, ("p",),
              lambda i: _two_body_np(i, i.m),
              "M(N; m, Q) = C_N/C_p M(p; (p-1)m/(N-1), (p-1)/(N-1) sqrt(C_p/C_N) Q)"),
        _rule(RelationId.GEN_2B_SIGMA, _G, _TWO, _SAME, ("sigma",),
              lambda i: _two_body_sigma(i, i.m),
              "M(N; m, Q) = C_N Ms(sigma; 2m/(sigma(N-1)), 2Q/(sigma(N-1)sqrt(C_N)))"),
        _rule(RelationId.GEN_2B_SAMEMASS, _G, _TWO, _SAME, (),
              lambda i: _Mapped(None, 2.0 / (i.n - 1), i.m, i.q / math.sqrt(pair_count(i.n)),
                                pair_count(i.n)),
              "M(N; m, Q) = C_N Ms(2/(N-1); m, Q/sqrt(C_N))"),
        _rule(RelationId.GEN_2B_SAMEQ, _G, _TWO, _SAME, (),
              lambda i: _two_body_same_q(i, i.m),
              "M(N; m, Q) = C_N Ms(2/((N-1)sqrt(C_N)); sqrt(C_N) m, Q)"),
        _rule(RelationId.GEN_12_LINK, _G, _TWO, _SCALE, ("c",),
              lambda i: _link(i, i.m),
              "M(N; m, Q) = (N-1)/(2c) M~(N; 2cm/(N-1), 4c sqrt(C_N) Q/(N-1)^2), U = cV"),
        _rule(RelationId.UR_1B_NP, _U, _ONE, _SAME, ("p",),
              lambda i: _one_body_np(i, 0.0),
              "Mu(N; Q) = N/p Mu(p; pQ/N)"),
        _rule(RelationId.UR_1B_SIGMA, _U, _ONE, _PAIR, ("sigma",),
              lambda i: _one_body_sigma(i, 0.0),
              "Mu(N; Q) = N/2 Mus(sigma; 4Q/(sigma N))"),
        _rule(RelationId.UR_1B_ONE2ONE, _U, _ONE, _PAIR, (),
              lambda i: _one_body_one_to_one(i, 0.0),
              "Mu(N; Q) = N/2 Mus(4/N; Q)"),
        _rule(RelationId.UR_2B_NP, _U, _TWO, _SAME, ("p",),
              lambda i: _two_body_np(i, 0.0),
              "Mu(N; Q) = C_N/C_p Mu(p; (p-1)/(N-1) sqrt(C_p/C_N) Q)"),
        _rule(RelationId.UR_2B_SIGMA, _U, _TWO, _SAME, ("sigma",),
              lambda i: _two_body_sigma(i, 0.0),
              "Mu(N; Q) = C_N Mus(sigma; 2Q/(sigma(N-1)sqrt(C_N)))"),
        _rule(RelationId.UR_2B_ONE2ONE, _U, _TWO, _SAME, (),
              lambda i: _two_body_same_q(i, 0.0),
              "Mu(N; Q) = C_N Mus(2/((N-1)sqrt(C_N)); Q)"),
        _rule(RelationId.UR_12_LINK, _U, _TWO, _SCALE, ("c",),
              lambda i: _link(i, 0.0),
              "Mu(N; Q) = (N-1)/(2c) Mu~(N; 4c sqrt(C_N) Q/(N-1)^2), U = cV"),
        _rule(RelationId.NR_SCALE, _N, _ANY, _SAME, ("beta",),
              lambda i: _Mapped(i.n, None, i.beta**2 * i.m, abs(i.beta) * i.q, 1.0),
              "E(N; m, Q) = E(N; beta^2 m, beta Q)"),
        _rule(RelationId.NR_1B_NP, _N, _ONE, _SAME, ("p",),
              lambda i: _one_body_np(i, i.m),
              "E(N; m, Q) = N/p E(p; m, pQ/N)"),
        _rule(RelationId.NR_1B_SAMEQ, _N, _ONE, _SAME, ("p",),
              lambda i: _Mapped(i.p, None, (i.n / i.p) ** 2 * i.m, i.q, i.n / i.p),
              "E(N; m, Q) = N/p E(p; N^2 m/p^2, Q)"),
        _rule(RelationId.NR_1B_BETA, _N, _ONE, _SAME, ("beta",),
              _beta_bodies,
              "E(beta p; m, Q) = beta E(p; beta^2 m, Q)"),
        _rule(RelationId.NR_2B_NP, _N, _TWO, _SAME, ("p",),
              lambda i: _two_body_np(i, i.m),
              "E(N; m, Q) = C_N/C_p E(p; (p-1)m/(N-1), (p-1)/(N-1) sqrt(C_p/C_N) Q)"),
        _rule(RelationId.NR_2B_ALT, _N, _TWO, _SAME, ("p",),
              lambda i: _Mapped(i.p, None, i.p * i.m / i.n, i.q / _pair_ratio(i),
                                _pair_ratio(i)),
              "E(N; m, Q) = C_N/C_p E(p; pm/N, C_p Q/C_N)"),
        _rule(RelationId.NR_2B_SAMEMASS, _N, _TWO, _SAME, ("p",),
              lambda i: _Mapped(i.p, None, i.m,
                                (i.p - 1) / (i.n - 1) * math.sqrt(i.p / i.n) * i.q,
                                _pair_ratio(i)),
              "E(N; m, Q) = C_N/C_p E(p; m, (p-1)/(N-1) sqrt(p/N) Q)"),
        _rule(RelationId.NR_2B_SAMEQ, _N, _TWO, _SAME, ("p",),
              lambda i: _Mapped(i.p, None, (i.n - 1) * _pair_ratio(i) / (i.p - 1) * i.m, i.q,
                                _pair_ratio(i)),
              "E(N; m, Q) = C_N/C_p E(p; (N-1)C_N/((p-1)C_p) m, Q)"),
        _rule(RelationId.NR_12_LINK, _N, _TWO, _SCALE, ("c", "beta"),
              lambda i: _nr_link(i, i.beta),
              "E(N; m, Q) = (N-1)/(2c) E~(N; beta^2 (N-1)^2 m/(4cN), beta Q), U = cV"),
        _rule(RelationId.NR_12_LINK_SAMEQ, _N, _TWO, _SCALE, ("c",),
              lambda i: _nr_link(i, 1.0),
              "E(N; m, Q) = (N-1)/(2c) E~(N; (N-1)^2 m/(4cN), Q), U = cV"),
        _rule(RelationId.NR_12_LINK_SAMEMASS, _N, _TWO, _SCALE, ("c",),
              lambda i: _nr_link(i, 2.0 * math.sqrt(i.c * i.n) / (i.n - 1)),
              "E(N; m, Q) = (N-1)/(2c) E~(N; m, 2 sqrt(cN) Q/(N-1)), U = cV"),
        _rule(RelationId.BRIDGE_1B, _B, _ONE, PotentialMap.BRIDGE, (),
              lambda i: _Mapped(i.n, None, 0.0, i.q, 1.0),
              "E(N; m, Q) = Mu(N; Q) with W(r) = U(sqrt(Q r/(2mN)))"),
        _rule(RelationId.BRIDGE_2B, _B, _TWO, PotentialMap.BRIDGE, (),
              lambda i: _Mapped(i.n, None, 0.0, i.q, 1.0),
              "E(N; m, Q) = Mu(N; Q) with W(r) = V(sqrt(Q r/(2m sqrt(C_N))))"),
    )
}
# fmt: on


def catalog() -> list[RelationRule]:
    """Return the catalog records in declaration order."""
    return [CATALOG[rid] for rid in RelationId]


def _check_free_param(name: str, value: float) -> float:
    if name == "p":
        if int(value) != value or value < 2:
            raise AfmInvalidParameterError(f"p must be an integer >= 2, got {value}")
        return int(value)
    value = float(value)
    if not math.isfinite(value):
        raise AfmInvalidParameterError(f"{name} must be finite, got {value}")
    if name == "beta" and value == 0:
        raise AfmInvalidParameterError("beta must be non-zero")
    if name in ("sigma", "c") and value <= 0:
        raise AfmInvalidParameterError(f"{name} must be positive, got {value}")
    return value


@dataclass(frozen=True)
class DualityRelation:
    """A catalog relation with its free parameters bound."""

    id: RelationId
    free_params: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        rid = RelationId(self.id)
        rule = CATALOG[rid]
        missing = [name for name in rule.required if name not in self.free_params]
        if missing:
            raise AfmMissingParameterError(
                f"{rid.value} requires free parameters: {', '.join(missing)}"
            )
        extra = set(self.free_params) - set(rule.required)
        if extra:
            raise AfmInvalidParameterError(
                f"{rid.value} does not take: {', '.join(sorted(extra))}"
            )
        params = {
            name: _check_free_param(name, self.free_params[name]) for name in rule.required
        }
        object.__setattr__(self, "id", rid)
        object.__setattr__(self, "free_params", params)

    def __hash__(self) -> int:
        return hash((self.id, tuple(sorted(self.free_params.items()))))

    @property
    def rule(self) -> RelationRule:
        return CATALOG[self.id]


@dataclass(frozen=True)
class TargetSystem:
    """Right-hand system descriptor of a relation."""

    flavor: Flavor
    n_bodies: int | None
    sigma: float | None
    potential_map: PotentialMap


@dataclass(frozen=True)
class MappedParams:
    """Right-hand parameters with LHS = multiplier * RHS."""

    target: TargetSystem
    mass: float
    q: float
    multiplier: float


def transform_params(
    rel: DualityRelation, n_bodies: int, mass: float, q: float
) -> MappedParams:
    """Map the left-hand (N, m, Q) to the right-hand system parameters."""
    params = rel.free_params
    inputs = _Inputs(
        n=n_bodies,
        m=mass,
        q=q,
        p=int(params.get("p", 0)),
        sigma=params.get("sigma", 0.0),
        beta=params.get("beta", 0.0),
        c=params.get("c", 0.0),
    )
    rule = rel.rule
    mapped = rule.formula(inputs)
    flavor = Flavor.SIGMA_SR if mapped.sigma is not None else RHS_FLAVORS[rule.kinematics]
    target = TargetSystem(flavor, mapped.n_bodies, mapped.sigma, rule.potential_map)
    return MappedParams(target, mapped.mass, mapped.q, mapped.multiplier)


def bridge_build(
    p: PotentialSpec, body: Body | str, n_bodies: int, mass: float, q: float
) -> PotentialSpec:
    """Return W(r) = p(alpha sqrt(r)) turning E(N; m, Q) into Mu(N; Q)."""
    body = Body(body)
    if not (mass > 0 and q > 0):
        raise AfmDomainError(f"Bridge needs m > 0 and Q > 0, got m={mass}, Q={q}")
    if body is Body.ONE:
        alpha_sq = q / (2.0 * mass * n_bodies)
    elif body is Body.TWO:
        alpha_sq = q / (2.0 * mass * math.sqrt(pair_count(n_bodies)))
    else:
        raise AfmInvalidParameterError("Bridge needs a one-body or two-body potential")
    return sqrt_transform(p, math.sqrt(alpha_sq))


@dataclass(frozen=True)
class DualityCheckReport:
    """Both sides of a relation and their residuals.

    ``error`` is set when a side could not be solved; the values are then NaN.
    """

    relation: DualityRelation
    n_bodies: int
    mass: float
    q: float
    potential: str
    tol: float
    mapped: MappedParams | None = None
    lhs_value: float = math.nan
    rhs_value: float = math.nan
    error: str | None = None

    @property
    def abs_residual(self) -> float:
        return abs(self.lhs_value - self.rhs_value)

    @property
    def rel_residual(self) -> float:
        scale = max(abs(self.lhs_value), abs(self.rhs_value))
        if scale == 0:
            return 0.0
        return self.abs_residual / scale

    @property
    def passed(self) -> bool:
        return self.error is None and self.rel_residual <= self.tol


def _lhs_potentials(rule: RelationRule, spec: SystemSpec) -> None:
    if spec.flavor is not LHS_FLAVORS[rule.kinematics]:
        raise AfmInvalidParameterError(
            f"{rule.id.value} needs a {LHS_FLAVORS[rule.kinematics].value} system, "
            f"got {spec.flavor.value}"
        )
    has_one, has_two = spec.one_body is not None, spec.two_body is not None
    if rule.lhs_body is Body.ONE and (not has_one or has_two):
        raise AfmInvalidParameterError(f"{rule.id.value} needs a one-body potential only")
    if rule.lhs_body is Body.TWO and (not has_two or has_one):
        raise AfmInvalidParameterError(f"{rule.id.value} needs a two-body potential only")


def _rhs_spec(
    rel: DualityRelation, spec: SystemSpec, mapped: MappedParams, q: float
) -> SystemSpec:
    target = mapped.target
    one_body, two_body = spec.one_body, spec.two_body
    if target.potential_map is PotentialMap.PAIR_EQUIVALENT:
        assert one_body is not None
        one_body, two_body = None, pair_equivalent(one_body)
    elif target.potential_map is PotentialMap.SCALE_BY_C:
        assert two_body is not None
        one_body, two_body = scale_amplitude(two_body, rel.free_params["c"]), None
    elif target.potential_map is PotentialMap.BRIDGE:
        if one_body is not None:
            one_body = bridge_build(one_body, Body.ONE, spec.n_bodies, spec.mass, q)
        if two_body is not None:
            two_body = bridge_build(two_body, Body.TWO, spec.n_bodies, spec.mass, q)

    if target.sigma is not None:
        return SystemSpec(
            Flavor.SIGMA_SR, mass=mapped.mass, two_body=two_body, sigma=target.sigma
        )
    assert target.n_bodies is not None
    return SystemSpec(
        target.flavor,
        n_bodies=target.n_bodies,
        mass=mapped.mass,
        one_body=one_body,
        two_body=two_body,
    )


def _solve_side(spec: SystemSpec, q: float, side: str) -> float:
    try:
        return solve_afm(spec, q).value
    except AfmError as err:
        err.side = side
        raise


def _describe(spec: SystemSpec) -> str:
    parts = []
    if spec.one_body is not None:
        parts.append(f"U={spec.one_body}")
    if spec.two_body is not None:
        parts.append(f"V={spec.two_body}")
    return " ".join(parts)


def verify_relation(
    rel: DualityRelation, spec: SystemSpec, q: float, tol: float = DUALITY_TOLERANCE
) -> DualityCheckReport:
    """Evaluate both sides of ``rel`` with the AFM solver and compare them."""
    rule = rel.rule
    _lhs_potentials(rule, spec)
    mapped = transform_params(rel, spec.n_bodies, spec.mass, q)
    rhs_spec = _rhs_spec(rel, spec, mapped, q)

    lhs = _solve_side(spec, q, "lhs")
    rhs = mapped.multiplier * _solve_side(rhs_spec, mapped.q, "rhs")
    report = DualityCheckReport(
        relation=rel,
        n_bodies=spec.n_bodies,
        mass=spec.mass,
        q=q,
        potential=_describe(spec),
        tol=tol,
        mapped=mapped,
        lhs_value=lhs,
        rhs_value=rhs,
    )
    if not report.passed:
        _LOGGER.warning(
            "%s failed: lhs=%.15g rhs=%.15g (rel %.3g)",
            rel.id.value,
            lhs,
            rhs,
            report.rel_residual,
        )
    return report


def bridge_verify(
    p: PotentialSpec,
    body: Body | str,
    n_bodies: int,
    mass: float,
    q: float,
    tol: float = DUALITY_TOLERANCE,
) -> DualityCheckReport:
    """Compare E(N; m, Q) for ``p`` with Mu(N; Q) for its bridged potential."""
    body = Body(body)
    if body is Body.ONE:
        spec = SystemSpec(Flavor.NONRELATIVISTIC, n_bodies, mass, one_body=p)
        rel = DualityRelation(RelationId.BRIDGE_1B)
    else:
        spec = SystemSpec(Flavor.NONRELATIVISTIC, n_bodies, mass, two_body=p)
        rel = DualityRelation(RelationId.BRIDGE_2B)
    return verify_relation(rel, spec, q, tol)


class SweepItem(NamedTuple):
    """One randomized duality check."""

    relation: DualityRelation
    spec: SystemSpec
    q: float
    tol: float = DUALITY_TOLERANCE


def check_instance(item: SweepItem) -> DualityCheckReport:
    """Run one sweep check, turning solver failures into failed reports."""
    try:
        return verify_relation(item.relation, item.spec, item.q, item.tol)
    except AfmError as err:
        _LOGGER.warning("%s raised: %s", item.relation.id.value, err)
        return DualityCheckReport(
            relation=item.relation,
            n_bodies=item.spec.n_bodies,
            mass=item.spec.mass,
            q=item.q,
            potential=_describe(item.spec),
            tol=item.tol,
            error=str(err),
        )


def _uniform(rng: np.random.Generator, bounds: tuple[float, float]) -> float:
    return float(rng.uniform(*bounds))


def _integer(rng: np.random.Generator, bounds: tuple[int, int]) -> int:
    return int(rng.integers(bounds[0], bounds[1] + 1))


def _sample(
    rng: np.random.Generator, rule: RelationRule, potential: PotentialSpec, tol: float
) -> SweepItem:
    n = _integer(rng, SWEEP_N_RANGE)
    params: dict[str, float] = {}
    for name in rule.required:
        if name == "p":
            params["p"] = _integer(rng, SWEEP_P_RANGE)
        elif name == "sigma":
            params["sigma"] = _uniform(rng, SWEEP_SIGMA_RANGE)
        elif name == "c":
            params["c"] = _uniform(rng, SWEEP_C_RANGE)
        elif rule.id is RelationId.NR_1B_BETA:
            params["beta"] = n / _integer(rng, (2, n))
        else:
            params["beta"] = _uniform(rng, SWEEP_BETA_RANGE)

    kinematics = rule.kinematics
    mass = 0.0 if kinematics is Kinematics.ULTRARELATIVISTIC else _uniform(rng, SWEEP_M_RANGE)
    q = _uniform(rng, SWEEP_Q_RANGE)

    body = rule.lhs_body
    if body is Body.ANY:
        body = (Body.ONE, Body.TWO, Body.ANY)[int(rng.integers(3))]
    one_body = potential if body in (Body.ONE, Body.ANY) else None
    two_body = potential if body in (Body.TWO, Body.ANY) else None
    spec = SystemSpec(LHS_FLAVORS[kinematics], n, mass, one_body, two_body)
    return SweepItem(DualityRelation(rule.id, params), spec, q, tol)


def random_instances(
    seed: int,
    count: int,
    potentials: Sequence[str | PotentialSpec] = SWEEP_POTENTIALS,
    relations: Sequence[RelationId] | None = None,
    tol: float = DUALITY_TOLERANCE,
) -> list[SweepItem]:
    """Return ``count`` seeded instances per relation and potential."""
    rng = np.random.default_rng(seed)
    parsed = [p if isinstance(p, PotentialSpec) else parse_potential(p) for p in potentials]
    items = []
    for rid in relations or list(RelationId):
        rule = CATALOG[RelationId(rid)]
        for potential in parsed:
            items.extend(_sample(rng, rule, potential, tol) for _ in range(count))
    return items


def sweep(
    seed: int,
    count: int,
    tol: float = DUALITY_TOLERANCE,
    jobs: int | None = None,
    potentials: Sequence[str | PotentialSpec] = SWEEP_POTENTIALS,
    relations: Sequence[RelationId] | None = None,
) -> SweepSummary:
    """Verify seeded random instances of the catalog across a worker pool."""
    items = random_instances(seed, count, potentials, relations, tol)
    _LOGGER.debug("Sweeping %d duality instances (seed %d)", len(items), seed)
    return SweepCoordinator(jobs).run(check_instance, items)


def ur_linear_mass(n_bodies: int, a: float, q: float) -> float:
    """Near-exact ultrarelativistic masses for a one-body linear potential (N = 2, 3)."""
    if n_bodies == 2:
        return math.sqrt(8.0 * a * q)
    if n_bodies == 3:
        return math.sqrt(32.0 / math.pi * a * q)
    raise AfmInvalidParameterError(f"No fitted formula for N={n_bodies}")


@dataclass(frozen=True)
class CrossDualityFactor:
    """Q-independent ratios testing the N <-> p duality on fitted masses."""

    forward: float
    reverse: float

    @property
    def forward_deviation(self) -> float:
        return abs(self.forward - 1.0)

    @property
    def reverse_deviation(self) -> float:
        return abs(self.reverse - 1.0)


def cross_duality_factor(a: float = 1.0, q: float = 3.0) -> CrossDualityFactor:
    """Compare (3/2) M2(2Q/3) with M3(Q) and (2/3) M3(3Q/2) with M2(Q)."""
    forward = 1.5 * ur_linear_mass(2, a, 2.0 * q / 3.0) / ur_linear_mass(3, a, q)
    reverse = 2.0 / 3.0 * ur_linear_mass(3, a, 1.5 * q) / ur_linear_mass(2, a, q)
    return CrossDualityFactor(forward, reverse)
