"""Principal quantum number prescriptions."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from scipy.special import ai_zeros

from .const import (
    IMPROVED2B_ALPHA,
    IMPROVED2B_BETA,
    IMPROVED2B_GAMMA,
    PRESET_HO,
    PRESET_IMPROVED2B,
    PRESET_UR2B,
    PRESET_UR3B,
    PRESET_WKB3B,
    PRESETS,
    UR2B_GAMMA,
    WKB3B_ALPHA,
)
from .solvers.exceptions import AfmInvalidParameterError, AfmParseError, AfmPrescriptionError

_LOGGER = logging.getLogger(__name__)

CUSTOM_PREFIX = "custom"


@dataclass(frozen=True)
class StateLabels:
    """Radial and orbital quantum numbers (n_i, l_i) of the N-1 internal coordinates."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        try:
            pairs = tuple((int(n), int(l)) for n, l in self.pairs)
        except (TypeError, ValueError) as err:
            raise AfmInvalidParameterError(f"Malformed state labels: {err}") from err
        if not pairs:
            raise AfmInvalidParameterError("State labels need at least one (n, l) pair")
        for (n, l), raw in zip(pairs, self.pairs):
            if n < 0 or l < 0:
                raise AfmInvalidParameterError(f"Quantum numbers must be non-negative: {raw}")
            if (n, l) != tuple(raw):
                raise AfmInvalidParameterError(f"Quantum numbers must be integers: {raw}")
        object.__setattr__(self, "pairs", pairs)

    @classmethod
    def of(cls, *values: int) -> StateLabels:
        """Build labels from a flat n1, l1, n2, l2, ... sequence."""
        if len(values) % 2:
            raise AfmInvalidParameterError("Labels need an even number of entries")
        return cls(tuple(zip(values[::2], values[1::2])))

    @classmethod
    def ground(cls, n_bodies: int) -> StateLabels:
        """Return the all-zero labels of an n_bodies system."""
        if n_bodies < 2:
            raise AfmInvalidParameterError(f"N must be at least 2, got {n_bodies}")
        return cls(((0, 0),) * (n_bodies - 1))

    @property
    def n_bodies(self) -> int:
        return len(self.pairs) + 1

    @property
    def band(self) -> int:
        """Oscillator band sum of 2n + l."""
        return sum(2 * n + l for n, l in self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def __str__(self) -> str:
        return ",".join(f"{n},{l}" for n, l in self.pairs)


@dataclass(frozen=True)
class QPrescription:
    """Affine map sum(alpha_i n_i + beta_i l_i) + gamma from labels to Q.

    Coefficient tuples of length one apply to every coordinate. ``offset``
    is added once per internal coordinate, which lets the oscillator
    prescription serve any body count.
    """

    alpha: tuple[float, ...]
    beta: tuple[float, ...]
    gamma: float = 0.0
    offset: float = 0.0
    name: str = CUSTOM_PREFIX

    def __post_init__(self) -> None:
        alpha = tuple(float(value) for value in self.alpha)
        beta = tuple(float(value) for value in self.beta)
        if not alpha or not beta:
            raise AfmPrescriptionError("alpha and beta need at least one coefficient")
        for value in alpha + beta:
            if not (math.isfinite(value) and value > 0):
                raise AfmPrescriptionError(f"Coefficients must be positive, got {value}")
        for value in (self.gamma, self.offset):
            if not math.isfinite(value):
                raise AfmPrescriptionError(f"Offsets must be finite, got {value}")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)

    def coefficients(self, size: int) -> tuple[tuple[float, ...], tuple[float, ...]]:
        """Return alpha and beta broadcast to ``size`` coordinates."""
        return _broadcast(self.alpha, size, "alpha"), _broadcast(self.beta, size, "beta")

    def __call__(self, labels: StateLabels) -> float:
        return q_custom(self, labels)


def _broadcast(values: tuple[float, ...], size: int, name: str) -> tuple[float, ...]:
    if len(values) == 1:
        return values * size
    if len(values) != size:
        raise AfmPrescriptionError(
            f"Prescription has {len(values)} {name} coefficients for {size} coordinates"
        )
    return values


def q_ho(labels: StateLabels) -> float:
    """Return the oscillator principal number sum(2n + l) + 3(N-1)/2."""
    return float(labels.band) + 1.5 * len(labels)


def q_custom(presc: QPrescription, labels: StateLabels) -> float:
    """Apply an affine prescription to labels."""
    alpha, beta = presc.coefficients(len(labels))
    total = sum(a * n + b * l for a, b, (n, l) in zip(alpha, beta, labels.pairs))
    return total + presc.gamma + presc.offset * len(labels)


_PRESET_BODIES: dict[str, int | None] = {
    PRESET_HO: None,
    PRESET_IMPROVED2B: 2,
    PRESET_UR2B: 2,
    PRESET_WKB3B: 3,
    PRESET_UR3B: 3,
}


def preset(name: str, n_bodies: int | None = None) -> QPrescription:
    """Return a named prescription, checking the body count when given."""
    if name not in PRESETS:
        raise AfmPrescriptionError(
            f"Unknown prescription '{name}', expected one of {', '.join(PRESETS)}"
        )
    expected = _PRESET_BODIES[name]
    if n_bodies is not None and expected is not None and n_bodies != expected:
        raise AfmPrescriptionError(f"Prescription '{name}' applies to N={expected} only")

    if name == PRESET_HO:
        return QPrescription((2.0,), (1.0,), offset=1.5, name=name)
    if name == PRESET_IMPROVED2B:
        return QPrescription(
            (IMPROVED2B_ALPHA,), (IMPROVED2B_BETA,), IMPROVED2B_GAMMA, name=name
        )
    if name == PRESET_WKB3B:
        return QPrescription((WKB3B_ALPHA,), (1.0,), 3.0, name=name)
    if name == PRESET_UR2B:
        return QPrescription((math.pi / 2,), (1.0,), UR2B_GAMMA, name=name)
    return QPrescription((math.pi / 2,), (1.0,), 3.0, name=name)


def q_coulomb(labels: StateLabels) -> float:
    """Return n + l + 1, exact for the nonrelativistic Coulomb two-body problem."""
    if len(labels) != 1:
        raise AfmPrescriptionError("Coulomb prescription applies to two-body labels")
    n, l = labels.pairs[0]
    return float(n + l + 1)


@lru_cache(maxsize=64)
def _airy_zero(n: int) -> float:
    zeros, _, _, _ = ai_zeros(n + 1)
    return float(zeros[n])


def q_airy(n: int) -> float:
    """Return 2(|a_n|/3)^(3/2) from the (n+1)-th zero of Ai, exact for linear S-states."""
    if n < 0:
        raise AfmInvalidParameterError(f"Radial number must be non-negative, got {n}")
    return 2.0 * (abs(_airy_zero(n)) / 3.0) ** 1.5


def _parse_coefficients(text: str, position: int) -> tuple[float, ...]:
    values = []
    offset = position
    for token in text.split("/"):
        try:
            values.append(float(token))
        except ValueError as err:
            raise AfmParseError(f"Invalid coefficient '{token}'", offset) from err
        offset += len(token) + 1
    return tuple(values)


def parse_prescription(text: str, n_bodies: int | None = None) -> QPrescription:
    """Parse a preset name or ``custom:alpha=a1/a2,beta=b1/b2,gamma=g``."""
    text = text.strip()
    if not text.startswith(CUSTOM_PREFIX):
        return preset(text, n_bodies)

    head = len(CUSTOM_PREFIX)
    if text[head : head + 1] != ":":
        raise AfmParseError("Expected ':' after 'custom'", head)

    fields: dict[str, tuple[float, ...]] = {}
    position = head + 1
    for item in text[head + 1 :].split(","):
        key, sep, value = item.partition("=")
        if not sep:
            raise AfmParseError(f"Expected key=value, got '{item}'", position)
        key = key.strip()
        if key not in ("alpha", "beta", "gamma"):
            raise AfmParseError(f"Unknown prescription key '{key}'", position)
        if key in fields:
            raise AfmParseError(f"Duplicate key '{key}'", position)
        fields[key] = _parse_coefficients(value.strip(), position + len(key) + 1)
        position += len(item) + 1

    missing = [key for key in ("alpha", "beta") if key not in fields]
    if missing:
        raise AfmParseError(f"Missing keys: {', '.join(missing)}", len(text))
    gamma = fields.get("gamma", (0.0,))
    if len(gamma) != 1:
        raise AfmParseError("gamma takes a single value", len(text))
    return QPrescription(fields["alpha"], fields["beta"], gamma[0])


def parse_labels(text: str) -> StateLabels:
    """Parse ``n1,l1[,n2,l2...]`` into state labels."""
    values: list[int] = []
    position = 0
    for token in text.split(","):
        try:
            values.append(int(token))
        except ValueError as err:
            raise AfmParseError(f"Invalid quantum number '{token}'", position) from err
        position += len(token) + 1
    if len(values) % 2:
        raise AfmParseError("Labels need (n, l) pairs", len(text))
    return StateLabels.of(*values)


def all_labels(n_pairs: int, band_max: int) -> Iterable[StateLabels]:
    """Yield every label set with oscillator band at most ``band_max``."""

    def _walk(remaining: int, budget: int) -> Iterable[tuple[tuple[int, int], ...]]:
        if remaining == 0:
            yield ()
            return
        for n in range(budget // 2 + 1):
            for l in range(budget - 2 * n + 1):
                for rest in _walk(remaining - 1, budget - 2 * n - l):
                    yield ((n, l),) + rest

    for pairs in _walk(n_pairs, band_max):
        yield StateLabels(pairs)
