"""Tests for labels and principal quantum number prescriptions."""
from __future__ import annotations

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from afm_duality.quantum_numbers import (
    QPrescription,
    StateLabels,
    all_labels,
    parse_labels,
    parse_prescription,
    preset,
    q_airy,
    q_coulomb,
    q_ho,
)
from afm_duality.solvers.exceptions import (
    AfmInvalidParameterError,
    AfmParseError,
    AfmPrescriptionError,
)

pairs = st.lists(
    st.tuples(st.integers(0, 6), st.integers(0, 6)), min_size=1, max_size=5
)


@pytest.mark.parametrize(
    ("labels", "expected"),
    [
        (StateLabels.of(0, 0), 1.5),
        (StateLabels.of(1, 0), 3.5),
        (StateLabels.of(0, 0, 0, 0), 3.0),
    ],
)
def test_q_ho(labels: StateLabels, expected: float) -> None:
    assert q_ho(labels) == expected


@given(pairs)
def test_q_ho_matches_preset(values: list[tuple[int, int]]) -> None:
    labels = StateLabels(tuple(values))
    assert preset("ho")(labels) == pytest.approx(q_ho(labels), rel=1e-15)


def test_presets() -> None:
    assert preset("ho")(StateLabels.of(2, 1)) == 6.5
    assert preset("improved2b", 2)(StateLabels.of(1, 0)) == pytest.approx(3.164)
    assert preset("improved2b")(StateLabels.of(0, 0)) == pytest.approx(1.375)
    assert preset("wkb3b", 3)(StateLabels.of(1, 0, 0, 0)) == pytest.approx(
        math.pi / math.sqrt(3) + 3, abs=1e-12
    )
    assert preset("ur2b")(StateLabels.of(0, 0)) == pytest.approx(4 / math.pi)
    assert preset("ur3b", 3)(StateLabels.of(0, 0, 0, 0)) == 3.0


def test_preset_body_count() -> None:
    with pytest.raises(AfmPrescriptionError):
        preset("wkb3b", 2)
    with pytest.raises(AfmPrescriptionError):
        preset("bogus")


def test_custom_prescription_broadcasts() -> None:
    presc = parse_prescription("custom:alpha=2,beta=1,gamma=0.5")
    assert presc(StateLabels.of(1, 2, 0, 1)) == pytest.approx(2 + 2 + 1 + 0.5)

    per_coordinate = parse_prescription("custom:alpha=2/3,beta=1/1,gamma=0")
    assert per_coordinate(StateLabels.of(1, 0, 1, 0)) == pytest.approx(5.0)
    with pytest.raises(AfmPrescriptionError):
        per_coordinate(StateLabels.of(1, 0))


@given(
    st.lists(st.tuples(*[st.integers(0, 6)] * 4), min_size=2, max_size=2),
    st.floats(-1.0, 2.0),
)
def test_custom_prescription_is_affine(values: list[tuple[int, ...]], gamma: float) -> None:
    presc = QPrescription((2.0, 3.0), (1.0, 1.5), gamma)
    first = StateLabels(tuple((n, l) for n, l, _, _ in values))
    second = StateLabels(tuple((n, l) for _, _, n, l in values))
    combined = StateLabels(tuple((a + c, b + d) for a, b, c, d in values))
    assert presc(combined) + gamma == pytest.approx(presc(first) + presc(second), abs=1e-12)


@pytest.mark.parametrize(
    "text",
    ["custom", "custom:alpha=1", "custom:alpha=1,beta=1,delta=2", "custom:alpha=x,beta=1"],
)
def test_custom_prescription_errors(text: str) -> None:
    with pytest.raises(AfmParseError):
        parse_prescription(text)


def test_non_positive_coefficients() -> None:
    with pytest.raises(AfmPrescriptionError):
        parse_prescription("custom:alpha=0,beta=1")


def test_labels() -> None:
    labels = parse_labels("1,0,0,2")
    assert labels.pairs == ((1, 0), (0, 2))
    assert labels.n_bodies == 3
    assert labels.band == 4
    assert str(labels) == "1,0,0,2"
    assert StateLabels.ground(4) == StateLabels.of(0, 0, 0, 0, 0, 0)

    with pytest.raises(AfmParseError):
        parse_labels("1,0,2")
    with pytest.raises(AfmInvalidParameterError):
        StateLabels.of(-1, 0)
    with pytest.raises(AfmInvalidParameterError):
        StateLabels(((1.5, 0),))


def test_all_labels_band_limit() -> None:
    labels = list(all_labels(2, 2))
    assert all(label.band <= 2 for label in labels)
    assert StateLabels.of(1, 0, 0, 0) in labels
    assert len(set(labels)) == len(labels)


def test_exact_numbers() -> None:
    assert q_coulomb(StateLabels.of(1, 2)) == 4.0
    assert q_airy(0) == pytest.approx(2 * (2.338107410459767 / 3) ** 1.5)
    with pytest.raises(AfmPrescriptionError):
        q_coulomb(StateLabels.of(0, 0, 0, 0))
