"""Tests for the accuracy-check reproductions."""
from __future__ import annotations

import pytest

from afm_duality import tables
from afm_duality.const import TABLE2_MASS, TABLES, UR_NR_FORWARD_MAX
from afm_duality.exact_nr import (
    Symmetry,
    ThreeBodyBasisConfig,
    refine_level,
    spectrum_all,
)
from afm_duality.solvers.exceptions import AfmInvalidParameterError


def test_deviation_pct() -> None:
    assert tables.deviation_pct(2.567, 2.575) == pytest.approx(0.3107, abs=1e-4)
    assert tables.deviation_pct(-1.0, -2.0) == pytest.approx(50.0)


def test_match_level_stays_in_family() -> None:
    ref = tables.TABLE2_REFERENCE[1]
    sectors = {(0, 1): [5.934], (1, -1): [5.5, 5.95], (2, 1): [5.934]}
    assert tables.match_level(ref, sectors) == ((1, -1), 1)
    with pytest.raises(AfmInvalidParameterError):
        tables.match_level(ref, {(0, 1): [5.934]})


@pytest.mark.parametrize("row", [0, 1])
def test_table2_rows_reduced_basis(linear, row: int) -> None:
    cfg = ThreeBodyBasisConfig(band_max=12, symmetry=Symmetry.ANY, levels=4)
    ref = tables.TABLE2_REFERENCE[row]
    coarse = spectrum_all(TABLE2_MASS, linear, 1, cfg)
    sector, index = tables.match_level(ref, tables._sector_levels(coarse))
    assert sector == tables._family(ref)[0]
    refined = refine_level(TABLE2_MASS, linear, *sector, index, cfg)
    assert refined > ref.exact - 1e-3
    assert refined == pytest.approx(ref.exact, rel=5e-3)


def test_every_table_has_a_runner() -> None:
    assert set(tables.TABLE_RUNNERS) == set(TABLES)


def test_ur_cross() -> None:
    result = tables.ur_cross_check()
    assert result.passed
    assert [row["direction"] for row in result.rows] == ["forward", "reverse"]
    forward, reverse = (row["factor"] for row in result.rows)
    assert forward * reverse == pytest.approx(1.0)


def test_table1_prescription_choice() -> None:
    with pytest.raises(AfmInvalidParameterError):
        tables.table1(prescription="wkb3b")


def test_reference_rows_are_complete() -> None:
    assert len(tables.TABLE1_REFERENCE) == 16
    assert all(ref.exact > 0 for ref in tables.TABLE2_REFERENCE)


@pytest.mark.integration
@pytest.mark.parametrize("prescription", [None, "ho", "improved2b"])
def test_table1(prescription: str | None) -> None:
    result = tables.table1(prescription, jobs=1)
    assert result.passed, result.failures
    assert len(result.rows) == 16
    ground = next(row for row in result.rows if (row["n"], row["l"]) == (0, 0))
    assert ground["exact"] == pytest.approx(1.473, abs=1e-3)


@pytest.mark.integration
def test_table2() -> None:
    result = tables.table2()
    assert result.passed, result.failures
    assert result.rows[0]["exact"] == pytest.approx(4.867, abs=5e-3)
    band_four = next(row for row in result.rows if row["labels"] == "[2,0,0,0]")
    assert band_four["exact"] == pytest.approx(8.309, abs=2e-3)
    assert (band_four["L"], band_four["parity"]) == (0, 1)


@pytest.mark.integration
def test_ground_state_link() -> None:
    result = tables.gs_link_check()
    assert result.passed, result.failures


@pytest.mark.integration
def test_ultrarelativistic_two_body() -> None:
    result = tables.ur_two_body_check(jobs=1)
    assert result.passed, result.failures


@pytest.mark.integration
def test_ultrarelativistic_nonrelativistic_link(caplog: pytest.LogCaptureFixture) -> None:
    result = tables.ur_nr_genuine_check(jobs=1)
    assert result.passed, result.failures
    assert max(row["forward_rel_error"] for row in result.rows) <= UR_NR_FORWARD_MAX
    assert not all(row["forward_within_nominal"] for row in result.rows)
    assert "nominal" in caplog.text
