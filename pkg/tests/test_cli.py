"""Tests for the command-line entry point."""
from __future__ import annotations

import csv
import io
import json
import logging

import pytest

from afm_duality import tables
from afm_duality.cli import main
from afm_duality.const import (
    EXIT_ACCEPTANCE_FAILED,
    EXIT_INVALID_INPUT,
    EXIT_NON_CONVERGENCE,
    EXIT_OK,
    TABLE_UR_CROSS,
)


def _lines(capsys: pytest.CaptureFixture[str]) -> list[dict]:
    return [json.loads(line) for line in capsys.readouterr().out.splitlines()]


def test_solve_ultrarelativistic(capsys: pytest.CaptureFixture[str]) -> None:
    argv = ["solve", "--kinematics", "ur", "--N", "3", "--one-body", "linear:a=1", "--Q", "3"]
    assert main(argv) == EXIT_OK
    (record,) = _lines(capsys)
    assert record["mass"] == pytest.approx(6.0)
    assert record["method"] == "afm"
    assert "energy" not in record


def test_solve_from_labels(capsys: pytest.CaptureFixture[str]) -> None:
    argv = [
        "solve",
        "--kinematics",
        "nr",
        "--m",
        "1",
        "--two-body",
        "quadratic:k=1",
        "--labels",
        "1,0",
        "--method",
        "closed_harmonic",
    ]
    assert main(argv) == EXIT_OK
    (record,) = _lines(capsys)
    assert record["Q"] == pytest.approx(3.5)
    assert record["labels"] == "1,0"
    assert record["energy"] == pytest.approx(7.0)


def test_csv_output(capsys: pytest.CaptureFixture[str]) -> None:
    argv = [
        "solve",
        "--kinematics",
        "nr",
        "--m",
        "1",
        "--two-body",
        "quadratic:k=1",
        "--Q",
        "1.5",
        "--output",
        "csv",
    ]
    assert main(argv) == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert len(rows) == 1
    assert rows[0]["energy"] == "3"
    assert rows[0]["kinematics"]


def test_output_file(tmp_path, capsys: pytest.CaptureFixture[str]) -> None:
    target = tmp_path / "levels.jsonl"
    argv = ["exact-2b", "--m", "1", "--two-body", "coulomb:a=1", "--out", str(target)]
    assert main(argv) == EXIT_OK
    assert capsys.readouterr().out == ""
    record = json.loads(target.read_text(encoding="utf-8"))
    assert record["energy"] == pytest.approx(-0.25, rel=1e-6)


@pytest.mark.parametrize(
    "argv",
    [
        ["solve", "--kinematics", "nr", "--m", "-1", "--two-body", "linear:a=1"],
        ["solve", "--kinematics", "warp", "--m", "1", "--two-body", "linear:a=1"],
        ["solve", "--kinematics", "nr", "--m", "1", "--two-body", "linear:a="],
        ["solve", "--kinematics", "nr", "--prescription", "wkb3b"],
        ["exact-2b", "--m", "1", "--two-body", "linear:a=1", "--labels", "0,0,0,0"],
        ["table", "ur-cross", "--prescription", "ho"],
        ["predict", "--mode", "n_body_gs", "--m", "1", "--N", "4", "--two-body", "linear:a=1"],
    ],
)
def test_invalid_input(argv: list[str], caplog: pytest.LogCaptureFixture) -> None:
    with caplog.at_level(logging.ERROR):
        assert main(argv) == EXIT_INVALID_INPUT
    assert caplog.records


def test_non_convergence() -> None:
    argv = [
        "exact-2b",
        "--m",
        "4",
        "--two-body",
        "linear:a=1",
        "--points",
        "20",
        "--scale",
        "0.001",
    ]
    assert main(argv) == EXIT_NON_CONVERGENCE


@pytest.mark.parametrize("command", [["duality", "verify"], ["duality-verify"]])
def test_duality_verify(command: list[str], capsys: pytest.CaptureFixture[str]) -> None:
    argv = [
        *command,
        "--relation",
        "UR_1B_NP",
        "--p",
        "2",
        "--N",
        "3",
        "--one-body",
        "linear:a=1",
        "--Q",
        "3.7",
    ]
    assert main(argv) == EXIT_OK
    (record,) = _lines(capsys)
    assert record["relation"] == "UR_1B_NP"
    assert record["passed"] is True


def test_duality_verify_missing_parameter() -> None:
    argv = ["duality", "verify", "--relation", "UR_1B_NP", "--N", "3"]
    argv += ["--one-body", "linear:a=1", "--Q", "3"]
    assert main(argv) == EXIT_INVALID_INPUT


@pytest.mark.parametrize("command", [["duality", "sweep"], ["duality-sweep"]])
def test_duality_sweep(command: list[str], capsys: pytest.CaptureFixture[str]) -> None:
    argv = [*command, "--seed", "5", "--count", "2", "--jobs", "1"]
    argv += ["--relation", "NR_SCALE", "--potential", "linear:a=1"]
    assert main(argv) == EXIT_OK
    records = _lines(capsys)
    assert len(records) == 2
    assert all(record["passed"] for record in records)


def test_table_acceptance(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["table", "ur-cross"]) == EXIT_OK
    directions = [record["direction"] for record in _lines(capsys)]
    assert directions == ["forward", "reverse"]


def test_table_failure_exit_code(monkeypatch: pytest.MonkeyPatch) -> None:
    def failing() -> tables.TableResult:
        return tables.TableResult(TABLE_UR_CROSS, ("x",), ({"x": 1.0},), ("x off",))

    monkeypatch.setitem(tables.TABLE_RUNNERS, TABLE_UR_CROSS, failing)
    assert main(["table", "ur-cross"]) == EXIT_ACCEPTANCE_FAILED


def test_predict(capsys: pytest.CaptureFixture[str]) -> None:
    argv = ["predict", "--mode", "gs_link", "--m", "2", "--N", "3", "--two-body", "linear:a=1"]
    assert main(argv) == EXIT_OK
    (record,) = _lines(capsys)
    assert record["energy"] == pytest.approx(4.864, abs=2e-3)
    assert record["labels"] == "0,0,0,0"


@pytest.mark.parametrize("name", ["F", "G", "f"])
def test_universal(name: str, capsys: pytest.CaptureFixture[str]) -> None:
    argv = [f"universal-{name}", "--two-body", "linear:a=1"]
    argv += ["--start", "1", "--stop", "8", "--num", "4"]
    assert main(argv) == EXIT_OK
    records = _lines(capsys)
    assert len(records) == 4
    assert all(record["function"] == name for record in records)


def test_universal_range(capsys: pytest.CaptureFixture[str]) -> None:
    argv = ["universal-G", "--two-body", "linear:a=1", "--start", "5", "--stop", "1"]
    assert main(argv) == EXIT_INVALID_INPUT


def test_unknown_subcommand() -> None:
    with pytest.raises(SystemExit) as info:
        main(["warp"])
    assert info.value.code == 2


@pytest.mark.parametrize(
    "args",
    [
        "--kinematics sr --N 3 --m 1.3 --two-body linear:a=0.7 --Q 3.1",
        "--kinematics sigma --m 0.4 --sigma 2.5 --two-body quadratic:k=1.1 --labels 1,1",
        "--kinematics nr --N 4 --m 2 --two-body funnel:a=0.3,b=1.2 --Q 6",
    ],
)
def test_json_records_rerun(args: str, capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["solve", *args.split()]) == EXIT_OK
    (record,) = _lines(capsys)

    echoed = ["solve", "--kinematics", record["kinematics"], "--Q", repr(record["Q"])]
    for flag, key in (("--N", "N"), ("--m", "m"), ("--sigma", "sigma"),
                      ("--one-body", "one_body"), ("--two-body", "two_body")):
        if record[key] is not None:
            echoed += [flag, str(record[key])]
    assert main(echoed) == EXIT_OK
    (again,) = _lines(capsys)

    assert again["energy"] == record["energy"]
    assert again["x0"] == record["x0"]
