"""Flat records for results, with the inputs that produced them."""
from __future__ import annotations

import csv
import json
import math
from typing import IO, Any, Iterable, Mapping

from .afm_core import AFMSolution, SystemSpec
from .const import CSV_SIGNIFICANT_DIGITS, OUTPUT_CSV
from .coordinator import SweepSummary
from .duality import DualityCheckReport
from .solvers.three_body import Spectrum, SpectrumEntry

Record = dict[str, Any]


def _text(value: Any) -> str | None:
    return None if value is None else str(value)


def _finite(value: float) -> float | None:
    """JSON has no NaN; unsolved sides become null."""
    return value if math.isfinite(value) else None


def system_record(spec: SystemSpec) -> Record:
    """Return the inputs describing a system."""
    return {
        "kinematics": spec.flavor.value,
        "N": spec.n_bodies,
        "m": spec.mass,
        "sigma": spec.sigma,
        "one_body": _text(spec.one_body),
        "two_body": _text(spec.two_body),
    }


def solution_record(spec: SystemSpec, solution: AFMSolution) -> Record:
    """Return an AFM solution with its system and solver diagnostics."""
    return {
        **system_record(spec),
        "Q": solution.q,
        "x0": solution.x0,
        "r0_one_body": solution.r0_one_body,
        "r0_two_body": solution.r0_two_body,
        "iterations": solution.iterations,
        "function_calls": solution.function_calls,
        "residual": solution.residual,
    }


def report_record(report: DualityCheckReport) -> Record:
    """Return both sides of a duality check."""
    record: Record = {
        "relation": report.relation.id.value,
        **{name: value for name, value in report.relation.free_params.items()},
        "N": report.n_bodies,
        "m": report.mass,
        "Q": report.q,
        "potential": report.potential,
        "lhs": _finite(report.lhs_value),
        "rhs": _finite(report.rhs_value),
        "abs_residual": _finite(report.abs_residual),
        "rel_residual": _finite(report.rel_residual),
        "tol": report.tol,
        "passed": report.passed,
        "error": report.error,
    }
    if report.mapped is not None:
        target = report.mapped.target
        record.update(
            rhs_kinematics=target.flavor.value,
            rhs_N=target.n_bodies,
            rhs_sigma=target.sigma,
            rhs_m=report.mapped.mass,
            rhs_Q=report.mapped.q,
            multiplier=report.mapped.multiplier,
        )
    return record


def summary_record(summary: SweepSummary) -> Record:
    return {
        "checks": len(summary.results),
        "passed": summary.passed,
        "failed": summary.failed,
        "worst_residual": summary.worst_residual,
        "elapsed": summary.elapsed,
    }


def entry_record(index: int, entry: SpectrumEntry, spectrum: Spectrum) -> Record:
    """Return one three-body level with the basis it was computed in."""
    return {
        "level": index,
        "labels": str(entry),
        "B": entry.band,
        "L": entry.total_l,
        "parity": entry.parity,
        "energy": entry.energy,
        "main_amplitude": entry.main_amplitude,
        "paired": entry.paired,
        "b": spectrum.b,
        "bmax": spectrum.band_max,
        "symmetry": spectrum.symmetry.value,
    }


def spectrum_records(spectrum: Spectrum) -> list[Record]:
    return [entry_record(k, entry, spectrum) for k, entry in enumerate(spectrum)]


def _csv_cell(value: Any) -> Any:
    if isinstance(value, float):
        return f"{value:.{CSV_SIGNIFICANT_DIGITS}g}"
    return "" if value is None else value


def _columns(records: Iterable[Mapping[str, Any]]) -> list[str]:
    columns: dict[str, None] = {}
    for record in records:
        columns.update(dict.fromkeys(record))
    return list(columns)


def write_records(records: list[Record], output: str, stream: IO[str]) -> None:
    """Write JSON Lines, or CSV with a header row and six significant digits."""
    if output == OUTPUT_CSV:
        writer = csv.DictWriter(stream, fieldnames=_columns(records), lineterminator="\n")
        writer.writeheader()
        for record in records:
            writer.writerow({key: _csv_cell(value) for key, value in record.items()})
        return
    for record in records:
        stream.write(json.dumps(record) + "\n")
