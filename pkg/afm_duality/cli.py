"""Command-line entry point."""
from __future__ import annotations

import argparse
import logging
import sys
from typing import Any, Callable, Sequence

import numpy as np

from . import afm_core
from .afm_core import Flavor, SystemSpec, solve_afm
from .const import (
    EXIT_ACCEPTANCE_FAILED,
    EXIT_INVALID_INPUT,
    EXIT_NON_CONVERGENCE,
    EXIT_OK,
    OUTPUT_CSV,
    OUTPUT_JSON,
    PRESETS,
    SWEEP_POTENTIALS,
    TABLE1,
    TABLE_UR_2B,
    TABLE_UR_NR,
    TABLES,
)
from .diagnostics import (
    Record,
    report_record,
    solution_record,
    spectrum_records,
    summary_record,
    system_record,
    write_records,
)
from .duality import CATALOG, LHS_FLAVORS, DualityRelation, sweep, verify_relation
from .exact_nr import (
    MeshConfig,
    Prediction,
    Symmetry,
    ThreeBodyBasisConfig,
    predict_spectrum,
    solve_3b,
    solve_radial_2b,
    solve_salpeter_2b,
    universal_f_fn,
)
from .quantum_numbers import QPrescription, StateLabels
from .schema import (
    CONF_B,
    CONF_BASIS,
    CONF_BETA,
    CONF_BMAX,
    CONF_C,
    CONF_COUNT,
    CONF_FUNCTION,
    CONF_JOBS,
    CONF_KINEMATICS,
    CONF_L,
    CONF_LABELS,
    CONF_LEVELS,
    CONF_MASS,
    CONF_METHOD,
    CONF_MODE,
    CONF_N,
    CONF_NUM,
    CONF_ONE_BODY,
    CONF_OUT,
    CONF_OUTPUT,
    CONF_P,
    CONF_PARITY,
    CONF_POINTS,
    CONF_POTENTIALS,
    CONF_PRESCRIPTION,
    CONF_Q,
    CONF_RELATION,
    CONF_SCALE,
    CONF_SEED,
    CONF_SIGMA,
    CONF_START,
    CONF_STOP,
    CONF_SYMMETRY,
    CONF_TARGET,
    CONF_TOL,
    CONF_TWO_BODY,
    UNIVERSAL_FUNCTIONS,
    validate_request,
)
from .solvers.exceptions import AfmError, AfmInvalidParameterError, AfmUnsupportedError
from .tables import TABLE_RUNNERS

_LOGGER = logging.getLogger(__name__)

Outcome = tuple[list[Record], bool]

FREE_PARAMS = (CONF_P, CONF_SIGMA, CONF_BETA, CONF_C)


def _principal_number(
    options: dict[str, Any], n_bodies: int
) -> tuple[float, StateLabels | None]:
    """Return Q from --Q, or from the labels and prescription."""
    if options.get(CONF_Q) is not None:
        return options[CONF_Q], None
    labels = options.get(CONF_LABELS) or StateLabels.ground(n_bodies)
    presc: QPrescription = options[CONF_PRESCRIPTION]
    return presc(labels), labels


def _single_pair(options: dict[str, Any]) -> tuple[int, int]:
    labels: StateLabels = options[CONF_LABELS]
    if len(labels) != 1:
        raise AfmInvalidParameterError(f"Expected one (n, l) pair, got {labels}")
    return labels.pairs[0]


def _run_solve(options: dict[str, Any]) -> Outcome:
    flavor: Flavor = options[CONF_KINEMATICS]
    spec = SystemSpec(
        flavor,
        options[CONF_N],
        options[CONF_MASS],
        options[CONF_ONE_BODY],
        options[CONF_TWO_BODY],
        options[CONF_SIGMA],
    )
    n_bodies = 2 if flavor is Flavor.SIGMA_SR else spec.n_bodies
    q, labels = _principal_number(options, n_bodies)
    method = options[CONF_METHOD]
    record: Record
    if method == "afm":
        solution = solve_afm(spec, q)
        record = solution_record(spec, solution)
        value = solution.value
    else:
        if method == "compact":
            if flavor is Flavor.ULTRARELATIVISTIC:
                value = afm_core.compact_ur(spec, q)
            else:
                value = afm_core.compact_nr(spec, q)
        elif method == "closed_powerlaw":
            value = afm_core.closed_powerlaw(spec, q)
        else:
            value = afm_core.closed_harmonic(spec, q)
        record = {**system_record(spec), "Q": q}
    record["labels"] = None if labels is None else str(labels)
    record["method"] = method
    record["mass" if flavor is Flavor.ULTRARELATIVISTIC else "energy"] = value
    return [record], True


def _run_duality_verify(options: dict[str, Any]) -> Outcome:
    rid = options[CONF_RELATION]
    params = {name: options[name] for name in FREE_PARAMS if options.get(name) is not None}
    relation = DualityRelation(rid, params)
    spec = SystemSpec(
        LHS_FLAVORS[CATALOG[rid].kinematics],
        options[CONF_N],
        options[CONF_MASS],
        options[CONF_ONE_BODY],
        options[CONF_TWO_BODY],
    )
    q, _ = _principal_number(options, spec.n_bodies)
    report = verify_relation(relation, spec, q, options[CONF_TOL])
    return [report_record(report)], report.passed


def _run_duality_sweep(options: dict[str, Any]) -> Outcome:
    relation = options.get(CONF_RELATION)
    summary = sweep(
        options[CONF_SEED],
        options[CONF_COUNT],
        options[CONF_TOL],
        options[CONF_JOBS],
        options[CONF_POTENTIALS] or SWEEP_POTENTIALS,
        None if relation is None else [relation],
    )
    level = logging.INFO if summary.ok else logging.WARNING
    _LOGGER.log(level, "Sweep summary: %s", summary_record(summary))
    return [report_record(report) for report in summary.results], summary.ok


def _run_exact_2b(options: dict[str, Any]) -> Outcome:
    n, l = _single_pair(options)
    cfg = MeshConfig(options[CONF_POINTS], options[CONF_SCALE])
    energy = solve_radial_2b(options[CONF_MASS], options[CONF_TWO_BODY], n, l, cfg)
    record = {
        "m": options[CONF_MASS],
        "two_body": str(options[CONF_TWO_BODY]),
        "n": n,
        "l": l,
        "points": cfg.points,
        "scale": cfg.scale,
        "energy": energy,
    }
    return [record], True


def _run_exact_3b(options: dict[str, Any]) -> Outcome:
    cfg = ThreeBodyBasisConfig(
        b=options[CONF_B],
        band_max=options[CONF_BMAX],
        symmetry=options[CONF_SYMMETRY],
        levels=options[CONF_LEVELS],
    )
    spectrum = solve_3b(
        options[CONF_MASS], options[CONF_TWO_BODY], options[CONF_L], options[CONF_PARITY], cfg
    )
    extra = {"m": options[CONF_MASS], "two_body": str(options[CONF_TWO_BODY])}
    return [{**extra, **record} for record in spectrum_records(spectrum)], True


def _run_salpeter_2b(options: dict[str, Any]) -> Outcome:
    n, l = _single_pair(options)
    energy = solve_salpeter_2b(
        options[CONF_SIGMA],
        options[CONF_MASS],
        options[CONF_TWO_BODY],
        n,
        l,
        options[CONF_BASIS],
    )
    record = {
        "sigma": options[CONF_SIGMA],
        "m": options[CONF_MASS],
        "two_body": str(options[CONF_TWO_BODY]),
        "n": n,
        "l": l,
        "basis": options[CONF_BASIS],
        "energy": energy,
    }
    return [record], True


def _run_predict(options: dict[str, Any]) -> Outcome:
    mode: Prediction = options[CONF_MODE]
    n_bodies = 2 if mode is Prediction.TWO_BODY_F else options[CONF_N]
    labels = options.get(CONF_LABELS) or StateLabels.ground(n_bodies)
    presc: QPrescription = options[CONF_PRESCRIPTION]
    value = predict_spectrum(
        mode, options[CONF_MASS], labels, presc, n_bodies, options[CONF_TWO_BODY]
    )
    record = {
        "mode": mode.value,
        "m": options[CONF_MASS],
        "N": n_bodies,
        "two_body": str(options[CONF_TWO_BODY]),
        "labels": str(labels),
        "q_prescription": presc.name,
        "Q": presc(labels),
        "energy": value,
    }
    return [record], True


def _run_table(options: dict[str, Any]) -> Outcome:
    target = options[CONF_TARGET]
    kwargs: dict[str, Any] = {}
    if options.get(CONF_PRESCRIPTION) is not None:
        if target != TABLE1:
            raise AfmInvalidParameterError(f"{target} takes no prescription")
        kwargs["prescription"] = options[CONF_PRESCRIPTION]
    if target in (TABLE1, TABLE_UR_2B, TABLE_UR_NR):
        kwargs["jobs"] = options[CONF_JOBS]
    result = TABLE_RUNNERS[target](**kwargs)
    for failure in result.failures:
        _LOGGER.error("%s: %s", result.name, failure)
    records = [{column: row.get(column) for column in result.columns} for row in result.rows]
    return records, result.passed


def _run_universal(options: dict[str, Any]) -> Outcome:
    name = options[CONF_FUNCTION]
    potential = options[CONF_TWO_BODY]
    if options[CONF_STOP] < options[CONF_START]:
        raise AfmInvalidParameterError("stop must not be below start")
    grid = np.geomspace(options[CONF_START], options[CONF_STOP], options[CONF_NUM])
    funcs: dict[str, Callable[[float], float]] = {
        "f": lambda x: universal_f_fn(potential, x),
        "F": lambda x: afm_core.universal_F(potential, x),
        "G": lambda x: afm_core.universal_G(potential, x),
        "C": lambda x: afm_core.universal_C(potential, x),
        "D": lambda x: afm_core.universal_D(potential, x),
    }
    func = funcs[name]
    argument = "m" if name == "f" else "x"
    records = [
        {
            "function": name,
            "two_body": str(potential),
            argument: float(x),
            "value": func(float(x)),
        }
        for x in grid
    ]
    return records, True


RUNNERS: dict[str, Callable[[dict[str, Any]], Outcome]] = {
    "solve": _run_solve,
    "duality-verify": _run_duality_verify,
    "duality-sweep": _run_duality_sweep,
    "exact-2b": _run_exact_2b,
    "exact-3b": _run_exact_3b,
    "salpeter-2b": _run_salpeter_2b,
    "predict": _run_predict,
    "table": _run_table,
    "universal": _run_universal,
}


def _output_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--output", choices=(OUTPUT_JSON, OUTPUT_CSV))
    parser.add_argument("--out", metavar="PATH", help="write records here instead of stdout")
    parser.add_argument("--jobs", type=int, help="worker processes (default: all cores)")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")


def _system_flags(parser: argparse.ArgumentParser, *, kinematics: bool = True) -> None:
    if kinematics:
        parser.add_argument("--kinematics", required=True, help="nr, ur, sr or sigma")
    parser.add_argument("--N", dest=CONF_N, help="number of bodies")
    parser.add_argument("--m", dest=CONF_MASS, help="particle mass")
    parser.add_argument("--Q", dest=CONF_Q, help="principal quantum number")
    parser.add_argument("--one-body", dest=CONF_ONE_BODY, metavar="SPEC")
    parser.add_argument("--two-body", dest=CONF_TWO_BODY, metavar="SPEC")
    _state_flags(parser)


def _state_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--labels", help="comma-separated n,l pairs, e.g. 0,1,0,0")
    parser.add_argument(
        "--q-prescription",
        "--prescription",
        dest=CONF_PRESCRIPTION,
        help=f"{'|'.join(PRESETS)}|custom:alpha=...,beta=...,gamma=...",
    )


def _duality_verify_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--relation", required=True, choices=[r.value for r in CATALOG])
    _system_flags(parser, kinematics=False)
    parser.add_argument("--p", dest=CONF_P)
    parser.add_argument("--sigma", dest=CONF_SIGMA)
    parser.add_argument("--beta", dest=CONF_BETA)
    parser.add_argument("--c", dest=CONF_C)
    parser.add_argument("--tol")
    _output_flags(parser)


def _duality_sweep_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed")
    parser.add_argument("--count")
    parser.add_argument("--tol")
    parser.add_argument("--relation", choices=[r.value for r in CATALOG])
    parser.add_argument(
        "--potential", dest=CONF_POTENTIALS, action="append", metavar="SPEC"
    )
    _output_flags(parser)


def build_parser() -> argparse.ArgumentParser:
    """Return the argument parser with one subcommand per operation."""
    parser = argparse.ArgumentParser(
        prog="afm-duality",
        description="Auxiliary field method energies, duality checks and exact solvers.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    solve = commands.add_parser("solve", help="AFM energy or mass of one system")
    _system_flags(solve)
    solve.add_argument("--sigma", dest=CONF_SIGMA)
    solve.add_argument(
        "--method", choices=("afm", "compact", "closed_powerlaw", "closed_harmonic")
    )
    _output_flags(solve)

    duality = commands.add_parser("duality", help="duality relation checks")
    duality_commands = duality.add_subparsers(dest="duality_command", required=True)
    _duality_verify_flags(duality_commands.add_parser("verify"))
    _duality_sweep_flags(duality_commands.add_parser("sweep"))
    _duality_verify_flags(commands.add_parser("duality-verify", help="check one relation"))
    _duality_sweep_flags(commands.add_parser("duality-sweep", help="seeded random checks"))

    exact_2b = commands.add_parser("exact-2b", help="two-body Lagrange mesh eigenvalue")
    exact_2b.add_argument("--m", dest=CONF_MASS, required=True)
    exact_2b.add_argument("--two-body", dest=CONF_TWO_BODY, required=True, metavar="SPEC")
    exact_2b.add_argument("--labels", help="n,l")
    exact_2b.add_argument("--points")
    exact_2b.add_argument("--scale")
    _output_flags(exact_2b)

    exact_3b = commands.add_parser("exact-3b", help="three-body oscillator basis spectrum")
    exact_3b.add_argument("--m", dest=CONF_MASS, required=True)
    exact_3b.add_argument("--two-body", dest=CONF_TWO_BODY, required=True, metavar="SPEC")
    exact_3b.add_argument("--L", dest=CONF_L)
    exact_3b.add_argument("--parity")
    exact_3b.add_argument("--bmax")
    exact_3b.add_argument("--b", dest=CONF_B)
    exact_3b.add_argument("--symmetry", choices=[s.value for s in Symmetry])
    exact_3b.add_argument("--levels")
    _output_flags(exact_3b)

    salpeter = commands.add_parser("salpeter-2b", help="two-body spinless Salpeter eigenvalue")
    salpeter.add_argument("--sigma", dest=CONF_SIGMA)
    salpeter.add_argument("--m", dest=CONF_MASS)
    salpeter.add_argument("--two-body", dest=CONF_TWO_BODY, required=True, metavar="SPEC")
    salpeter.add_argument("--labels", help="n,l")
    salpeter.add_argument("--basis")
    _output_flags(salpeter)

    predict = commands.add_parser("predict", help="spectrum from ground states")
    predict.add_argument("--mode", required=True, choices=[p.value for p in Prediction])
    predict.add_argument("--m", dest=CONF_MASS, required=True)
    predict.add_argument("--N", dest=CONF_N)
    predict.add_argument("--two-body", dest=CONF_TWO_BODY, required=True, metavar="SPEC")
    _state_flags(predict)
    _output_flags(predict)

    table = commands.add_parser("table", help="reproduce a published accuracy check")
    table.add_argument("target", choices=TABLES)
    table.add_argument("--q-prescription", "--prescription", dest=CONF_PRESCRIPTION)
    _output_flags(table)

    for name in UNIVERSAL_FUNCTIONS:
        universal = commands.add_parser(f"universal-{name}", help=f"tabulate {name}")
        universal.set_defaults(function=name)
        universal.add_argument("--two-body", dest=CONF_TWO_BODY, required=True, metavar="SPEC")
        universal.add_argument("--start")
        universal.add_argument("--stop")
        universal.add_argument("--num")
        _output_flags(universal)
    return parser


def _command(args: argparse.Namespace) -> str:
    if args.command == "duality":
        return f"duality-{args.duality_command}"
    if args.command.startswith("universal-"):
        return "universal"
    return str(args.command)


def _exit_code(err: AfmError) -> int:
    if isinstance(err, (ValueError, AfmUnsupportedError)):
        return EXIT_INVALID_INPUT
    return EXIT_NON_CONVERGENCE


def run(args: argparse.Namespace) -> int:
    """Validate, compute and emit records; return the exit status."""
    command = _command(args)
    raw = {
        key: value
        for key, value in vars(args).items()
        if key not in ("command", "duality_command", "verbose")
    }
    try:
        options = validate_request(command, raw)
        records, passed = RUNNERS[command](options)
    except AfmError as err:
        code = _exit_code(err)
        _LOGGER.error("%s failed: %s", command, err)
        return code

    try:
        if options[CONF_OUT]:
            with open(options[CONF_OUT], "w", encoding="utf-8", newline="") as stream:
                write_records(records, options[CONF_OUTPUT], stream)
        else:
            write_records(records, options[CONF_OUTPUT], sys.stdout)
    except OSError as err:
        _LOGGER.error("Cannot write %s: %s", options[CONF_OUT], err)
        return EXIT_INVALID_INPUT
    return EXIT_OK if passed else EXIT_ACCEPTANCE_FAILED


def main(argv: Sequence[str] | None = None) -> int:
    """Parse flags, configure logging to stderr and run one command."""
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    return run(args)
