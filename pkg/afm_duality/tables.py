"""Reproductions of the published accuracy checks, with acceptance flags."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Callable, NamedTuple

from .const import (
    GS_LINK_CASES,
    GS_LINK_MASS,
    PRESET_HO,
    PRESET_IMPROVED2B,
    PRESET_UR2B,
    PRESET_WKB3B,
    STATE_MAX,
    TABLE1,
    TABLE1_DEVIATION_TOLERANCE,
    TABLE1_EXACT_TOLERANCE,
    TABLE1_MASS,
    TABLE1_PREDICTION_TOLERANCE,
    TABLE2,
    TABLE2_EXACT_RTOL,
    TABLE2_L_MAX,
    TABLE2_LEVELS,
    TABLE2_MASS,
    TABLE2_PREDICTION_TOLERANCE,
    TABLE_GS_LINK,
    TABLE_UR_2B,
    TABLE_UR_CROSS,
    TABLE_UR_NR,
    UR_2B_MAX_DEVIATION,
    UR_CROSS_RANGE,
    UR_NR_FORWARD_MAX,
    UR_NR_FORWARD_NOMINAL,
    UR_NR_REVERSE_RANGE,
)
from .coordinator import SweepCoordinator
from .duality import cross_duality_factor
from .exact_nr import (
    MeshConfig,
    Prediction,
    Symmetry,
    ThreeBodyBasisConfig,
    predict_spectrum,
    refine_level,
    solve_radial_2b,
    solve_salpeter_2b,
    spectrum_all,
    three_body_ground,
)
from .potentials import PotentialKind, PotentialSpec, make_potential, parse_potential
from .quantum_numbers import StateLabels, preset
from .solvers.exceptions import AfmInvalidParameterError
from .solvers.three_body import Spectrum

_LOGGER = logging.getLogger(__name__)

Row = dict[str, Any]


class Table1Reference(NamedTuple):
    exact: float
    pred_ho: float
    dev_ho_pct: float
    pred_improved: float
    dev_improved_pct: float


class Table2Reference(NamedTuple):
    band: int
    labels: tuple[int, int, int, int]
    paired: bool
    exact: float
    pred_ho: float
    dev_ho_pct: float
    pred_wkb: float
    dev_wkb_pct: float


# Linear potential, m = 4, keyed by (n, l).
TABLE1_REFERENCE: dict[tuple[int, int], Table1Reference] = {
    (0, 0): Table1Reference(1.473, 1.473, 0.0, 1.473, 0.0),
    (1, 0): Table1Reference(2.575, 2.591, 0.6, 2.567, 0.3),
    (2, 0): Table1Reference(3.478, 3.502, 0.7, 3.461, 0.5),
    (3, 0): Table1Reference(4.275, 4.307, 0.7, 4.251, 0.5),
    (0, 1): Table1Reference(2.117, 2.071, 2.2, 2.120, 0.1),
    (1, 1): Table1Reference(3.077, 3.064, 0.4, 3.083, 0.2),
    (2, 1): Table1Reference(3.911, 3.915, 0.1, 3.913, 0.05),
    (3, 1): Table1Reference(4.665, 4.682, 0.3, 4.662, 0.06),
    (0, 2): Table1Reference(2.676, 2.591, 3.2, 2.680, 1.5),
    (1, 2): Table1Reference(3.546, 3.502, 1.2, 3.559, 0.4),
    (2, 2): Table1Reference(4.327, 4.307, 0.5, 4.339, 0.3),
    (3, 2): Table1Reference(5.046, 5.042, 0.08, 5.055, 0.2),
    (0, 3): Table1Reference(3.182, 3.064, 3.7, 3.186, 0.1),
    (1, 3): Table1Reference(3.989, 3.915, 1.8, 4.005, 0.4),
    (2, 3): Table1Reference(4.728, 4.682, 1.0, 4.746, 0.4),
    (3, 3): Table1Reference(5.416, 5.390, 0.5, 5.434, 0.3),
}

# Three bodies, linear pair potential, m = 2.
TABLE2_REFERENCE: tuple[Table2Reference, ...] = (
    Table2Reference(0, (0, 0, 0, 0), False, 4.867, 4.867, 0.0, 4.867, 0.0),
    Table2Reference(1, (0, 1, 0, 0), True, 5.934, 5.896, 0.7, 5.896, 0.7),
    Table2Reference(2, (1, 0, 0, 0), True, 6.704, 6.842, 2.1, 6.671, 0.5),
    Table2Reference(2, (0, 1, 0, 1), False, 6.846, 6.842, 0.1, 6.842, 0.1),
    Table2Reference(2, (0, 2, 0, 0), True, 6.874, 6.842, 0.5, 6.842, 0.5),
    Table2Reference(3, (1, 1, 0, 0), True, 7.608, 7.726, 1.6, 7.566, 0.6),
    Table2Reference(3, (1, 0, 0, 1), False, 7.702, 7.726, 0.3, 7.566, 1.8),
    Table2Reference(3, (0, 2, 0, 1), True, 7.854, 7.726, 1.6, 7.726, 1.6),
    Table2Reference(4, (2, 0, 0, 0), True, 8.309, 8.562, 3.0, 8.256, 0.6),
    Table2Reference(4, (1, 1, 0, 1), False, 8.391, 8.562, 2.0, 8.410, 0.2),
    Table2Reference(4, (1, 2, 0, 0), True, 8.426, 8.562, 1.6, 8.410, 0.2),
    Table2Reference(4, (0, 1, 1, 1), False, 8.572, 8.562, 0.1, 8.410, 1.9),
    Table2Reference(4, (0, 2, 0, 2), False, 8.707, 8.562, 1.7, 8.562, 1.7),
)


@dataclass(frozen=True)
class TableResult:
    """Rows of one reproduction plus the acceptance failures found."""

    name: str
    columns: tuple[str, ...]
    rows: tuple[Row, ...]
    failures: tuple[str, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return not self.failures


def deviation_pct(value: float, reference: float) -> float:
    """Return 100 |value - reference| / |reference|."""
    return 100.0 * abs(value - reference) / abs(reference)


def _linear() -> PotentialSpec:
    return make_potential(PotentialKind.LINEAR, a=1.0)


def _table1_cell(item: tuple[int, int, MeshConfig]) -> Row:
    n, l, cfg = item
    labels = StateLabels.of(n, l)
    potential = _linear()
    row: Row = {"n": n, "l": l, "exact": solve_radial_2b(TABLE1_MASS, potential, n, l, cfg)}
    for key, name in (("ho", PRESET_HO), ("improved", PRESET_IMPROVED2B)):
        pred = predict_spectrum(
            Prediction.TWO_BODY_F, TABLE1_MASS, labels, preset(name, 2), 2, potential, cfg
        )
        row[f"pred_{key}"] = pred
        row[f"dev_{key}_pct"] = deviation_pct(pred, row["exact"])
    return row


def _check_deviation(
    failures: list[str], where: str, value: float, ref: Table1Reference, key: str
) -> None:
    """Compare a percent deviation, skipping reference cells at odds with their own values."""
    ref_pred = getattr(ref, f"pred_{key}")
    ref_dev = getattr(ref, f"dev_{key}_pct")
    implied = deviation_pct(ref_pred, ref.exact)
    if abs(implied - ref_dev) > TABLE1_DEVIATION_TOLERANCE:
        _LOGGER.info(
            "Reference deviation %.2f%% at %s disagrees with its values (%.2f%%)",
            ref_dev,
            where,
            implied,
        )
        return
    if abs(value - ref_dev) > TABLE1_DEVIATION_TOLERANCE:
        failures.append(f"{where} dev_{key}_pct {value:.2f} vs {ref_dev}")


def table1(
    prescription: str | None = None,
    cfg: MeshConfig | None = None,
    jobs: int | None = 1,
) -> TableResult:
    """Two-body linear spectrum at m=4 against f(m) at the effective masses."""
    if prescription not in (None, PRESET_HO, PRESET_IMPROVED2B):
        raise AfmInvalidParameterError(
            f"table1 compares {PRESET_HO} and {PRESET_IMPROVED2B}, got '{prescription}'"
        )
    cfg = cfg or MeshConfig()
    items = [(n, l, cfg) for l in range(STATE_MAX + 1) for n in range(STATE_MAX + 1)]
    rows = SweepCoordinator(jobs).map(_table1_cell, items)

    keys = ["ho", "improved"]
    if prescription is not None:
        keys = ["ho" if prescription == PRESET_HO else "improved"]
    failures: list[str] = []
    for row in rows:
        where = f"(n={row['n']}, l={row['l']})"
        ref = TABLE1_REFERENCE[(row["n"], row["l"])]
        if abs(row["exact"] - ref.exact) > TABLE1_EXACT_TOLERANCE:
            failures.append(f"{where} exact {row['exact']:.5f} vs {ref.exact}")
        for key in keys:
            pred = row[f"pred_{key}"]
            ref_pred = getattr(ref, f"pred_{key}")
            if abs(pred - ref_pred) > TABLE1_PREDICTION_TOLERANCE:
                failures.append(f"{where} pred_{key} {pred:.5f} vs {ref_pred}")
            _check_deviation(failures, where, row[f"dev_{key}_pct"], ref, key)

    columns = (
        "n",
        "l",
        "exact",
        "pred_ho",
        "dev_ho_pct",
        "pred_improved",
        "dev_improved_pct",
    )
    return TableResult(TABLE1, columns, tuple(rows), tuple(failures))


def _label_text(ref: Table2Reference) -> str:
    text = ",".join(str(v) for v in ref.labels)
    return f"[{text}]" if ref.paired else text


def _family(ref: Table2Reference) -> list[tuple[int, int]]:
    """(L, parity) sectors the main component of a reference level can couple to."""
    _, l1, _, l2 = ref.labels
    parity = -1 if (l1 + l2) % 2 else 1
    return [(total_l, parity) for total_l in range(abs(l1 - l2), l1 + l2 + 1)]


def _sector_levels(spectrum: Spectrum) -> dict[tuple[int, int], list[float]]:
    sectors: dict[tuple[int, int], list[float]] = {}
    for entry in spectrum:
        sectors.setdefault((entry.total_l, entry.parity), []).append(entry.energy)
    return sectors


def match_level(
    ref: Table2Reference,
    sectors: dict[tuple[int, int], list[float]],
) -> tuple[tuple[int, int], int]:
    """Nearest level to ``ref`` inside its family, as (sector, index in sector)."""
    candidates = [
        (abs(energy - ref.exact), sector, index)
        for sector in _family(ref)
        for index, energy in enumerate(sectors.get(sector, ()))
    ]
    if not candidates:
        raise AfmInvalidParameterError(f"No level in the family of {_label_text(ref)}")
    _, sector, index = min(candidates)
    return sector, index


def table2(cfg: ThreeBodyBasisConfig | None = None) -> TableResult:
    """Three-body linear spectrum at m=2 against ground states at effective masses.

    Levels are located at a common b, then each matched level is re-solved
    with b optimized for it unless ``cfg.b`` pins the length.
    """
    cfg = cfg or ThreeBodyBasisConfig(symmetry=Symmetry.ANY, levels=TABLE2_LEVELS)
    potential = _linear()
    sectors = _sector_levels(spectrum_all(TABLE2_MASS, potential, TABLE2_L_MAX, cfg))
    ground_cfg = ThreeBodyBasisConfig(band_max=cfg.band_max, levels=1)
    presets = {"ho": preset(PRESET_HO, 3), "wkb": preset(PRESET_WKB3B, 3)}
    refined: dict[tuple[tuple[int, int], int], float] = {}

    rows: list[Row] = []
    failures: list[str] = []
    for ref in TABLE2_REFERENCE:
        labels = StateLabels.of(*ref.labels)
        sector, index = match_level(ref, sectors)
        if cfg.b is not None:
            exact = sectors[sector][index]
        elif (sector, index) not in refined:
            exact = refine_level(TABLE2_MASS, potential, *sector, index, cfg)
            refined[sector, index] = exact
        else:
            exact = refined[sector, index]
        row: Row = {
            "B": ref.band,
            "labels": _label_text(ref),
            "L": sector[0],
            "parity": sector[1],
            "exact": exact,
            "reference": ref.exact,
        }
        if abs(exact - ref.exact) > TABLE2_EXACT_RTOL * ref.exact:
            failures.append(f"{row['labels']} exact {exact:.5f} vs {ref.exact}")
        for key, presc in presets.items():
            pred = predict_spectrum(
                Prediction.N_BODY_GS,
                TABLE2_MASS,
                labels,
                presc,
                3,
                potential,
                basis_cfg=ground_cfg,
            )
            row[f"pred_Q{key}"] = pred
            row[f"dev_{key}_pct"] = deviation_pct(pred, exact)
            ref_pred = getattr(ref, f"pred_{key}")
            if abs(pred - ref_pred) > TABLE2_PREDICTION_TOLERANCE:
                failures.append(f"{row['labels']} pred_Q{key} {pred:.5f} vs {ref_pred}")
        rows.append(row)

    columns = (
        "B",
        "labels",
        "L",
        "parity",
        "exact",
        "reference",
        "pred_Qho",
        "dev_ho_pct",
        "pred_Qwkb",
        "dev_wkb_pct",
    )
    return TableResult(TABLE2, columns, tuple(rows), tuple(failures))


def gs_link_check(
    cases: tuple[tuple[str, float, float], ...] = GS_LINK_CASES,
    mass: float = GS_LINK_MASS,
    cfg: ThreeBodyBasisConfig | None = None,
) -> TableResult:
    """Exact three-body ground states against 3 f(3m/2)."""
    ground = StateLabels.ground(3)
    presc = preset(PRESET_HO, 3)
    rows: list[Row] = []
    failures: list[str] = []
    for text, low, high in cases:
        potential = parse_potential(text)
        exact = three_body_ground(mass, potential, cfg)
        linked = predict_spectrum(Prediction.GS_LINK, mass, ground, presc, 3, potential)
        error = abs(linked - exact) / abs(exact)
        rows.append(
            {
                "potential": text,
                "mass": mass,
                "exact": exact,
                "linked": linked,
                "rel_error": error,
            }
        )
        if not low <= error <= high:
            failures.append(f"{text}: relative error {error:.4f} outside [{low}, {high}]")
    columns = ("potential", "mass", "exact", "linked", "rel_error")
    return TableResult(TABLE_GS_LINK, columns, tuple(rows), tuple(failures))


def _ur_cell(item: tuple[int, int, float]) -> float:
    n, l, strength = item
    return solve_salpeter_2b(2.0, 0.0, make_potential(PotentialKind.LINEAR, a=strength), n, l)


def _states() -> list[tuple[int, int]]:
    return [(n, l) for n in range(STATE_MAX + 1) for l in range(STATE_MAX + 1)]


def ur_two_body_check(a: float = 1.0, jobs: int | None = 1) -> TableResult:
    """Massless Salpeter levels against sqrt(8 a Q) with the fitted Q."""
    presc = preset(PRESET_UR2B, 2)
    states = _states()
    exact = SweepCoordinator(jobs).map(_ur_cell, [(n, l, a) for n, l in states])
    rows: list[Row] = []
    failures: list[str] = []
    for (n, l), mass in zip(states, exact):
        formula = math.sqrt(8.0 * a * presc(StateLabels.of(n, l)))
        error = abs(formula - mass) / mass
        rows.append({"n": n, "l": l, "exact": mass, "formula": formula, "rel_error": error})
        if error > UR_2B_MAX_DEVIATION:
            failures.append(f"(n={n}, l={l}) relative error {error:.4f}")
    columns = ("n", "l", "exact", "formula", "rel_error")
    return TableResult(TABLE_UR_2B, columns, tuple(rows), tuple(failures))


def ur_nr_genuine_check(
    mass: float = 1.0, a: float = 1.0, b: float = 1.0, jobs: int | None = 1
) -> TableResult:
    """Carry known solutions across the p^2/m + a r^2 <-> 2|p| + b r duality.

    Forward: the oscillator energy is known and the linear strength is set
    to b' = a Q_n / (2m). Reverse: the massless mass is known and the
    oscillator strength is set to a' = 2 b m / Q_u. Errors are relative to
    the known side. Oscillator energies are exact: sqrt(4a/m) Q_n.
    """
    states = _states()
    q_n = [preset(PRESET_HO, 2)(StateLabels.of(n, l)) for n, l in states]
    q_u = [preset(PRESET_UR2B, 2)(StateLabels.of(n, l)) for n, l in states]
    coordinator = SweepCoordinator(jobs)
    forward_items = [(n, l, a * q / (2.0 * mass)) for (n, l), q in zip(states, q_n)]
    forward_masses = coordinator.map(_ur_cell, forward_items)
    reverse_masses = coordinator.map(_ur_cell, [(n, l, b) for n, l in states])

    rows: list[Row] = []
    forward_max = reverse_max = 0.0
    for (n, l), qn, qu, m_fwd, m_rev in zip(states, q_n, q_u, forward_masses, reverse_masses):
        known_energy = math.sqrt(4.0 * a / mass) * qn
        forward = abs(m_fwd - known_energy) / known_energy
        carried_energy = math.sqrt(4.0 * (2.0 * b * mass / qu) / mass) * qn
        reverse = abs(carried_energy - m_rev) / m_rev
        forward_max = max(forward_max, forward)
        reverse_max = max(reverse_max, reverse)
        rows.append(
            {
                "n": n,
                "l": l,
                "forward_rel_error": forward,
                "forward_within_nominal": forward <= UR_NR_FORWARD_NOMINAL,
                "reverse_rel_error": reverse,
            }
        )

    failures = []
    if forward_max > UR_NR_FORWARD_MAX:
        failures.append(f"forward max error {forward_max:.4f} above {UR_NR_FORWARD_MAX}")
    low, high = UR_NR_REVERSE_RANGE
    if not low <= reverse_max <= high:
        failures.append(f"reverse max error {reverse_max:.4f} outside [{low}, {high}]")
    if forward_max > UR_NR_FORWARD_NOMINAL:
        _LOGGER.warning(
            "Forward max error %.4f does not reproduce the nominal %.0f%% bound;"
            " accepted up to %.0f%%",
            forward_max,
            100 * UR_NR_FORWARD_NOMINAL,
            100 * UR_NR_FORWARD_MAX,
        )
    _LOGGER.debug(
        "Genuine-solution errors: forward %.4f, reverse %.4f", forward_max, reverse_max
    )
    columns = (
        "n",
        "l",
        "forward_rel_error",
        "forward_within_nominal",
        "reverse_rel_error",
    )
    return TableResult(TABLE_UR_NR, columns, tuple(rows), tuple(failures))


def ur_cross_check() -> TableResult:
    """N <-> p duality applied to the fitted ultrarelativistic masses."""
    factor = cross_duality_factor()
    low, high = UR_CROSS_RANGE
    rows: list[Row] = [
        {
            "direction": "forward",
            "factor": factor.forward,
            "deviation": factor.forward_deviation,
        },
        {
            "direction": "reverse",
            "factor": factor.reverse,
            "deviation": factor.reverse_deviation,
        },
    ]
    failures = [
        f"{row['direction']} deviation {row['deviation']:.4f} outside [{low}, {high}]"
        for row in rows
        if not low <= row["deviation"] <= high
    ]
    _LOGGER.info(
        "Cross-duality deviations %.1f%% and %.1f%%",
        100 * factor.forward_deviation,
        100 * factor.reverse_deviation,
    )
    columns = ("direction", "factor", "deviation")
    return TableResult(TABLE_UR_CROSS, columns, tuple(rows), tuple(failures))


TABLE_RUNNERS: dict[str, Callable[..., TableResult]] = {
    TABLE1: table1,
    TABLE2: table2,
    TABLE_GS_LINK: gs_link_check,
    TABLE_UR_2B: ur_two_body_check,
    TABLE_UR_NR: ur_nr_genuine_check,
    TABLE_UR_CROSS: ur_cross_check,
}
