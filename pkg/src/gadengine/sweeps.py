"""Parameter sweeps, figure-style presets, and deterministic CSV emission.

A :class:`SweepSpec` names a target quantity, a swept axis, an optional
series axis, and fixed parameters. ``run_sweep`` evaluates it into a flat
table (series-major, sweep-minor row order); ``emit_csv`` writes the table
with 12 significant digits so repeated runs are byte-identical.

Presets fig1..fig7 bundle the stock sweeps. Constants that the preset family
does not pin down elsewhere default to: pg = 0.9, hot gap 1, cold gap 0.5,
qutrit hot gaps (1, 2) and cold gaps (0.5, 1), and a single damping value
shared by every damping parameter where one is implied. Every value used is
recorded in the emitted rows, so no output is ambiguous.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from . import variants
from .engine import (
    QUBIT_RECORD_FIELDS,
    QubitEngineConfig,
    QutritEngineConfig,
    qubit_record,
    qutrit_record,
    run_cyclic_qubit,
    run_noncyclic_qubit,
    run_qutrit,
)
from .ergotropy import ergotropy_landscape, landscape_difference
from .errors import GadEngineError, OutOfRangeError, UnknownPresetError
from .states import Hamiltonian


@dataclass(frozen=True)
class SweptAxis:
    name: str
    start: float
    stop: float
    points: int

    def __post_init__(self):
        if self.points < 2:
            raise OutOfRangeError("swept axis needs at least 2 points")
        if not self.stop > self.start:
            raise OutOfRangeError("swept axis must be strictly ascending")

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.points)


@dataclass(frozen=True)
class SeriesAxis:
    name: str
    values: tuple


@dataclass(frozen=True)
class SweepSpec:
    target: str
    fixed_params: dict
    swept: SweptAxis
    series: SeriesAxis | None = None


@dataclass(frozen=True, eq=False)
class SweepTable:
    columns: tuple
    rows: tuple
    preamble: tuple = ()


def _merge(fixed: dict, swept_name: str, swept_value: float, series) -> dict:
    params = dict(fixed)
    params[swept_name] = swept_value
    if series is not None:
        name, value = series
        params[name] = value
    return params


def qubit_config_from_params(params: dict) -> QubitEngineConfig:
    return QubitEngineConfig(
        initial_pg=params["pg"],
        f=params["f"],
        gamma=params["gamma"],
        k=params.get("k", 1.0),
        hot_gap=params["dh"],
        cold_gap=params["dc"],
    )


def qutrit_config_from_params(params: dict) -> QutritEngineConfig:
    return QutritEngineConfig(
        initial_p=(params["p0"], params["p1"], params["p2"]),
        f_prime=params["f"],
        lambda1=params["lam1"],
        lambda2=params["lam2"],
        k1=params["k1"],
        k2=params["k2"],
        hot_levels=Hamiltonian((0.0, params["dh10"], params["dh20"])),
        cold_levels=Hamiltonian((0.0, params["dc10"], params["dc20"])),
    )


_QUBIT_KEYS = frozenset({"pg", "f", "gamma", "k", "dh", "dc"})
_QUTRIT_KEYS = frozenset(
    {"p0", "p1", "p2", "f", "lam1", "lam2", "k1", "k2", "dh10", "dh20", "dc10", "dc20"}
)
_MAP_KEYS = frozenset(
    {"dim", "pg", "p0", "p1", "p2", "gap", "gap10", "gap20",
     "rate", "rate1", "rate2", "tmax", "tpoints"}
)

MIXED_RECORD_FIELDS = (
    "system", "f", "pg", "pe", "p0", "p1", "p2", "gamma", "lam1", "lam2",
    "k", "k1", "k2", "dh", "dc", "dh10", "dh20", "dc10", "dc20",
    "q_hot", "q_cold", "work", "efficiency", "deviation", "delta_w", "cyclic",
)


def _mixed_row_from_qubit(cfg, report) -> dict:
    rec = qubit_record(cfg, report)
    row = {key: "" for key in MIXED_RECORD_FIELDS}
    row.update(rec)
    row["system"] = "qubit"
    return row


def _mixed_row_from_qutrit(cfg, report) -> dict:
    rec = qutrit_record(cfg, report)
    row = {key: "" for key in MIXED_RECORD_FIELDS}
    for key, value in rec.items():
        row[key] = value
    row["system"] = "qutrit"
    row["f"] = cfg.f_prime
    return row


def _annotated(swept_name: str, value: float, fn):
    # sweeps must not fail silently or anonymously: tag any engine error
    # with the grid point that produced it
    try:
        return fn()
    except GadEngineError as exc:
        raise type(exc)(f"at {swept_name}={value:g}: {exc}") from exc


def _sweep_qubit(spec: SweepSpec, run, parallel: int, paper_literal: bool) -> SweepTable:
    jobs = []
    series_items = spec.series.values if spec.series else (None,)
    for series_value in series_items:
        series = None if series_value is None else (spec.series.name, series_value)
        for value in spec.swept.values():
            params = _merge(spec.fixed_params, spec.swept.name, float(value), series)
            jobs.append(params)

    def evaluate(params):
        value = params[spec.swept.name]
        cfg = _annotated(spec.swept.name, value, lambda: qubit_config_from_params(params))
        report = _annotated(spec.swept.name, value, lambda: run(cfg))
        rec = qubit_record(cfg, report)
        return tuple(rec[name] for name in QUBIT_RECORD_FIELDS)

    rows = _evaluate_jobs(jobs, evaluate, parallel)
    return SweepTable(columns=QUBIT_RECORD_FIELDS, rows=tuple(rows))


def _sweep_cyclic_vs_noncyclic(spec: SweepSpec, parallel: int, paper_literal: bool) -> SweepTable:
    values = spec.swept.values()

    def evaluate(mode_value):
        mode, value = mode_value
        params = _merge(spec.fixed_params, spec.swept.name, float(value), None)

        def run_one():
            cfg = qubit_config_from_params(params)
            report = run_cyclic_qubit(cfg) if mode == "cyclic" else run_noncyclic_qubit(cfg)
            return qubit_record(cfg, report)

        rec = _annotated(spec.swept.name, value, run_one)
        return tuple(rec[name] for name in QUBIT_RECORD_FIELDS)

    jobs = [("cyclic", v) for v in values] + [("noncyclic", v) for v in values]
    rows = _evaluate_jobs(jobs, evaluate, parallel)
    return SweepTable(columns=QUBIT_RECORD_FIELDS, rows=tuple(rows))


def _sweep_mixed(spec: SweepSpec, qubit_run, parallel: int, paper_literal: bool) -> SweepTable:
    values = spec.swept.values()
    columns = MIXED_RECORD_FIELDS + (("q_cold_literal",) if paper_literal else ())

    def evaluate(system_value):
        system, value = system_value
        params = _merge(spec.fixed_params, "f", float(value), None)

        def run_one():
            if system == "qubit":
                cfg = qubit_config_from_params(params)
                row = _mixed_row_from_qubit(cfg, qubit_run(cfg))
                if paper_literal:
                    row["q_cold_literal"] = ""
                return row
            cfg = qutrit_config_from_params(params)
            row = _mixed_row_from_qutrit(cfg, run_qutrit(cfg))
            if paper_literal:
                row["q_cold_literal"] = variants.qutrit_cold_heat_literal(cfg)
            return row

        row = _annotated("f", value, run_one)
        return tuple(row[name] for name in columns)

    jobs = [("qubit", v) for v in values] + [("qutrit", v) for v in values]
    rows = _evaluate_jobs(jobs, evaluate, parallel)
    return SweepTable(columns=columns, rows=tuple(rows))


def _grid_preamble(prefix: str, grid) -> tuple:
    return (
        f"# {prefix}system_dim={grid.system_dim}",
        f"# {prefix}rates={','.join(_fmt(r) for r in grid.rates)}",
        f"# {prefix}initial={','.join(_fmt(p) for p in grid.initial)}",
        f"# {prefix}levels={','.join(_fmt(e) for e in grid.levels)}",
    )


def _qubit_grid(spec: SweepSpec, t_axis):
    p = spec.fixed_params
    pg = p["pg"]
    gap = p.get("gap", 1.0)
    h = Hamiltonian((-gap / 2.0, gap / 2.0))
    return ergotropy_landscape(
        (pg, 1.0 - pg), h, spec.swept.values(), t_axis, (p.get("rate", 1.0),)
    )


def _qutrit_grid(spec: SweepSpec, t_axis):
    p = spec.fixed_params
    h = Hamiltonian((0.0, p.get("gap10", 1.0), p.get("gap20", 2.0)))
    return ergotropy_landscape(
        (p["p0"], p["p1"], p["p2"]),
        h,
        spec.swept.values(),
        t_axis,
        (p.get("rate1", 1.0), p.get("rate2", 1.0)),
    )


def _t_axis(spec: SweepSpec) -> np.ndarray:
    tmax = spec.fixed_params.get("tmax", 1.0)
    tpoints = int(spec.fixed_params.get("tpoints", spec.swept.points))
    if tpoints < 2:
        raise OutOfRangeError("tpoints must be at least 2")
    return np.linspace(0.0, tmax, tpoints)


def _sweep_ergotropy_map(spec: SweepSpec, parallel: int, paper_literal: bool) -> SweepTable:
    t_axis = _t_axis(spec)
    dim = int(spec.fixed_params.get("dim", 2))
    grid = _qubit_grid(spec, t_axis) if dim == 2 else _qutrit_grid(spec, t_axis)
    rows = [
        (grid.f_axis[i], grid.t_axis[j], grid.values[i, j])
        for i in range(grid.f_axis.size)
        for j in range(grid.t_axis.size)
    ]
    return SweepTable(
        columns=("f", "t", "value"),
        rows=tuple(rows),
        preamble=_grid_preamble("", grid),
    )


def _sweep_ergotropy_diff(spec: SweepSpec, parallel: int, paper_literal: bool) -> SweepTable:
    t_axis = _t_axis(spec)
    qutrit = _qutrit_grid(spec, t_axis)
    qubit = _qubit_grid(spec, t_axis)
    diff = landscape_difference(qutrit, qubit)
    rows = [
        (
            diff.f_axis[i],
            diff.t_axis[j],
            qutrit.values[i, j],
            qubit.values[i, j],
            diff.values[i, j],
        )
        for i in range(diff.f_axis.size)
        for j in range(diff.t_axis.size)
    ]
    preamble = (
        _grid_preamble("qutrit_", qutrit)
        + _grid_preamble("qubit_", qubit)
        + (f"# qutrit_only_cells={diff.qutrit_only_cells}",)
    )
    return SweepTable(
        columns=("f", "t", "w_qutrit", "w_qubit", "dw"),
        rows=tuple(rows),
        preamble=preamble,
    )


def _evaluate_jobs(jobs, evaluate, parallel: int):
    if parallel and parallel > 1:
        with ThreadPoolExecutor(max_workers=parallel) as pool:
            return list(pool.map(evaluate, jobs))
    return [evaluate(job) for job in jobs]


_TARGETS = {
    "work_vs_f": dict(keys=_QUBIT_KEYS, sweep="f"),
    "work_vs_pg": dict(keys=_QUBIT_KEYS, sweep="pg"),
    "work_vs_f_noncyclic": dict(keys=_QUBIT_KEYS, sweep="f"),
    "heat_work_cyclic_vs_noncyclic": dict(keys=_QUBIT_KEYS, sweep="f"),
    "qutrit_vs_qubit_work": dict(keys=_QUBIT_KEYS | _QUTRIT_KEYS, sweep="f"),
    "efficiency": dict(keys=_QUBIT_KEYS | _QUTRIT_KEYS, sweep="f"),
    "ergotropy_map": dict(keys=_MAP_KEYS | {"f"}, sweep="f"),
    "ergotropy_diff": dict(keys=_MAP_KEYS | {"f"}, sweep="f"),
}


def _validate_spec(spec: SweepSpec) -> None:
    if spec.target not in _TARGETS:
        raise OutOfRangeError(f"unknown sweep target {spec.target!r}")
    allowed = _TARGETS[spec.target]["keys"]
    for key in spec.fixed_params:
        if key not in allowed:
            raise OutOfRangeError(f"parameter {key!r} does not apply to target {spec.target!r}")
    if spec.swept.name not in allowed:
        raise OutOfRangeError(f"swept parameter {spec.swept.name!r} does not apply")
    if spec.series is not None and spec.series.name not in allowed:
        raise OutOfRangeError(f"series parameter {spec.series.name!r} does not apply")


def run_sweep(spec: SweepSpec, *, parallel: int = 1, paper_literal: bool = False) -> SweepTable:
    """Evaluate a sweep spec into a flat table; see module docstring."""
    _validate_spec(spec)
    target = spec.target
    if target == "work_vs_f" or target == "work_vs_pg":
        return _sweep_qubit(spec, run_cyclic_qubit, parallel, paper_literal)
    if target == "work_vs_f_noncyclic":
        return _sweep_qubit(spec, run_noncyclic_qubit, parallel, paper_literal)
    if target == "heat_work_cyclic_vs_noncyclic":
        return _sweep_cyclic_vs_noncyclic(spec, parallel, paper_literal)
    if target == "qutrit_vs_qubit_work":
        return _sweep_mixed(spec, run_cyclic_qubit, parallel, paper_literal)
    if target == "efficiency":
        return _sweep_mixed(spec, run_noncyclic_qubit, parallel, paper_literal)
    if target == "ergotropy_map":
        return _sweep_ergotropy_map(spec, parallel, paper_literal)
    if target == "ergotropy_diff":
        return _sweep_ergotropy_diff(spec, parallel, paper_literal)
    raise OutOfRangeError(f"unknown sweep target {target!r}")  # unreachable


_PRESET_BUILDERS = {}


def _preset(name):
    def register(fn):
        _PRESET_BUILDERS[name] = fn
        return fn

    return register


_DEFAULT_POINTS = 201


@_preset("fig1")
def _fig1() -> SweepSpec:
    """Cyclic work against emission probability, one curve per damping."""
    return SweepSpec(
        target="work_vs_f",
        fixed_params={"pg": 0.9, "dh": 1.0, "dc": 0.5, "k": 1.0},
        swept=SweptAxis("f", 0.0, 1.0, _DEFAULT_POINTS),
        series=SeriesAxis("gamma", (0.1, 0.2, 0.5, 0.7, 1.0)),
    )


@_preset("fig2")
def _fig2() -> SweepSpec:
    """Cyclic work against ground population, one curve per hot gap."""
    return SweepSpec(
        target="work_vs_pg",
        fixed_params={"f": 0.5, "gamma": 0.5, "dc": 0.5, "k": 1.0},
        swept=SweptAxis("pg", 0.0, 1.0, _DEFAULT_POINTS),
        series=SeriesAxis("dh", (1.0, 5.0, 10.0, 20.0, 50.0)),
    )


@_preset("fig3")
def _fig3() -> SweepSpec:
    """Cyclic work against emission probability, one curve per ground population."""
    return SweepSpec(
        target="work_vs_f",
        fixed_params={"gamma": 0.5, "dh": 1.0, "dc": 0.5, "k": 1.0},
        swept=SweptAxis("f", 0.0, 1.0, _DEFAULT_POINTS),
        series=SeriesAxis("pg", (0.0, 0.4, 0.5, 0.9)),
    )


@_preset("fig4")
def _fig4() -> SweepSpec:
    """Heat rejected and work, cyclic rows then finite-time (non-cyclic) rows."""
    return SweepSpec(
        target="heat_work_cyclic_vs_noncyclic",
        fixed_params={"pg": 0.9, "gamma": 0.5, "k": 0.5, "dh": 1.0, "dc": 0.5},
        swept=SweptAxis("f", 0.0, 1.0, _DEFAULT_POINTS),
    )


@_preset("fig5")
def _fig5() -> SweepSpec:
    """Work against emission probability for matched qubit and qutrit media.

    Matched configuration: both start fully in the ground level, share the
    damping value 0.4 on every damping parameter, and the qutrit gaps double
    the qubit gap (hot 1 -> (1, 2), cold 0.5 -> (0.5, 1)).
    """
    return SweepSpec(
        target="qutrit_vs_qubit_work",
        fixed_params={
            "pg": 1.0, "gamma": 0.4, "k": 1.0, "dh": 1.0, "dc": 0.5,
            "p0": 1.0, "p1": 0.0, "p2": 0.0,
            "lam1": 0.4, "lam2": 0.4, "k1": 0.4, "k2": 0.4,
            "dh10": 1.0, "dh20": 2.0, "dc10": 0.5, "dc20": 1.0,
        },
        swept=SweptAxis("f", 0.0, 1.0, _DEFAULT_POINTS),
    )


@_preset("fig6")
def _fig6() -> SweepSpec:
    """Efficiency against emission probability, non-cyclic qubit vs qutrit."""
    return SweepSpec(
        target="efficiency",
        fixed_params={
            "pg": 0.9, "gamma": 0.4, "k": 0.4, "dh": 1.0, "dc": 0.5,
            "p0": 0.9, "p1": 0.1, "p2": 0.0,
            "lam1": 0.4, "lam2": 0.4, "k1": 0.4, "k2": 0.4,
            "dh10": 1.0, "dh20": 2.0, "dc10": 0.5, "dc20": 1.0,
        },
        swept=SweptAxis("f", 0.0, 1.0, _DEFAULT_POINTS),
    )


@_preset("fig7")
def _fig7() -> SweepSpec:
    """Ergotropy landscapes over (f, t) plus the qutrit-minus-qubit map.

    Shared axes run to t = 1.28, inside the feasibility cap for rates
    (1, 0.25) where lambda1(t) + lambda2(t) reaches 1 near t = 1.289. Both
    media start fully in the ground level.
    """
    return SweepSpec(
        target="ergotropy_diff",
        fixed_params={
            "pg": 1.0, "p0": 1.0, "p1": 0.0, "p2": 0.0,
            "rate": 1.0, "rate1": 1.0, "rate2": 0.25,
            "gap": 1.0, "gap10": 1.0, "gap20": 2.0,
            "tmax": 1.28, "tpoints": _DEFAULT_POINTS,
        },
        swept=SweptAxis("f", 0.0, 1.0, _DEFAULT_POINTS),
    )


PRESET_NAMES = tuple(sorted(_PRESET_BUILDERS))


def preset(name: str) -> SweepSpec:
    """Return the named figure preset; raises UnknownPresetError otherwise."""
    try:
        builder = _PRESET_BUILDERS[name]
    except KeyError:
        raise UnknownPresetError(
            f"unknown preset {name!r}; available: {', '.join(PRESET_NAMES)}"
        ) from None
    return builder()


def with_points(spec: SweepSpec, points: int) -> SweepSpec:
    """Copy of the spec at a different sweep resolution (t axis included)."""
    swept = replace(spec.swept, points=points)
    fixed = dict(spec.fixed_params)
    if "tpoints" in fixed:
        fixed["tpoints"] = points
    return replace(spec, swept=swept, fixed_params=fixed)


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    x = float(value)
    if math.isnan(x):
        return "nan"
    return format(x, ".12g")


def emit_csv(table: SweepTable, destination=None) -> None:
    """Write header plus rows, '\\n'-terminated, 12 significant digits.

    destination: path-like for a file, None or '-' for standard output.
    """
    lines = list(table.preamble)
    lines.append(",".join(table.columns))
    for row in table.rows:
        lines.append(",".join(_fmt(v) for v in row))
    text = "\n".join(lines) + "\n"
    if destination is None or destination == "-":
        import sys

        sys.stdout.write(text)
        return
    Path(destination).write_text(text, encoding="utf-8", newline="")
