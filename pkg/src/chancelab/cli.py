"""Reproducible experiment runner.

One subcommand per scenario; a JSON config file supplies the parameters and
individual flags override matching keys.  All data outputs are deterministic
functions of (config, seeds): probability columns are exact "p/q" strings,
and decimal renderings appear only in plot-data files.

Exit codes: 0 success, 2 config error (message names the offending key),
3 scenario error (wraps module errors such as a deficient true model).
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Mapping, Sequence

from . import __version__
from .confirmation import (
    ChanceHypothesis,
    ConfirmationError,
    Trajectory,
    make_credence_state,
    run_trajectory,
    trajectory_to_csv,
)
from .measures import (
    MeasureError,
    PartitionMeasure,
    deficiency,
    dominate,
    domination_report,
    dyadic_tail_measure,
    hstar,
    mass,
    measure_from_json,
    measure_to_json,
    total_mass,
)
from .procedures import (
    Arc,
    ProcedureError,
    arc_chance,
    circle_model_from_json,
    coin_prefix_chance,
    rejection_lottery,
    shrinking_arcs,
    singleton_chance,
)
from .rational import (
    ProbabilityRangeError,
    RationalFormatError,
    as_fraction,
    decimal_str,
    format_rational,
)
from .scales import (
    OrdinalIndex,
    PolynomialScaleFamily,
    ScaleError,
    TabulatedSequenceFunction,
    build_scale,
    coverage,
    dartboard_from_json,
    dominating_function,
    seq_eval,
    sequence_function_from_json,
    verify_scale,
)

__all__ = [
    "ConfigError",
    "ScenarioError",
    "ExperimentConfig",
    "RunManifest",
    "load_config",
    "run",
    "emit_plot_data",
    "main",
]

_MODULE_ERRORS = (
    MeasureError,
    ConfirmationError,
    ScaleError,
    ProcedureError,
    RationalFormatError,
    ProbabilityRangeError,
)

_STOCHASTIC = {"shaman", "confirm", "lottery"}
_UINT64_SPAN = 2**64


class ConfigError(Exception):
    """Invalid or unknown configuration; exits with code 2."""


class ScenarioError(Exception):
    """A scenario failed while executing; exits with code 3."""


@dataclass(frozen=True)
class ExperimentConfig:
    scenario: str
    params: Mapping[str, object]
    seeds: tuple[int, ...]
    out: Path
    fmt: str
    canonical: str  # normalized config text, hashed into the manifest


@dataclass(frozen=True)
class RunManifest:
    config_hash: str
    tool_version: str
    scenario: str
    seeds: tuple[int, ...]
    outputs: tuple[str, ...]
    wall_clock_seconds: float


# ---------------------------------------------------------------------------
# Config loading.


def _require_keys(
    obj: Mapping[str, object], allowed: set[str], required: set[str], context: str
) -> None:
    if not isinstance(obj, Mapping):
        raise ConfigError(f"{context} must be a JSON object")
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise ConfigError(f"unknown key {unknown[0]!r} in {context}")
    missing = sorted(required - set(obj))
    if missing:
        raise ConfigError(f"missing key {missing[0]!r} in {context}")


def _int_value(value: object, key: str, minimum: int) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise ConfigError(f"key {key!r} must be an integer, got {value!r}")
    if value < minimum:
        raise ConfigError(f"key {key!r} must be >= {minimum}, got {value}")
    return value


def _rational_value(value: object, key: str) -> Fraction:
    if not isinstance(value, (str, int)):
        raise ConfigError(f"key {key!r} must be an exact 'p/q' string, got {value!r}")
    try:
        return as_fraction(value)
    except RationalFormatError as exc:
        raise ConfigError(f"key {key!r}: {exc}") from exc


def _parse_measure(value: object, key: str) -> PartitionMeasure:
    if not isinstance(value, Mapping):
        raise ConfigError(f"key {key!r} must be a measure object")
    try:
        return measure_from_json(value)
    except _MODULE_ERRORS as exc:
        raise ConfigError(f"key {key!r}: {exc}") from exc


def _parse_family(value: object, key: str):
    if not isinstance(value, Mapping):
        raise ConfigError(f"key {key!r} must be a family object")
    kind = value.get("kind")
    try:
        if kind == "polynomial":
            _require_keys(value, {"kind", "coeffs", "exceptions"}, {"kind", "coeffs"}, key)
            coeffs = tuple(
                tuple(as_fraction(c) for c in row) for row in value["coeffs"]
            )
            exceptions = tuple(
                sequence_function_from_json(fx) for fx in value.get("exceptions", [])
            )
            return PolynomialScaleFamily(coeffs, exceptions)
        if kind == "list":
            _require_keys(value, {"kind", "members"}, {"kind", "members"}, key)
            return [sequence_function_from_json(m) for m in value["members"]]
    except _MODULE_ERRORS as exc:
        raise ConfigError(f"key {key!r}: {exc}") from exc
    raise ConfigError(f"key 'kind' in {key} must be 'polynomial' or 'list'")


def _validate_shaman(raw: Mapping[str, object]) -> dict:
    _require_keys(raw, {"draws", "plot"}, set(), "shaman config")
    return {
        "draws": _int_value(raw.get("draws", 100), "draws", 0),
        "plot": bool(raw.get("plot", False)),
    }


def _validate_confirm(raw: Mapping[str, object]) -> dict:
    _require_keys(
        raw,
        {"hypotheses", "priors", "true_model", "draws", "plot"},
        {"hypotheses", "priors", "true_model"},
        "confirm config",
    )
    entries = raw["hypotheses"]
    if not isinstance(entries, list) or len(entries) < 2:
        raise ConfigError("key 'hypotheses' must list at least two hypotheses")
    hypotheses = []
    for i, entry in enumerate(entries):
        if not isinstance(entry, Mapping):
            raise ConfigError(f"key 'hypotheses[{i}]' must be an object")
        extra = {k: v for k, v in entry.items() if k != "name"}
        measure = _parse_measure(extra, f"hypotheses[{i}]")
        name = entry.get("name", measure.label or f"h{i}")
        if not isinstance(name, str):
            raise ConfigError(f"key 'hypotheses[{i}].name' must be a string")
        hypotheses.append(ChanceHypothesis(name, measure))
    priors_raw = raw["priors"]
    if not isinstance(priors_raw, list) or len(priors_raw) != len(hypotheses):
        raise ConfigError("key 'priors' must list one rational per hypothesis")
    priors = [_rational_value(p, "priors") for p in priors_raw]
    return {
        "hypotheses": hypotheses,
        "priors": priors,
        "true_model": _parse_measure(raw["true_model"], "true_model"),
        "draws": _int_value(raw.get("draws", 100), "draws", 0),
        "plot": bool(raw.get("plot", False)),
    }


def _validate_dominate(raw: Mapping[str, object]) -> dict:
    _require_keys(raw, {"measure", "horizon"}, {"measure"}, "dominate config")
    return {
        "measure": _parse_measure(raw["measure"], "measure"),
        "horizon": _int_value(raw.get("horizon", 10), "horizon", 1),
    }


def _validate_bk(raw: Mapping[str, object]) -> dict:
    _require_keys(raw, {"board", "horizon"}, {"board"}, "bk config")
    board_raw = raw["board"]
    if not isinstance(board_raw, Mapping):
        raise ConfigError("key 'board' must be a dartboard object")
    try:
        board = dartboard_from_json(board_raw)
    except _MODULE_ERRORS as exc:
        raise ConfigError(f"key 'board': {exc}") from exc
    return {"board": board, "horizon": _int_value(raw.get("horizon", 16), "horizon", 1)}


def _validate_scale(raw: Mapping[str, object]) -> dict:
    _require_keys(
        raw, {"family", "stages", "preview", "horizon"}, {"family", "stages"}, "scale config"
    )
    stages_raw = raw["stages"]
    if not isinstance(stages_raw, list) or not stages_raw:
        raise ConfigError("key 'stages' must be a nonempty list of stage names")
    try:
        stages = [OrdinalIndex.from_string(str(s)) for s in stages_raw]
    except ScaleError as exc:
        raise ConfigError(f"key 'stages': {exc}") from exc
    horizon = raw.get("horizon")
    if horizon is not None:
        horizon = _int_value(horizon, "horizon", 1)
    return {
        "family": _parse_family(raw["family"], "family"),
        "stages": stages,
        "preview": _int_value(raw.get("preview", 10), "preview", 1),
        "horizon": horizon,
    }


def _validate_spinner(raw: Mapping[str, object]) -> dict:
    _require_keys(raw, {"model", "arcs", "point", "depth"}, {"model"}, "spinner config")
    if not isinstance(raw["model"], Mapping):
        raise ConfigError("key 'model' must be a circle-model object")
    try:
        model = circle_model_from_json(raw["model"])
    except _MODULE_ERRORS as exc:
        raise ConfigError(f"key 'model': {exc}") from exc
    arcs = []
    for i, pair in enumerate(raw.get("arcs", [])):
        if not isinstance(pair, list) or len(pair) != 2:
            raise ConfigError(f"key 'arcs[{i}]' must be a [start, end] pair")
        try:
            arcs.append(Arc(as_fraction(pair[0]), as_fraction(pair[1])))
        except _MODULE_ERRORS as exc:
            raise ConfigError(f"key 'arcs[{i}]': {exc}") from exc
    point = raw.get("point")
    if point is not None:
        point = _rational_value(point, "point")
    depth = raw.get("depth")
    if depth is not None:
        depth = _int_value(depth, "depth", 1)
    if (point is None) != (depth is None):
        raise ConfigError("keys 'point' and 'depth' must be given together")
    if not arcs and point is None:
        raise ConfigError("key 'arcs' or keys 'point'/'depth' must be present")
    return {"model": model, "arcs": arcs, "point": point, "depth": depth}


def _validate_coins(raw: Mapping[str, object]) -> dict:
    _require_keys(raw, {"biases", "bias", "prefix"}, {"prefix"}, "coins config")
    prefix = raw["prefix"]
    if not isinstance(prefix, str) or not prefix:
        raise ConfigError("key 'prefix' must be a nonempty string of H/T")
    if "biases" in raw and "bias" in raw:
        raise ConfigError("key 'bias' conflicts with key 'biases'")
    if "bias" in raw:
        biases = [_rational_value(raw["bias"], "bias")] * len(prefix)
    elif "biases" in raw:
        if not isinstance(raw["biases"], list):
            raise ConfigError("key 'biases' must be a list of rationals")
        biases = [_rational_value(b, "biases") for b in raw["biases"]]
    else:
        biases = [Fraction(1, 2)] * len(prefix)
    return {"biases": biases, "prefix": prefix}


def _validate_lottery(raw: Mapping[str, object]) -> dict:
    _require_keys(raw, {"hit_chance", "max_spins"}, {"hit_chance"}, "lottery config")
    return {
        "hit_chance": _rational_value(raw["hit_chance"], "hit_chance"),
        "max_spins": _int_value(raw.get("max_spins", 100), "max_spins", 1),
    }


_VALIDATORS: dict[str, Callable[[Mapping[str, object]], dict]] = {
    "shaman": _validate_shaman,
    "confirm": _validate_confirm,
    "dominate": _validate_dominate,
    "bk": _validate_bk,
    "scale": _validate_scale,
    "spinner": _validate_spinner,
    "coins": _validate_coins,
    "lottery": _validate_lottery,
}


def load_config(
    scenario: str,
    raw: Mapping[str, object] | None = None,
    overrides: Mapping[str, object] | None = None,
) -> ExperimentConfig:
    """Merge a raw config mapping with flag overrides and validate strictly."""
    if scenario not in _VALIDATORS:
        raise ConfigError(f"unknown scenario {scenario!r}")
    merged = dict(raw or {})
    declared = merged.pop("scenario", scenario)
    if declared != scenario:
        raise ConfigError(f"key 'scenario' says {declared!r}, command says {scenario!r}")
    for key, value in (overrides or {}).items():
        if value is not None:
            merged[key] = value

    seeds_raw = merged.pop("seeds", None)
    out_raw = merged.pop("out", None)
    fmt = merged.pop("format", "csv")
    if fmt not in ("csv", "json"):
        raise ConfigError(f"key 'format' must be 'csv' or 'json', got {fmt!r}")

    if scenario in _STOCHASTIC:
        if seeds_raw is None:
            seeds_raw = [0]
        if not isinstance(seeds_raw, list) or not seeds_raw:
            raise ConfigError("key 'seeds' must be a nonempty list of integers")
        seeds = []
        for s in seeds_raw:
            if not isinstance(s, int) or isinstance(s, bool) or not 0 <= s < _UINT64_SPAN:
                raise ConfigError(f"key 'seeds' must hold 64-bit integers, got {s!r}")
            seeds.append(s)
    else:
        if seeds_raw is not None:
            raise ConfigError(f"key 'seeds' does not apply to scenario {scenario!r}")
        seeds = []

    params = _VALIDATORS[scenario](merged)
    out = Path(out_raw) if out_raw is not None else Path(f"{scenario}_out")
    canonical = json.dumps(
        {"scenario": scenario, "config": _jsonable(merged), "seeds": seeds, "format": fmt},
        sort_keys=True,
    )
    return ExperimentConfig(scenario, params, tuple(seeds), out, fmt, canonical)


def _jsonable(value: object) -> object:
    if isinstance(value, Mapping):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, Fraction):
        return format_rational(value)
    return value


# ---------------------------------------------------------------------------
# Output helpers.


def _csv_text(header: Sequence[str], rows: Sequence[Sequence[object]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _json_text(payload: object) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _table_file(
    name: str, fmt: str, header: Sequence[str], rows: Sequence[Sequence[object]]
) -> tuple[str, str]:
    if fmt == "csv":
        return f"{name}.csv", _csv_text(header, rows)
    payload = [dict(zip(header, row)) for row in rows]
    return f"{name}.json", _json_text(payload)


def _frac(value: Fraction) -> str:
    return format_rational(value)


# ---------------------------------------------------------------------------
# Scenario runners.  Each returns (files, console_lines).


def _shaman_state():
    h = ChanceHypothesis("H", dyadic_tail_measure(Fraction(1, 2), "under-filled-halving"))
    h_star = ChanceHypothesis("Hstar", dyadic_tail_measure(Fraction(1), "coin-geometric"))
    state = make_credence_state([h, h_star], [Fraction(1, 2), Fraction(1, 2)])
    return state, h_star.measure


def _trajectory_rows(trajectory: Trajectory) -> tuple[list[str], list[list[object]]]:
    header = (
        ["step", "drawn_cell"]
        + [f"cred_{name}" for name in trajectory.hypothesis_names]
        + ["step_factor", "cumulative_factor", "envelope"]
    )
    rows: list[list[object]] = []
    for step in trajectory.steps:
        rows.append(
            [step.step, "" if step.drawn_cell is None else step.drawn_cell]
            + [_frac(p) for p in step.posteriors]
            + [
                "" if step.step_factor is None else _frac(step.step_factor),
                "" if step.cumulative_factor is None else _frac(step.cumulative_factor),
                "" if step.envelope is None else _frac(step.envelope),
            ]
        )
    return header, rows


def _run_shaman(params, seeds, fmt):
    files = []
    for seed, trajectory in _per_seed(
        seeds, lambda s: run_trajectory(*_shaman_trajectory_args(params), seed=s)
    ):
        header, rows = _trajectory_rows(trajectory)
        files.append(_table_file(f"shaman_seed{seed}", fmt, header, rows))
        if params["plot"]:
            files.append((f"shaman_plot_seed{seed}.csv", _plot_text(trajectory, 0)))
    return files, []


def _shaman_trajectory_args(params):
    state, true_model = _shaman_state()
    return state, true_model, params["draws"]


def _run_confirm(params, seeds, fmt):
    state = make_credence_state(params["hypotheses"], params["priors"])
    files = []
    for seed, trajectory in _per_seed(
        seeds,
        lambda s: run_trajectory(state, params["true_model"], params["draws"], seed=s),
    ):
        header, rows = _trajectory_rows(trajectory)
        files.append(_table_file(f"confirm_seed{seed}", fmt, header, rows))
        if params["plot"]:
            files.append((f"confirm_plot_seed{seed}.csv", _plot_text(trajectory, 0)))
    return files, []


def _measure_cells(m: PartitionMeasure, horizon: int) -> list[dict]:
    return [{"n": n, "mass": _frac(mass(m, n))} for n in range(1, horizon + 1)]


def _report_payload(report) -> dict:
    return {
        "dominates_everywhere": report.dominates_everywhere,
        "first_failure": report.first_failure,
        "tail_dominates": report.tail_dominates,
        "cells": [
            {
                "n": c.index,
                "base": _frac(c.base_mass),
                "candidate": _frac(c.candidate_mass),
                "strict": c.strict,
            }
            for c in report.cells
        ],
    }


def _run_dominate(params, seeds, fmt):
    base = params["measure"]
    horizon = params["horizon"]
    eps = deficiency(base)
    if eps == 0:
        raise ScenarioError(
            f"measure {base.label!r} is already countably additive; nothing to dominate"
        )
    gap_split = dominate(base)
    rescaled = hstar(base)
    payload = {
        "base": {
            "measure": measure_to_json(base),
            "total_mass": _frac(total_mass(base)),
            "deficiency": _frac(eps),
            "cells": _measure_cells(base, horizon),
        },
        "constructions": {
            "gap_split": {
                "measure": measure_to_json(gap_split),
                "total_mass": _frac(total_mass(gap_split)),
                "cells": _measure_cells(gap_split, horizon),
                "report": _report_payload(domination_report(base, gap_split, horizon)),
            },
            "rescaled": {
                "measure": measure_to_json(rescaled),
                "total_mass": _frac(total_mass(rescaled)),
                "cells": _measure_cells(rescaled, horizon),
                "report": _report_payload(domination_report(base, rescaled, horizon)),
            },
        },
    }
    if fmt == "json":
        files = [("dominate.json", _json_text(payload))]
    else:
        header = ["n", "base", "gap_split", "gap_split_strict", "rescaled", "rescaled_strict"]
        rows = [
            [
                n,
                _frac(mass(base, n)),
                _frac(mass(gap_split, n)),
                mass(gap_split, n) > mass(base, n),
                _frac(mass(rescaled, n)),
                mass(rescaled, n) > mass(base, n),
            ]
            for n in range(1, horizon + 1)
        ]
        files = [("dominate.csv", _csv_text(header, rows)), ("dominate.json", _json_text(payload))]
    lines = [
        f"deficiency = {_frac(eps)}",
        f"gap_split total = {_frac(total_mass(gap_split))}",
        f"rescaled total = {_frac(total_mass(rescaled))}",
    ]
    return files, lines


def _run_bk(params, seeds, fmt):
    board = params["board"]
    horizon = params["horizon"]
    f_omega = dominating_function(board, horizon)
    covered, certificate = coverage(board, f_omega, horizon)
    header = ["n", "f_omega", "exceedance", "budget", "within_budget"]
    rows = [
        [
            n,
            seq_eval(f_omega, n),
            _frac(certificate.exceedance[n - 1]),
            _frac(Fraction(1, 2 ** (n + 1))),
            certificate.quantile_guarantee[n - 1],
        ]
        for n in range(1, horizon + 1)
    ]
    cert_payload = {
        "coverage": _frac(covered),
        "exceedance_sum": _frac(certificate.exceedance_sum),
        "union_lower_bound": _frac(certificate.union_lower_bound),
        "dyadic_lower_bound": _frac(certificate.dyadic_lower_bound),
        "all_quantiles_within_budget": certificate.all_quantiles_within_budget,
        "chain": certificate.chain_lines(),
    }
    if fmt == "json":
        payload = {"table": [dict(zip(header, row)) for row in rows], "certificate": cert_payload}
        files = [("bk.json", _json_text(payload))]
    else:
        files = [
            ("bk_table.csv", _csv_text(header, rows)),
            ("bk_certificate.json", _json_text(cert_payload)),
        ]
    lines = [f"f_omega({n}) = {seq_eval(f_omega, n)}" for n in range(1, horizon + 1)]
    lines += certificate.chain_lines()
    return files, lines


def _run_scale(params, seeds, fmt):
    family = params["family"]
    preview = params["preview"]
    built = [
        (stage, build_scale(family, stage, horizon=params["horizon"]))
        for stage in params["stages"]
    ]
    report = verify_scale(family, built)
    header = ["stage", "n", "value"]
    rows = []
    for stage, fn in built:
        top = preview
        if isinstance(fn, TabulatedSequenceFunction):
            top = min(preview, fn.horizon)
        for n in range(1, top + 1):
            rows.append([str(stage), n, seq_eval(fn, n)])
    checks_payload = [
        {
            "kind": c.kind,
            "lower": str(c.lower),
            "upper": str(c.upper),
            "passed": c.passed,
            "threshold": c.threshold,
            "note": c.note,
        }
        for c in report.checks
    ]
    if fmt == "json":
        payload = {
            "stages": [dict(zip(header, row)) for row in rows],
            "checks": checks_payload,
            "all_passed": report.all_passed,
        }
        files = [("scale.json", _json_text(payload))]
    else:
        files = [
            ("scale_stages.csv", _csv_text(header, rows)),
            ("scale_report.json", _json_text({"checks": checks_payload, "all_passed": report.all_passed})),
        ]
    lines = [f"verification {'passed' if report.all_passed else 'FAILED'} ({len(report.checks)} checks)"]
    return files, lines


def _run_spinner(params, seeds, fmt):
    model = params["model"]
    header = ["kind", "start", "end", "width", "chance", "bound"]
    rows = []
    for arc in params["arcs"]:
        rows.append(
            ["arc", _frac(arc.start), _frac(arc.end), _frac(arc.width), _frac(arc_chance(model, arc)), ""]
        )
    if params["point"] is not None:
        point = params["point"]
        rows.append(["singleton", _frac(point), _frac(point), "0/1", _frac(singleton_chance(model, point)), ""])
        for k, (arc, chance) in enumerate(shrinking_arcs(model, point, params["depth"]), start=1):
            rows.append(
                [
                    "shrink",
                    _frac(arc.start),
                    _frac(arc.end),
                    _frac(arc.width),
                    _frac(chance),
                    _frac(Fraction(1, 2**k)),
                ]
            )
    return [_table_file("spinner", fmt, header, rows)], []


def _run_coins(params, seeds, fmt):
    biases = params["biases"]
    prefix = params["prefix"]
    header = ["flip", "side", "bias", "flip_chance", "running_product", "running_bound"]
    rows = []
    product = Fraction(1)
    r = Fraction(0)
    for i, side in enumerate(prefix, start=1):
        bias = biases[i - 1]
        flip = bias if side == "H" else 1 - bias
        product *= flip
        r = max(r, flip)
        rows.append([i, side, _frac(bias), _frac(flip), _frac(product), _frac(r**i)])
    final_product, final_bound = coin_prefix_chance(biases, prefix)
    lines = [
        f"prefix chance = {_frac(final_product)}",
        f"bound = {_frac(final_bound)}",
    ]
    return [_table_file("coins", fmt, header, rows)], lines


def _run_lottery(params, seeds, fmt):
    files = []
    summaries = {}
    for seed, report in _per_seed(
        seeds, lambda s: rejection_lottery(params["hit_chance"], params["max_spins"], s)
    ):
        header = ["spin", "hit"]
        rows = [[i, hit] for i, hit in enumerate(report.spins, start=1)]
        files.append(_table_file(f"lottery_seed{seed}", fmt, header, rows))
        summaries[str(seed)] = {
            "termination_spin": report.termination_spin,
            "termination_chance_within": _frac(report.termination_chance_within),
            "eventual_termination_chance": _frac(report.eventual_termination_chance),
        }
    files.append(("lottery_summary.json", _json_text(summaries)))
    return files, []


_RUNNERS = {
    "shaman": _run_shaman,
    "confirm": _run_confirm,
    "dominate": _run_dominate,
    "bk": _run_bk,
    "scale": _run_scale,
    "spinner": _run_spinner,
    "coins": _run_coins,
    "lottery": _run_lottery,
}


def _per_seed(seeds: Sequence[int], job: Callable[[int], object]):
    """Run one job per seed, in parallel when configured; results come back
    keyed and ordered by seed so aggregation is order-independent."""
    if len(seeds) <= 1:
        return [(seed, job(seed)) for seed in seeds]
    cap = os.environ.get("CHANCE_LAB_THREADS")
    workers = min(len(seeds), max(1, int(cap))) if cap else min(len(seeds), 4)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(job, seeds))
    return list(zip(seeds, results))


# ---------------------------------------------------------------------------
# Entry points.


def emit_plot_data(trajectory: Trajectory, path: str | Path, hypothesis_index: int = 0) -> Path:
    """Write plot-ready decay data: step, decimal credence (12 significant
    digits, round-half-even), exact credence.  The decimal column exists only
    here; every other emitted number in the package is exact."""
    path = Path(path)
    path.write_text(_plot_text(trajectory, hypothesis_index), encoding="utf-8", newline="")
    return path


def _plot_text(trajectory: Trajectory, hypothesis_index: int) -> str:
    if not trajectory.steps:
        raise ValueError("cannot plot an empty trajectory")
    header = ["step", "credence_decimal", "credence_exact"]
    rows = []
    for step in trajectory.steps:
        p = step.posteriors[hypothesis_index]
        rows.append([step.step, decimal_str(p), _frac(p)])
    return _csv_text(header, rows)


def run(config: ExperimentConfig, echo: Callable[[str], None] | None = None) -> RunManifest:
    """Execute the scenario, write its outputs, and return the manifest.

    ``echo`` receives human-readable summary lines (the bk table and
    certificate chain, for instance); the command-line entry point passes
    ``print``, library callers usually leave it unset.
    """
    started = time.perf_counter()
    try:
        files, lines = _RUNNERS[config.scenario](config.params, config.seeds, config.fmt)
    except (ConfigError, ScenarioError):
        raise
    except _MODULE_ERRORS as exc:
        raise ScenarioError(f"{config.scenario}: {exc}") from exc
    config.out.mkdir(parents=True, exist_ok=True)
    names = []
    for name, text in files:
        (config.out / name).write_text(text, encoding="utf-8", newline="")
        names.append(name)
    manifest = RunManifest(
        config_hash=hashlib.sha256(config.canonical.encode("utf-8")).hexdigest(),
        tool_version=__version__,
        scenario=config.scenario,
        seeds=config.seeds,
        outputs=tuple(names),
        wall_clock_seconds=time.perf_counter() - started,
    )
    manifest_payload = {
        "config_hash": manifest.config_hash,
        "tool_version": manifest.tool_version,
        "scenario": manifest.scenario,
        "seeds": list(manifest.seeds),
        "outputs": list(manifest.outputs),
        "wall_clock_seconds": manifest.wall_clock_seconds,
    }
    (config.out / "manifest.json").write_text(
        _json_text(manifest_payload), encoding="utf-8", newline=""
    )
    if echo is not None:
        for line in lines:
            echo(line)
    return manifest


_FLAG_KEYS = {
    "shaman": [("--draws", int, "draws")],
    "confirm": [("--draws", int, "draws")],
    "dominate": [("--horizon", int, "horizon")],
    "bk": [("--horizon", int, "horizon")],
    "scale": [("--preview", int, "preview"), ("--horizon", int, "horizon")],
    "spinner": [("--point", str, "point"), ("--depth", int, "depth")],
    "coins": [("--prefix", str, "prefix"), ("--bias", str, "bias")],
    "lottery": [("--hit-chance", str, "hit_chance"), ("--max-spins", int, "max_spins")],
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chance-lab", description="Exact-arithmetic chance experiments"
    )
    sub = parser.add_subparsers(dest="scenario", required=True)
    for scenario in _RUNNERS:
        p = sub.add_parser(scenario, help=f"run the {scenario} scenario")
        p.add_argument("--config", type=Path, help="JSON config file")
        p.add_argument("--seed", type=int, action="append", help="override seeds (repeatable)")
        p.add_argument("--out", type=Path, help="output directory")
        p.add_argument("--format", choices=["csv", "json"], help="table encoding")
        for flag, typ, _key in _FLAG_KEYS.get(scenario, []):
            p.add_argument(flag, type=typ)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        raw: dict = {}
        if args.config is not None:
            try:
                raw = json.loads(Path(args.config).read_text(encoding="utf-8"))
            except (OSError, json.JSONDecodeError) as exc:
                raise ConfigError(f"cannot read config file {args.config}: {exc}") from exc
            if not isinstance(raw, dict):
                raise ConfigError("config file must hold a JSON object")
        overrides: dict = {}
        if args.seed:
            overrides["seeds"] = args.seed
        if args.out is not None:
            overrides["out"] = str(args.out)
        if args.format is not None:
            overrides["format"] = args.format
        for flag, _typ, key in _FLAG_KEYS.get(args.scenario, []):
            value = getattr(args, flag.lstrip("-").replace("-", "_"))
            if value is not None:
                overrides[key] = value
        config = load_config(args.scenario, raw, overrides)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    try:
        manifest = run(config, echo=print)
    except ScenarioError as exc:
        print(f"scenario error: {exc}", file=sys.stderr)
        return 3
    print(f"wrote {len(manifest.outputs)} file(s) to {config.out} (hash {manifest.config_hash[:12]})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
