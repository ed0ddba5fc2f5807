"""Command-line front end: scenario ingestion, engine dispatch, report output.

Subcommands:

* ``fuse <file>``      — run the engines a scenario selects (``-`` = stdin).
* ``compare <file>``   — run every engine the scenario can support.
* ``enumerate --n k``  — print the canonical propositions over k singletons.
* ``check-logic``      — re-verify the classical principles by truth table.

Exit codes: 0 success, 2 input error, 3 inconsistent system (total conflict),
4 enumeration limit exceeded.  Inconsistency is a finding, not a fault, so it
gets its own code instead of a generic failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, replace
from typing import Sequence

from .analysis import CLASSICAL_PRINCIPLES, parse_formula, tautology_check
from .lattice import (
    AtomFrame,
    EnumerationLimitError,
    Frame,
    Model,
    Proposition,
    enumerate_hyper_power_set,
    proposition_from_names,
)
from .rulebase import ENGINES, DstAxes, FusionReport, Scenario, WeightedRule, run_scenario

EXIT_OK = 0
EXIT_INPUT_ERROR = 2
EXIT_INCONSISTENT = 3
EXIT_LIMIT = 4

_ENUM_NAMES = "abcdefgh"


class ScenarioError(ValueError):
    """Scenario text that cannot be turned into a valid Scenario."""


@dataclass(frozen=True)
class CliConfig:
    subcommand: str
    path: str | None = None
    engine: str | None = None
    fmt: str = "table"
    n: int = 2
    allow_large: bool = False
    verbose: bool = False


# ------------------------------------------------------------------- parsing


def _expect(value, kind, where: str):
    if kind is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ScenarioError(f"{where} must be a number, got {value!r}")
        return float(value)
    if not isinstance(value, kind):
        raise ScenarioError(f"{where} must be {kind.__name__}, got {type(value).__name__}")
    return value


def _get(mapping: dict, key: str, kind, where: str, default=None, required=False):
    if key not in mapping:
        if required:
            raise ScenarioError(f"missing required field {where}{key}")
        return default
    return _expect(mapping[key], kind, f"{where}{key}")


def _proposition(frame: Frame, nested, where: str) -> Proposition:
    terms = _expect(nested, list, where)
    for i, term in enumerate(terms):
        term = _expect(term, list, f"{where}[{i}]")
        for j, name in enumerate(term):
            _expect(name, str, f"{where}[{i}][{j}]")
    try:
        return proposition_from_names(frame, terms)
    except ValueError as exc:
        raise ScenarioError(f"{where}: {exc}") from exc


def parse_scenario(text: str) -> Scenario:
    """Validate scenario JSON, raising ScenarioError naming the broken field."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"not valid JSON: {exc}") from exc
    data = _expect(data, dict, "scenario")

    names = _get(data, "frame", list, "", required=True)
    for i, name in enumerate(names):
        _expect(name, str, f"frame[{i}]")
    try:
        frame = Frame(tuple(names))
    except ValueError as exc:
        raise ScenarioError(f"frame: {exc}") from exc

    constraint_sets = []
    for i, group in enumerate(_get(data, "constraints", list, "", default=[])):
        group = _expect(group, list, f"constraints[{i}]")
        members = set()
        for j, name in enumerate(group):
            name = _expect(name, str, f"constraints[{i}][{j}]")
            try:
                members.add(frame.index(name))
            except ValueError as exc:
                raise ScenarioError(f"constraints[{i}][{j}]: {exc}") from exc
        constraint_sets.append(frozenset(members))
    try:
        model = Model.from_constraints(frame, constraint_sets)
    except ValueError as exc:
        raise ScenarioError(f"constraints: {exc}") from exc

    rules = []
    for i, blob in enumerate(_get(data, "rules", list, "", default=[])):
        blob = _expect(blob, dict, f"rules[{i}]")
        antecedent = _proposition(frame, _get(blob, "if", list, f"rules[{i}].", required=True), f"rules[{i}].if")
        consequent = _proposition(frame, _get(blob, "then", list, f"rules[{i}].", required=True), f"rules[{i}].then")
        weight = _get(blob, "weight", float, f"rules[{i}].", required=True)
        try:
            rules.append(WeightedRule(antecedent, consequent, weight))
        except ValueError as exc:
            raise ScenarioError(f"rules[{i}]: {exc}") from exc

    observations = tuple(
        _proposition(frame, blob, f"observations[{i}]")
        for i, blob in enumerate(_get(data, "observations", list, "", default=[]))
    )
    queries = tuple(
        _proposition(frame, blob, f"queries[{i}]")
        for i, blob in enumerate(_get(data, "queries", list, "", default=[]))
    )

    engines = _get(data, "engines", list, "", default=["dsm"])
    for i, engine in enumerate(engines):
        _expect(engine, str, f"engines[{i}]")

    dst_axes = None
    axes_blob = _get(data, "dst_axes", dict, "")
    if axes_blob is not None:
        axes = _get(axes_blob, "axes", list, "dst_axes.", required=True)
        for i, axis in enumerate(axes):
            axis = _expect(axis, list, f"dst_axes.axes[{i}]")
            for j, value in enumerate(axis):
                _expect(value, str, f"dst_axes.axes[{i}][{j}]")
        literal_map = {}
        for name, coordinate in _get(axes_blob, "map", dict, "dst_axes.", required=True).items():
            coordinate = _expect(coordinate, list, f"dst_axes.map[{name!r}]")
            if len(coordinate) != 2:
                raise ScenarioError(f"dst_axes.map[{name!r}] must be [axis, value]")
            axis = _expect(coordinate[0], float, f"dst_axes.map[{name!r}][0]")
            value = _expect(coordinate[1], float, f"dst_axes.map[{name!r}][1]")
            if axis != int(axis) or value != int(value):
                raise ScenarioError(f"dst_axes.map[{name!r}] must hold integers")
            literal_map[_expect(name, str, "dst_axes.map key")] = (int(axis), int(value))
        try:
            dst_axes = DstAxes(AtomFrame(tuple(tuple(axis) for axis in axes)), literal_map)
        except ValueError as exc:
            raise ScenarioError(f"dst_axes: {exc}") from exc

    try:
        return Scenario(
            frame=frame,
            model=model,
            rules=tuple(rules),
            observations=observations,
            queries=queries,
            engines=tuple(engines),
            dst_axes=dst_axes,
        )
    except ValueError as exc:
        raise ScenarioError(str(exc)) from exc


# ------------------------------------------------------------------ emission


def _fmt(value: float | None) -> str:
    return "" if value is None else f"{value:.12g}"


def _rows(report: FusionReport) -> list[tuple[str, str, str, str, str]]:
    rows = []
    for result in report.results:
        for row in result.queries:
            if row.estimate is not None:
                bel = pl = _fmt(row.estimate)
            else:
                bel, pl = _fmt(row.bel), _fmt(row.pl)
            rows.append((result.engine, str(row.query), bel, pl, row.note))
    return rows


def _table(report: FusionReport) -> str:
    lines = []
    summary = [("engine", "status", "conflict", "K", "flags")]
    for result in report.results:
        summary.append(
            (
                result.engine,
                result.status,
                _fmt(result.conflict_mass),
                _fmt(result.normalization_constant),
                "; ".join(result.flags),
            )
        )
    lines.extend(_align(summary))
    for result in report.results:
        if result.estimates is not None:
            est = result.estimates
            lines.append(
                f"{result.engine} estimates: p_fly={_fmt(float(est.p_fly))} "
                f"p_not_fly={_fmt(float(est.p_not_fly))} "
                f"additivity_deficit={_fmt(float(est.additivity_deficit))} "
                f"bound={_fmt(float(est.bound))}"
            )
    lines.append("")
    lines.extend(_align([("engine", "query", "bel", "pl", "note")] + _rows(report)))
    return "\n".join(lines) + "\n"


def _align(rows: list[tuple[str, ...]]) -> list[str]:
    widths = [max(len(row[col]) for row in rows) for col in range(len(rows[0]))]
    return [
        "  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip()
        for row in rows
    ]


def _csv(report: FusionReport) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(("engine", "query", "bel", "pl", "note"))
    writer.writerows(_rows(report))
    return buffer.getvalue()


def emit_report(report: FusionReport, fmt: str = "table") -> str:
    """Render a report deterministically; same report, same bytes."""
    if fmt == "json":
        return json.dumps(report.to_json(), indent=2, ensure_ascii=False) + "\n"
    if fmt == "csv":
        return _csv(report)
    if fmt == "table":
        return _table(report)
    raise ValueError(f"unknown format {fmt!r}")


# ---------------------------------------------------------------- subcommands


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as handle:
        return handle.read()


def _exit_code(report: FusionReport) -> int:
    if any(result.status == "inconsistent" for result in report.results):
        return EXIT_INCONSISTENT
    return EXIT_OK


def _run_fuse(config: CliConfig) -> int:
    scenario = parse_scenario(_read_input(config.path))
    if config.engine:
        engines = ENGINES if config.engine == "all" else (config.engine,)
        try:
            scenario = replace(scenario, engines=engines)
        except ValueError as exc:
            raise ScenarioError(str(exc)) from exc
    if config.verbose:
        print(
            f"running {', '.join(scenario.engines)} on {len(scenario.rules)} rule(s), "
            f"{len(scenario.observations)} observation(s)",
            file=sys.stderr,
        )
    report = run_scenario(scenario)
    sys.stdout.write(emit_report(report, config.fmt))
    return _exit_code(report)


def _run_compare(config: CliConfig) -> int:
    scenario = parse_scenario(_read_input(config.path))
    engines = tuple(
        engine
        for engine in ENGINES
        if engine != "dst" or scenario.dst_axes is not None
    )
    if "dst" not in engines:
        print("note: dst skipped (scenario declares no dst_axes)", file=sys.stderr)
    scenario = replace(scenario, engines=engines)
    report = run_scenario(scenario)
    sys.stdout.write(emit_report(report, config.fmt))
    return _exit_code(report)


def _run_enumerate(config: CliConfig) -> int:
    if config.n < 1:
        raise ScenarioError("--n must be at least 1")
    names = tuple(
        _ENUM_NAMES[i] if i < len(_ENUM_NAMES) else f"s{i}" for i in range(config.n)
    )
    frame = Frame(names)
    props = enumerate_hyper_power_set(frame, allow_large=config.allow_large)
    for prop in props:
        print(prop)
    print(f"total {len(props)}")
    return EXIT_OK


def _run_check_logic(config: CliConfig) -> int:
    all_hold = True
    for name, text in CLASSICAL_PRINCIPLES.items():
        holds = tautology_check(parse_formula(text))
        all_hold &= holds
        print(f"{name:20s} {text:45s} {'tautology' if holds else 'FALSIFIABLE'}")
    return EXIT_OK if all_hold else 1


# -------------------------------------------------------------------- driver


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperbelief",
        description="Fuse weighted rule bases with Bayesian, Dempster-Shafer, "
        "and hybrid DSm engines.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="diagnostics on stderr")
    commands = parser.add_subparsers(dest="subcommand", required=True)

    fuse = commands.add_parser("fuse", help="run a scenario file ('-' reads stdin)")
    fuse.add_argument("path")
    fuse.add_argument("--engine", choices=(*ENGINES, "all"), help="override the scenario's engines")
    fuse.add_argument("--format", dest="fmt", choices=("table", "json", "csv"), default="table")

    compare = commands.add_parser("compare", help="run every engine the scenario supports")
    compare.add_argument("path")
    compare.add_argument("--format", dest="fmt", choices=("table", "json", "csv"), default="table")

    enumerate_cmd = commands.add_parser("enumerate", help="print the hyper-power set")
    enumerate_cmd.add_argument("--n", type=int, required=True, help="number of singletons")
    enumerate_cmd.add_argument("--allow-large", action="store_true", help="permit n above the default cap")

    commands.add_parser("check-logic", help="verify the classical principles by truth table")
    return parser


def _config_from_args(args: argparse.Namespace) -> CliConfig:
    return CliConfig(
        subcommand=args.subcommand,
        path=getattr(args, "path", None),
        engine=getattr(args, "engine", None),
        fmt=getattr(args, "fmt", "table"),
        n=getattr(args, "n", 2),
        allow_large=getattr(args, "allow_large", False),
        verbose=args.verbose,
    )


_COMMANDS = {
    "fuse": _run_fuse,
    "compare": _run_compare,
    "enumerate": _run_enumerate,
    "check-logic": _run_check_logic,
}


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    config = _config_from_args(args)
    try:
        return _COMMANDS[config.subcommand](config)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except EnumerationLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT


if __name__ == "__main__":
    sys.exit(main())
