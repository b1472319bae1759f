"""Command-line interface: validate data, compute indicators, emit figure
series, run scenarios, and launch the steering service.

Exit codes: 0 success, 1 runtime error, 2 usage or validation error.
Machine-readable output goes to stdout or --out; diagnostics to stderr.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import indicators as ind
from .model import DomainError
from .simulator import (
    PRESETS,
    PayloadError,
    SimulationError,
    config_from_payload,
    history_to_csv,
    run,
    snapshot,
)

DATA_DIR_ENV = "WAGEFLOOR_DATA_DIR"


class ValidationFailure(click.ClickException):
    exit_code = 2


def _write_out(text: str, out: str) -> None:
    if out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _load_series(input_path: str):
    try:
        return ind.load_annual_csv(input_path)
    except FileNotFoundError as exc:
        raise click.ClickException(f"cannot read {input_path}: {exc}")
    except ind.CsvValidationError as exc:
        raise ValidationFailure("\n".join(exc.problems))


@click.group()
def main():
    """Wage-floor indexing toolkit."""


@main.command()
@click.option("--input", "input_path", required=True,
              type=click.Path(dir_okay=False), help="Annual CSV to check.")
def validate(input_path):
    """Schema-check an annual CSV, listing every violation with line numbers."""
    try:
        text = Path(input_path).read_text(encoding="utf-8")
    except OSError as exc:
        raise click.ClickException(f"cannot read {input_path}: {exc}")
    rows, problems = ind.validate_rows(text)
    if problems:
        raise ValidationFailure("\n".join(problems))
    click.echo(f"{input_path}: {len(rows)} rows valid", err=True)


_SERIES = ("wmin", "wmean", "kaitz", "real")


@main.command("indicators")
@click.option("--input", "input_path", required=True, type=click.Path(dir_okay=False))
@click.option("--series", "series_arg", required=True,
              help="Comma-separated subset of: " + ",".join(_SERIES))
@click.option("--base-year", type=int, default=None,
              help="Deflator base year (required with 'real').")
@click.option("--out", default="-", help="Output CSV path ('-' for stdout).")
def indicators_cmd(input_path, series_arg, base_year, out):
    """Compute wage-ratio indicator series as a tidy CSV."""
    requested = [s.strip() for s in series_arg.split(",") if s.strip()]
    unknown = [s for s in requested if s not in _SERIES]
    if unknown:
        raise click.UsageError(
            f"unknown series: {', '.join(unknown)}; valid: {', '.join(_SERIES)}")
    if not requested:
        raise click.UsageError("no series requested")
    if "real" in requested and base_year is None:
        raise click.UsageError("--base-year is required with series 'real'")

    series = _load_series(input_path)
    try:
        rr = ind.ratios(series)
        columns = ["year"]
        table: dict[int, list] = {r.year: [r.year] for r in rr}
        if "wmin" in requested:
            columns.append("w_min")
            for r in rr:
                table[r.year].append(r.w_min)
        if "wmean" in requested:
            columns.append("w_mean")
            for r in rr:
                table[r.year].append(r.w_mean)
        if "kaitz" in requested:
            columns.append("kaitz")
            for r in rr:
                table[r.year].append(r.kaitz)
        if "real" in requested:
            columns += ["real_annual_min", "real_annual_mean"]
            for year, real_min, real_mean in ind.real_series(series, base_year):
                table[year] += [real_min, real_mean]
    except (ind.SeriesError, ind.CsvValidationError, DomainError) as exc:
        raise ValidationFailure(str(exc))
    rows = [tuple(table[year]) for year in sorted(table)]
    _write_out(ind.table_to_csv(columns, rows), out)


@main.command()
@click.option("--input", "input_path", required=True, type=click.Path(dir_okay=False))
@click.option("--fig", required=True, type=click.Choice(ind.FIGURES))
@click.option("--out", default="-", help="Output CSV path ('-' for stdout).")
def figures(input_path, fig, out):
    """Emit the numeric series behind one of the standard figures."""
    series = _load_series(input_path)
    try:
        columns, rows = ind.figure_series(series, fig)
    except ind.SeriesError as exc:
        raise ValidationFailure(str(exc))
    _write_out(ind.table_to_csv(columns, rows), out)


@main.command()
@click.option("--scenario", "scenario_path", type=click.Path(dir_okay=False),
              default=None, help="Scenario JSON file.")
@click.option("--preset", type=click.Choice(sorted(PRESETS)), default=None)
@click.option("--steps", type=int, default=None, help="Override step count.")
@click.option("--out", default="-", help="History CSV path ('-' for stdout).")
def simulate(scenario_path, preset, steps, out):
    """Run a scenario and write the step history as CSV."""
    if (scenario_path is None) == (preset is None):
        raise click.UsageError("exactly one of --scenario or --preset is required")
    try:
        if preset is not None:
            config = PRESETS[preset]()
        else:
            payload = json.loads(Path(scenario_path).read_text(encoding="utf-8"))
            config = config_from_payload(payload)
        if steps is not None:
            if steps < 1:
                raise click.UsageError("--steps must be at least 1")
            from dataclasses import replace
            config = replace(config, steps=steps)
        records = [snapshot(config.initial, config)] + run(config)
    except click.UsageError:
        raise
    except (OSError, json.JSONDecodeError, PayloadError, SimulationError,
            DomainError) as exc:
        raise click.ClickException(str(exc))
    _write_out(history_to_csv(records), out)
    final = records[-1]
    click.echo(
        f"final: w_min={final.w_min!r} w_mean={final.w_mean!r} "
        f"gini_proxy={final.gini_proxy!r}", err=True)


@main.command()
@click.option("--bind", default="127.0.0.1:8750", show_default=True,
              help="HOST:PORT to listen on.")
@click.option("--data-dir", envvar=DATA_DIR_ENV, default="./wagefloor-sessions",
              show_default=True, help=f"Session log directory (env {DATA_DIR_ENV}).")
def serve(bind, data_dir):
    """Run the session service until interrupted."""
    import uvicorn

    from .service import create_app, parse_bind

    try:
        host, port = parse_bind(bind)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    app = create_app(data_dir)
    try:
        uvicorn.run(app, host=host, port=port, log_level="warning")
    except (OSError, SystemExit) as exc:
        if isinstance(exc, SystemExit) and not exc.code:
            return
        raise click.ClickException(f"cannot serve on {bind}: {exc}")


if __name__ == "__main__":
    main()
