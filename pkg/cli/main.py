"""BellSpace command-line interface.

Reports go to stdout as JSON, diagnostics and logs to stderr.
Run as ``python -m cli.main <command>``.
"""

import json
import logging
import sys
import time
from collections.abc import Iterator
from contextlib import contextmanager
from enum import IntEnum
from pathlib import Path
from typing import NoReturn, cast

import click
import numpy as np
from pydantic import ValidationError

from locality.correlation import (
    CLASSICAL_BOUND,
    LOCALITY_BOUND,
    PAPER_BOUND,
    OptimizerStuckError,
    ScanParameter,
    Scenario,
    chsh_maximize,
    chsh_value,
    crossing_bracket,
    scan_scenarios,
    scenario_correlator,
)
from locality.lhv import (
    EnumerationBudgetError,
    LHVModel,
    chsh_facet_check,
    correlation_table,
    critical_scaling,
    lhv_membership,
)
from locality.paper_checks import run_paper_checks
from locality.spatial import QuadratureError, g_factor_montecarlo, g_factor_quadrature
from locality.spin import e_spin
from models.report import Report, ScanSummary, WitnessEntry
from models.result import CheckStatus, compute_overall_status
from utils.excel_export import ExcelReportGenerator
from utils.helpers import elapsed_ms
from utils.loader import ScenarioLoadError, load_scenario
from utils.simplex import LPNotTerminatedError

logger = logging.getLogger(__name__)

PAPER_SEPARATION = (10.0, 0.0, 0.0)


class ExitCode(IntEnum):
    OK = 0
    CHECK_FAILED = 1
    INPUT_ERROR = 2
    NO_CONVERGENCE = 3
    BUDGET_EXCEEDED = 4
    OUTPUT_ERROR = 5
    SOLVER_FAILURE = 6


def _abort(message: str, code: ExitCode) -> NoReturn:
    click.echo(f"error: {message}", err=True)
    raise click.exceptions.Exit(int(code))


@contextmanager
def _exit_codes() -> Iterator[None]:
    """Translate library exceptions into diagnostics and exit codes."""
    try:
        yield
    except ScenarioLoadError as e:
        _abort(str(e), ExitCode.INPUT_ERROR)
    except QuadratureError as e:
        _abort(str(e), ExitCode.NO_CONVERGENCE)
    except EnumerationBudgetError as e:
        _abort(str(e), ExitCode.BUDGET_EXCEEDED)
    except (LPNotTerminatedError, OptimizerStuckError) as e:
        _abort(str(e), ExitCode.SOLVER_FAILURE)
    except ValidationError as e:
        _abort(f"inconsistent report: {e}", ExitCode.CHECK_FAILED)
    except OSError as e:
        _abort(f"cannot write output: {e}", ExitCode.OUTPUT_ERROR)


def _write_bytes(path: str, data: bytes) -> None:
    Path(path).write_bytes(data)
    logger.info("wrote %s", path)


def _save_witness(path: str, model: LHVModel) -> None:
    entries = [
        WitnessEntry(signs_a=list(s.signs_a), signs_b=list(s.signs_b), weight=float(w)).model_dump()
        for w, s in zip(model.weights, model.strategies)
    ]
    Path(path).write_text(json.dumps(entries, indent=2), encoding="utf-8")
    logger.info("wrote witness with %d strategies to %s", len(entries), path)


@click.group()
@click.option(
    "--log-level",
    default="WARNING",
    envvar="BELLSPACE_LOG_LEVEL",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
    help="Logging threshold for stderr output.",
)
def cli(log_level: str) -> None:
    """Spatially-resolved Bell correlations and local hidden variable tests."""
    logging.basicConfig(
        level=log_level.upper(),
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


scenario_option = click.option(
    "--scenario", "scenario_path", required=True, type=click.Path(dir_okay=False), help="Scenario JSON file."
)


@cli.command()
@scenario_option
@click.option("--method", type=click.Choice(["closed", "quadrature", "montecarlo"]), default="closed")
@click.option("--tol", type=float, default=1e-10, show_default=True, help="Quadrature tolerance.")
@click.option("--n", "samples", type=click.IntRange(min=1000), default=1_000_000, show_default=True)
@click.option("--seed", type=int, default=None, help="Monte Carlo seed (required for montecarlo).")
def gfactor(scenario_path: str, method: str, tol: float, samples: int, seed: int | None) -> None:
    """Overlap factor g(O1, O2) by the chosen method."""
    start = time.perf_counter()
    if method == "montecarlo" and seed is None:
        raise click.UsageError("--seed is required with --method montecarlo")
    with _exit_codes():
        scenario = load_scenario(scenario_path).to_scenario()
        stderr = None
        if method == "closed":
            g = scenario.g()
        elif method == "quadrature":
            g = g_factor_quadrature(scenario.wave, scenario.region1, scenario.region2, tol=tol)
        else:
            assert seed is not None
            g, stderr = g_factor_montecarlo(scenario.wave, scenario.region1, scenario.region2, n=samples, seed=seed)
        report = Report(
            command="gfactor",
            g=g,
            local=g <= LOCALITY_BOUND,
            method=method,
            stderr=stderr,
            seed=seed if method == "montecarlo" else None,
            runtime_ms=elapsed_ms(start),
        )
        click.echo(report.to_json())


@cli.command()
@scenario_option
@click.option("--tol", type=float, default=1e-6, show_default=True, help="Optimizer accuracy.")
@click.option("--starts", type=click.IntRange(min=1), default=32, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True, help="Seed of the optimizer starts.")
def chsh(scenario_path: str, tol: float, starts: int, seed: int) -> None:
    """CHSH value at the given settings and its maximum over all settings."""
    start = time.perf_counter()
    with _exit_codes():
        scenario_file = load_scenario(scenario_path)
        scenario = scenario_file.to_scenario()
        correlator = scenario_correlator(scenario)
        settings = scenario_file.chsh_settings()
        at_settings = None if settings is None else chsh_value(correlator, settings)
        _, chsh_max = chsh_maximize(correlator, tol=tol, starts=starts, seed=seed)
        g = scenario.g()
        exceeds = max(chsh_max, abs(at_settings or 0.0)) > CLASSICAL_BOUND
        report = Report(
            command="chsh",
            g=g,
            local=g <= LOCALITY_BOUND,
            chsh_at_settings=at_settings,
            chsh_max=chsh_max,
            exceeds_classical=exceeds,
            runtime_ms=elapsed_ms(start),
        )
        click.echo(report.to_json())


@cli.command()
@scenario_option
@click.option("--tol", type=float, default=1e-9, show_default=True, help="Feasibility tolerance.")
@click.option("--witness", "witness_path", type=click.Path(dir_okay=False), default=None,
              help="Witness output; defaults to <scenario>.witness.json.")
def lhv(scenario_path: str, tol: float, witness_path: str | None) -> None:
    """LHV representability of g·E_spin on the scenario's setting lists."""
    start = time.perf_counter()
    with _exit_codes():
        scenario_file = load_scenario(scenario_path)
        lists = scenario_file.setting_lists()
        if lists is None:
            _abort(f"{scenario_path}: lhv needs settings_a and settings_b", ExitCode.INPUT_ERROR)
        scenario = scenario_file.to_scenario()
        table = correlation_table(scenario_correlator(scenario), *lists)
        feasible, model = lhv_membership(table, tol=tol)

        written = None
        if model is not None:
            written = witness_path or str(Path(scenario_path).with_suffix(".witness.json"))
            _save_witness(written, model)

        critical = critical_scaling(correlation_table(e_spin, *lists))
        g = scenario.g()
        report = Report(
            command="lhv",
            g=g,
            local=g <= LOCALITY_BOUND,
            lhv_feasible=feasible,
            chsh_facet=chsh_facet_check(table) if table.shape == (2, 2) else None,
            critical_g=None if np.isinf(critical) else critical,
            witness_path=written,
            runtime_ms=elapsed_ms(start),
        )
        click.echo(report.to_json())


@cli.command()
@scenario_option
@click.option("--param", type=click.Choice(["half_width", "separation"]), required=True)
@click.option("--from", "start_value", type=float, required=True, help="First grid value, in units of 1/m.")
@click.option("--to", "stop_value", type=float, required=True, help="Last grid value, in units of 1/m.")
@click.option("--steps", type=click.IntRange(min=2), required=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True, help="CSV output path.")
@click.option("--xlsx", type=click.Path(dir_okay=False), default=None, help="Optional Excel workbook.")
def scan(
    scenario_path: str,
    param: str,
    start_value: float,
    stop_value: float,
    steps: int,
    out: str,
    xlsx: str | None,
) -> None:
    """Tabulate g, the CHSH maximum and the locality verdict along one parameter."""
    start = time.perf_counter()
    if not start_value < stop_value:
        raise click.UsageError("--from must be smaller than --to")
    with _exit_codes():
        base = load_scenario(scenario_path).to_scenario()
        table = scan_scenarios(base, cast(ScanParameter, param), np.linspace(start_value, stop_value, steps))
        crossing = crossing_bracket(table)
        table.to_csv(out, index=False, float_format="%.12g")
        if xlsx:
            generator = ExcelReportGenerator(title=f"{param} scan", scenario_name=scenario_path)
            _write_bytes(xlsx, generator.generate_report(scan=table, crossing=crossing).getvalue())
        summary = ScanSummary(param=param, rows=len(table), out=out, crossing=crossing, runtime_ms=elapsed_ms(start))
        click.echo(summary.model_dump_json())


@cli.command()
@click.option("--samples", type=click.IntRange(min=1000), default=200_000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True, help="Monte Carlo seed.")
@click.option("--xlsx", type=click.Path(dir_okay=False), default=None, help="Optional Excel workbook.")
def paper(samples: int, seed: int, xlsx: str | None) -> None:
    """Reproduce the Gaussian-packet locality argument; exit 0 only if every check holds."""
    start = time.perf_counter()
    with _exit_codes():
        checks = run_paper_checks(m=1.0, separation=PAPER_SEPARATION, samples=samples, seed=seed)
        overall = compute_overall_status(checks)
        details = {c.name: c.details for c in checks}
        scaled = next(c for c in checks if c.name == "Scaled Table Local")

        g = Scenario.paper(m=1.0, separation=PAPER_SEPARATION).g()
        report = Report(
            command="paper",
            g=g,
            local=g <= LOCALITY_BOUND,
            bound=PAPER_BOUND,
            threshold=LOCALITY_BOUND,
            chsh_max=details["CHSH Maximum"]["chsh_max"],
            lhv_feasible=scaled.status == CheckStatus.PASS,
            overall_status=overall.value,
            checks=[c.to_dict() for c in checks],
            runtime_ms=elapsed_ms(start),
        )
        if xlsx:
            generator = ExcelReportGenerator(title="Gaussian packet locality checks")
            _write_bytes(xlsx, generator.generate_report(checks=checks, overall_status=overall).getvalue())
        click.echo(report.to_json())

    if overall == CheckStatus.FAIL:
        failed = ", ".join(c.name for c in checks if c.status == CheckStatus.FAIL)
        _abort(f"checks failed: {failed}", ExitCode.CHECK_FAILED)


if __name__ == "__main__":
    cli()
