"""Free-form runs: single solves, rho sweeps, model comparisons and Ritz studies."""

import math
from typing import Any, Dict, List, Optional, Tuple

from ..analysis.asymptotics import compare_models
from ..analysis.matrixmethod import convergence_study
from ..core import adiabatic
from ..core.exceptions import ConfigError, HyperadiaError
from ..core.models import (
    AdiabaticSolution,
    ArtifactKind,
    Channel,
    GridSpec,
    RunConfig,
    Spacing,
    StepPotential,
    TableResult,
)
from ..core.settings import SolverSettings
from .base import PAPER_RHO, BaseArtifact, map_rows

SOLUTION_COLUMNS = ["channel", "rho", "nu1", "offset", "lambda", "v_eff", "residual", "error"]


def _solution_row(channel: Channel, rho: float, solution: Optional[AdiabaticSolution],
                  error: str = "") -> Dict[str, Any]:
    if solution is None:
        row: Dict[str, Any] = {c: math.nan for c in SOLUTION_COLUMNS}
        row.update({"channel": channel.label, "rho": rho, "error": error})
        return row
    return {**solution.to_dict(), "error": ""}


def _direct_point(
    args: Tuple[Channel, StepPotential, float, SolverSettings]
) -> Tuple[Dict[str, Any], Optional[str]]:
    channel, potential, rho, settings = args
    try:
        return _solution_row(channel, rho, adiabatic.solve(channel, potential, rho, settings)), None
    except HyperadiaError as e:
        return _solution_row(channel, rho, None, str(e)), f"{channel.label} rho={rho:g}: {e}"


class DirectArtifact(BaseArtifact):
    """Exact eigenvalue of each channel at one hyperradius."""

    kind = ArtifactKind.DIRECT

    def build(self, run: RunConfig) -> TableResult:
        channels = self.channels_or(run, [Channel(0, 0, 0)])
        rho = run.rho or PAPER_RHO
        settings = self.solver_settings
        results = map_rows(_direct_point, [(c, run.potential, rho, settings) for c in channels], run.jobs)
        table = TableResult(name="direct", columns=SOLUTION_COLUMNS,
                            metadata={**self.describe(run), "rho": rho})
        for row, error in results:
            table.rows.append(row)
            if error:
                table.errors.append(self.row_error("direct", Exception(error)))
        return table


class SweepArtifact(BaseArtifact):
    """Exact eigenvalues along a rho grid, with continuation between points."""

    kind = ArtifactKind.SWEEP
    DEFAULT_GRID = GridSpec(1.0, 100.0, 25, Spacing.LOG)

    def build(self, run: RunConfig) -> TableResult:
        channels = self.channels_or(run, [Channel(0, 0, 0)])
        grid = run.rho_grid or self.DEFAULT_GRID
        table = TableResult(name="sweep", columns=SOLUTION_COLUMNS,
                            metadata={**self.describe(run), "rho_grid": grid.to_string()})
        for channel in channels:
            report = adiabatic.sweep(
                channel, run.potential, grid.values(), self.solver_settings, jobs=run.jobs
            )
            by_rho = {s.rho: s for s in report.solutions}
            failures = dict(report.failures)
            for rho in grid.values():
                rho = float(rho)
                table.rows.append(_solution_row(channel, rho, by_rho.get(rho), failures.get(rho, "")))
            table.errors.extend(f"{channel.label} rho={r:g}: {e}" for r, e in report.failures)
        return table


class AsymArtifact(BaseArtifact):
    """Exact V_eff against the asymptotic models of each channel."""

    kind = ArtifactKind.ASYM
    DEFAULT_GRID = GridSpec(10.0, 1.0e4, 25, Spacing.LOG)

    def build(self, run: RunConfig) -> TableResult:
        channels = self.channels_or(run, [Channel(0, 0, 0)])
        if len({c.l1 == 0 for c in channels}) > 1:
            raise ConfigError("asym channels must all be l1 = 0 or all |l1| >= 1")
        grid = run.rho_grid or self.DEFAULT_GRID
        table: Optional[TableResult] = None
        models: List[Dict[str, Any]] = []
        for channel in channels:
            part = compare_models(channel, run.potential, grid.values(), self.solver_settings, run.jobs)
            if table is None:
                table = TableResult(name="asym", columns=["channel"] + part.columns,
                                    metadata={**self.describe(run), "rho_grid": grid.to_string()})
            table.rows.extend({"channel": channel.label, **row} for row in part.rows)
            table.errors.extend(f"{channel.label} {e}" for e in part.errors)
            models.append(part.metadata["model"])
        assert table is not None
        table.metadata["models"] = models
        return table


class MatrixArtifact(BaseArtifact):
    """Ritz convergence of each channel at one hyperradius."""

    kind = ArtifactKind.MATRIX
    DEFAULT_N_MAX = [40, 60, 80, 100]

    def build(self, run: RunConfig) -> TableResult:
        channels = self.channels_or(run, [Channel(0, 0, 0)])
        rho = run.rho or PAPER_RHO
        n_values = run.n_max or self.DEFAULT_N_MAX
        table = TableResult(
            name="matrix",
            columns=["channel", "n_max", "v_eff_ritz", "v_eff_direct", "gap"],
            metadata={**self.describe(run), "rho": rho},
        )
        for channel in channels:
            study = convergence_study(
                channel, run.potential, rho, n_values, self.matrix_settings, self.solver_settings
            )
            table.rows.extend({"channel": channel.label, **row} for row in study.rows)
        return table
