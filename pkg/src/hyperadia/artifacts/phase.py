"""Low-energy phase shifts and the fitted threshold laws."""

import math
from typing import List, Sequence, Tuple

from ..analysis.asymptotics import coefficients_log
from ..analysis.phaseshift import (
    channel_phase_shift,
    fit_inverse_log,
    fit_power_law,
    hard_disc_phase_shift,
    inverse_log_constant,
    mott_massey_criterion,
)
from ..core.models import (
    ArtifactKind,
    Channel,
    Comparison,
    GridSpec,
    RadialProblem,
    RunConfig,
    Spacing,
    StepPotential,
    TableResult,
)
from ..core.settings import PhaseSettings
from .base import BaseArtifact, map_rows

APPROXIMATION = "single adiabatic channel; couplings between channels dropped"
THRESHOLD_PROVENANCE = "threshold law"
INVERSE_LOG_RTOL = 0.15
POWER_LAW_RTOL = 0.05


def _phase_point(args: Tuple[Channel, StepPotential, float, PhaseSettings]) -> float:
    channel, potential, k, settings = args
    return channel_phase_shift(RadialProblem(channel, potential, k, rho_min=settings.rho_min), settings)


def threshold_comparison(key: str, law: str, k: Sequence[float], delta: Sequence[float],
                         predicted: float) -> Tuple[dict, Comparison]:
    """Fit the threshold law and check it against its prediction.

    The inverse-log constant must lie within 15% of the prediction, the
    power-law slope within 5%.
    """
    if law == "inverse_log":
        fitted = fit_inverse_log(k, delta)
        fit = {"law": law, "constant": fitted, "predicted": predicted}
        rtol = INVERSE_LOG_RTOL
    else:
        fitted = fit_power_law(k, delta)
        fit = {"law": law, "slope": fitted, "predicted": predicted}
        rtol = POWER_LAW_RTOL
    comparison = Comparison(
        key=key,
        computed=fitted,
        reference=predicted,
        tolerance=rtol * abs(predicted),
        provenance=THRESHOLD_PROVENANCE,
    )
    return fit, comparison


class PhaseArtifact(BaseArtifact):
    """Phase shift against k for one channel, or the two-body hard-disc reference.

    The fitted threshold law is checked only when every k lies inside the
    window of the default grid for its class.
    """

    kind = ArtifactKind.PHASE
    LOG_GRID = GridSpec(1e-6, 1e-3, 7, Spacing.LOG)
    POWER_GRID = GridSpec(1e-4, 1e-2, 5, Spacing.LOG)
    HARD_DISC_GRID = GridSpec(1e-6, 1e-1, 11, Spacing.LOG)

    def build(self, run: RunConfig) -> TableResult:
        if run.hard_disc:
            return self._hard_disc(run)
        return self._channel(run)

    @staticmethod
    def _in_window(k_values: List[float], window: GridSpec) -> bool:
        return max(k_values) <= window.stop * (1 + 1e-12)

    def _record_fit(self, table: TableResult, key: str, law: str, k_values: List[float],
                    deltas: List[float], predicted: float, window: GridSpec) -> None:
        if len(k_values) < 2:
            table.metadata["fit"] = None
            return
        fit, comparison = threshold_comparison(key, law, k_values, deltas, predicted)
        table.metadata["fit"] = fit
        if self._in_window(k_values, window):
            table.comparisons.append(comparison)

    def _hard_disc(self, run: RunConfig) -> TableResult:
        grid = run.k_grid or self.HARD_DISC_GRID
        k_values = [float(k) for k in grid.values()]
        deltas = [hard_disc_phase_shift(run.L, k) for k in k_values]
        table = TableResult(
            name="phase",
            columns=["k_sigma", "delta", "delta_ln_k"],
            metadata={"artifact": self.kind.value, "hard_disc": True, "L": run.L,
                      "k_grid": grid.to_string()},
        )
        for k, delta in zip(k_values, deltas):
            table.rows.append({"k_sigma": k, "delta": delta, "delta_ln_k": delta * math.log(k)})
        key = f"phase.hard_disc.{run.L}"
        if run.L == 0:
            self._record_fit(table, key, "inverse_log", k_values, deltas, math.pi / 2,
                             self.HARD_DISC_GRID)
        else:
            self._record_fit(table, key, "power", k_values, deltas, 2 * run.L,
                             self.HARD_DISC_GRID)
        return table

    def _channel(self, run: RunConfig) -> TableResult:
        channel = self.channels_or(run, [Channel(0, 0, 0)])[0]
        potential = run.potential
        log_class = channel.l1 == 0
        window = self.LOG_GRID if log_class else self.POWER_GRID
        grid = run.k_grid or window
        settings = self.phase_settings
        k_values = [float(k) for k in grid.values()]
        deltas = map_rows(
            _phase_point, [(channel, potential, k, settings) for k in k_values], run.jobs
        )

        table = TableResult(
            name="phase",
            columns=["k", "delta", "delta_ln_k" if log_class else "delta_scaled"],
            metadata={**self.describe(run), "channel": channel.label,
                      "k_grid": grid.to_string(), "approximation": APPROXIMATION},
        )
        exponent = 2 * channel.abs_l1
        for k, delta in zip(k_values, deltas):
            row = {"k": k, "delta": delta}
            if log_class:
                row["delta_ln_k"] = delta * math.log(k)
            else:
                row["delta_scaled"] = delta / k ** exponent
            table.rows.append(row)

        key = f"phase.{channel.canonical().label}"
        if potential.is_free:
            table.metadata["fit"] = None
        elif log_class:
            predicted = inverse_log_constant(coefficients_log(channel, potential))
            self._record_fit(table, key, "inverse_log", k_values, deltas, predicted, window)
        else:
            self._record_fit(table, key, "power", k_values, deltas, exponent, window)
            table.metadata["mott_massey"] = mott_massey_criterion(channel).to_dict()
        return table
