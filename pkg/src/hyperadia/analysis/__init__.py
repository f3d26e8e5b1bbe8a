"""Asymptotic models, the truncated-matrix method and phase shifts."""

from .asymptotics import (
    asymptotic_nu1,
    coefficient_q,
    coefficients_log,
    compare_models,
    model_for,
    model_v_eff,
    tilde_a,
)
from .matrixmethod import convergence_study, potential_matrix, ritz_eigenvalues
from .phaseshift import (
    channel_phase_shift,
    fit_inverse_log,
    fit_power_law,
    hard_disc_phase_shift,
    mott_massey_criterion,
    phase_shift_sweep,
)

__all__ = [
    "asymptotic_nu1",
    "channel_phase_shift",
    "coefficient_q",
    "coefficients_log",
    "compare_models",
    "convergence_study",
    "fit_inverse_log",
    "fit_power_law",
    "hard_disc_phase_shift",
    "model_for",
    "model_v_eff",
    "mott_massey_criterion",
    "phase_shift_sweep",
    "potential_matrix",
    "ritz_eigenvalues",
    "tilde_a",
]
