"""Low-energy phase shifts of a single adiabatic channel.

The radial equation -phi'' + lambda(rho) phi = k^2 phi is integrated in
s = ln rho with phi = sqrt(rho) u(s), which turns it into

    u'' = [(N+1)^2 + rho^2 V_eff(rho) - k^2 rho^2] u,

so one uniform Numerov grid covers rho from inside the step to ~20/k. The
phase is read off against sqrt(rho)[cos d J_{N+1}(k rho) - sin d Y_{N+1}(k rho)]
and reported relative to a free-channel integration on the same grid.
"""

import logging
import math
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.interpolate import CubicSpline

from ..core import adiabatic
from ..core.exceptions import DomainError, NumericError, WrongClassError
from ..core.models import (
    RHO_CRITICAL,
    AsymptoticModel,
    Channel,
    ModelKind,
    MottMasseyReport,
    RadialProblem,
    StepPotential,
)
from ..core.settings import PhaseSettings
from ..specfun.bessel import bessel_i, bessel_jy
from .asymptotics import model_for, model_v_eff

logger = logging.getLogger(__name__)

DEFAULT_PHASE = PhaseSettings()
RHO_START = 0.5  # inside the region where the step covers every z


class ScaledPotential:
    """rho^2 V_eff(rho) on (0, inf): exact barrier, spline of exact solves, tail model."""

    def __init__(self, potential: StepPotential, spline: CubicSpline, rho_switch: float,
                 tail: AsymptoticModel):
        self.potential = potential
        self.spline = spline
        self.rho_switch = rho_switch
        self.tail = tail

    def __call__(self, rho: np.ndarray) -> np.ndarray:
        rho = np.asarray(rho, dtype=float)
        out = np.empty_like(rho)
        inner = rho <= RHO_CRITICAL
        outer = rho > self.rho_switch
        middle = ~(inner | outer)
        out[inner] = self.potential.v0bar * rho[inner] ** 2
        out[middle] = self.spline(np.log(rho[middle]))
        out[outer] = [r * r * model_v_eff(self.tail, float(r)) for r in rho[outer]]
        return out


@lru_cache(maxsize=32)
def tabulate_potential(
    channel: Channel,
    potential: StepPotential,
    tail: AsymptoticModel,
    settings: PhaseSettings = DEFAULT_PHASE,
) -> ScaledPotential:
    """Exact rho^2 V_eff on a log grid up to rho_switch, splined in ln rho."""
    decades = math.log10(settings.rho_switch / settings.rho_min)
    points = max(int(math.ceil(settings.points_per_decade * decades)) + 1, 4)
    grid = np.geomspace(settings.rho_min, settings.rho_switch, points)
    report = adiabatic.sweep(channel, potential, grid)
    if report.failures:
        rho, error = report.failures[0]
        raise NumericError(f"potential tabulation failed at rho={rho:g}: {error}",
                           context={"channel": channel.label})
    knots = np.concatenate(([math.log(RHO_CRITICAL)], np.log(grid)))
    values = np.concatenate(
        ([0.5 * potential.v0bar], [s.rho ** 2 * s.v_eff for s in report.solutions])
    )
    logger.debug(f"tabulated rho^2 V_eff for {channel.label} at {points} points")
    return ScaledPotential(potential, CubicSpline(knots, values), settings.rho_switch, tail)


def _numerov(g: np.ndarray, h: float, u0: float, u1: float) -> np.ndarray:
    """Numerov march of u'' = g u on a uniform grid; rescales on overflow."""
    f = (1.0 - (h * h / 12.0) * g).tolist()
    u = [0.0] * len(f)
    u[0], u[1] = u0, u1
    for i in range(1, len(f) - 1):
        nxt = ((12.0 - 10.0 * f[i]) * u[i] - f[i - 1] * u[i - 1]) / f[i + 1]
        u[i + 1] = nxt
        if abs(nxt) > 1e150:
            u = [v * 1e-150 for v in u]
    return np.asarray(u)


def _two_point_tangent(
    order: int, k: float, rho1: float, u1: float, rho2: float, u2: float
) -> Tuple[float, float]:
    """(num, den) with tan d = num / den, scaled so max(|num|, |den|) = 1."""
    j1, y1 = bessel_jy(order, k * rho1)
    j2, y2 = bessel_jy(order, k * rho2)
    num = u1 * j2 - u2 * j1
    den = u1 * y2 - u2 * y1
    scale = abs(u1) * (abs(j2) + abs(y2)) + abs(u2) * (abs(j1) + abs(y1))
    if abs(num) + abs(den) <= 1e-10 * scale:
        raise NumericError("phase matching ill-conditioned", context={"rho1": rho1, "rho2": rho2})
    size = max(abs(num), abs(den))
    return num / size, den / size


def _fold(num: float, den: float) -> float:
    """Angle in (-pi/2, pi/2] with tangent num / den; never reduced from near +-pi."""
    if den == 0.0:
        return math.pi / 2
    delta = math.atan(num / den)
    return math.pi / 2 if delta <= -math.pi / 2 else delta


def _relative_phase(shifted: Tuple[float, float], free: Tuple[float, float]) -> float:
    """d - d_free from the two tangents, tan(a - b) = (ta - tb) / (1 + ta tb)."""
    (n, d), (n0, d0) = shifted, free
    return _fold(n * d0 - n0 * d, d * d0 + n * n0)


def _resolve_tail(problem: RadialProblem) -> AsymptoticModel:
    tail = problem.tail_model or model_for(problem.channel, problem.potential)
    power_class = problem.channel.l1 != 0
    if (tail.kind is ModelKind.INVERSE_POWER) != power_class:
        raise WrongClassError(
            f"{tail.kind.value} tail does not fit channel {problem.channel.label}",
            {"channel": problem.channel.label},
        )
    return tail


def _phase_at(problem: RadialProblem, rho_max: float, settings: PhaseSettings,
              scaled: ScaledPotential) -> Tuple[float, float]:
    channel, k = problem.channel, problem.k
    order = channel.N + 1
    s0, s_max = math.log(RHO_START), math.log(1.1 * rho_max)
    h = min(settings.max_step, 1.0 / (settings.steps_per_unit_phase * k * 1.1 * rho_max))
    steps = int(math.ceil((s_max - s0) / h))
    h = (s_max - s0) / steps
    s = s0 + h * np.arange(steps + 1)
    rho = np.exp(s)
    base = order * order - (k * rho) ** 2

    i1 = int(round((math.log(rho_max) - s0) / h))
    i_check = int(round((math.log(1.05 * rho_max) - s0) / h))
    i2 = steps

    kappa2 = problem.potential.v0bar - k * k
    if kappa2 > 0:
        start = [bessel_i(order, math.sqrt(kappa2) * r) for r in rho[:2]]
    else:
        start = [bessel_jy(order, math.sqrt(-kappa2) * r)[0] for r in rho[:2]]
    u = _numerov(base + scaled(rho), h, start[0], start[1])
    u_free = _numerov(base, h, *(bessel_jy(order, k * r)[0] for r in rho[:2]))

    def phase(i: int, j: int) -> float:
        raw = _two_point_tangent(order, k, rho[i], u[i], rho[j], u[j])
        drift = _two_point_tangent(order, k, rho[i], u_free[i], rho[j], u_free[j])
        return _relative_phase(raw, drift)

    return phase(i1, i2), phase(i_check, i2)


def channel_phase_shift(problem: RadialProblem, settings: Optional[PhaseSettings] = None) -> float:
    """Single-channel phase shift d(k) in (-pi/2, pi/2].

    Couplings to other adiabatic channels are dropped.
    """
    s = settings or DEFAULT_PHASE
    if problem.potential.is_free:
        return 0.0
    tail = _resolve_tail(problem)
    scaled = tabulate_potential(problem.channel.canonical(), problem.potential, tail, s)

    rho_max = problem.outer_radius(s.k_rho_max)
    last_error: Optional[NumericError] = None
    for attempt in range(s.max_retries + 1):
        try:
            delta, check = _phase_at(problem, rho_max, s, scaled)
        except NumericError as e:
            last_error = e
            rho_max *= 1.07
            logger.debug(f"retry {attempt + 1} for k={problem.k:g} at rho_max={rho_max:g}: {e}")
            continue
        if abs(delta - check) > s.consistency_tol:
            logger.warning(
                f"phase at k={problem.k:g} moves by {abs(delta - check):.2e} rad between "
                f"matching radii for channel {problem.channel.label}"
            )
        logger.debug(f"channel {problem.channel.label} k={problem.k:g}: delta={delta:.12e}")
        return delta
    raise NumericError(
        f"phase extraction failed after {s.max_retries} retries",
        context={"k": problem.k, "channel": problem.channel.label},
    ) from last_error


def phase_shift_sweep(
    channel: Channel,
    potential: StepPotential,
    k_grid: Sequence[float],
    settings: Optional[PhaseSettings] = None,
    tail_model: Optional[AsymptoticModel] = None,
) -> List[Tuple[float, float]]:
    """(k, delta) pairs over a wave-number grid; the tabulated potential is shared."""
    s = settings or DEFAULT_PHASE
    return [
        (float(k), channel_phase_shift(
            RadialProblem(channel, potential, float(k), rho_min=s.rho_min, tail_model=tail_model), s
        ))
        for k in k_grid
    ]


def hard_disc_phase_shift(L: int, k_sigma: float) -> float:
    """Two-body hard-disc phase shift, tan d_L = J_L(k sigma) / Y_L(k sigma)."""
    if not 0 < k_sigma <= 10:
        raise DomainError(f"k_sigma must lie in (0, 10], got {k_sigma}")
    j, y = bessel_jy(L, k_sigma)
    return _fold(j, y)


def mott_massey_criterion(channel: Channel) -> MottMasseyReport:
    """Tail dominance for V ~ rho^-s with s = 2|l1| + 2: N + 1 > (s - 2)/2."""
    if channel.l1 == 0:
        raise WrongClassError(
            f"inverse-power criterion needs |l1| >= 1, got channel {channel.label}",
            {"channel": channel.label},
        )
    s = 2 * channel.abs_l1 + 2
    min_order = channel.abs_l1
    return MottMasseyReport(
        channel=channel,
        s=s,
        min_order=min_order,
        tail_dominant=(channel.N + 1) > (s - 2) / 2,
        exponent=s - 2,
    )


def fit_inverse_log(k: Sequence[float], delta: Sequence[float]) -> float:
    """Constant c of d ~ c / ln k from a straight-line fit of 1/d against ln k."""
    slope, _ = np.polyfit(np.log(np.asarray(k, dtype=float)), 1.0 / np.asarray(delta, dtype=float), 1)
    return float(1.0 / slope)


def fit_power_law(k: Sequence[float], delta: Sequence[float]) -> float:
    """Log-log slope of |d| against k."""
    slope, _ = np.polyfit(
        np.log(np.asarray(k, dtype=float)), np.log(np.abs(np.asarray(delta, dtype=float))), 1
    )
    return float(slope)


def inverse_log_constant(model: AsymptoticModel) -> float:
    """pi / (4 B): the limit of d ln k for the inverse-log class."""
    if model.kind is ModelKind.INVERSE_POWER:
        raise WrongClassError("inverse-log constant needs an l1 = 0 model")
    return math.pi / (4.0 * model.B)
