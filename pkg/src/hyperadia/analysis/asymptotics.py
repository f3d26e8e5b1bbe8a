"""Large-rho behaviour of the effective potentials.

Channels with l1 = 0 fall off like 1/(rho^2 (A + B ln rho)); channels with
|l1| >= 1 like q / rho^(2|l1| + 2). Both coefficient sets come in closed form
from matching the small-argument limits of the two hypergeometric solutions.
"""

import logging
import math
from typing import Optional, Sequence

from ..core import adiabatic
from ..core.exceptions import DomainError, WrongClassError
from ..core.models import AsymptoticModel, Channel, ModelKind, StepPotential, TableResult
from ..core.settings import SolverSettings
from ..specfun.bessel import bessel_i
from ..specfun.gamma import binomial, harmonic

logger = logging.getLogger(__name__)


def _barrier_argument(potential: StepPotential) -> float:
    if potential.v0bar <= 0:
        raise DomainError("asymptotic coefficients need v0bar > 0", {"v0bar": potential.v0bar})
    return math.sqrt(potential.v0bar / 2.0)


def tilde_a(channel: Channel, potential: StepPotential) -> float:
    """A~ = sqrt(8) I0(s) / (sqrt(v0bar) I1(s)) - H_l - H_{l+|l2|} + ln 2, s = sqrt(v0bar/2)."""
    if channel.l1 != 0:
        raise WrongClassError(f"A~ is defined for l1 = 0, got channel {channel.label}")
    s = _barrier_argument(potential)
    ratio = bessel_i(0, s) / bessel_i(1, s)
    return (
        math.sqrt(8.0) * ratio / math.sqrt(potential.v0bar)
        - harmonic(channel.l)
        - harmonic(channel.l + channel.abs_l2)
        + math.log(2.0)
    )


def coefficients_log(channel: Channel, potential: StepPotential) -> AsymptoticModel:
    """A, B, A*, B* of the inverse-logarithmic models (l1 = 0 only).

    Returns:
        Model tagged BEST; use ``with_kind`` for the KL or wider forms.
    """
    if channel.l1 != 0:
        raise WrongClassError(
            f"inverse-log coefficients need l1 = 0, got channel {channel.label}",
            {"channel": channel.label},
        )
    s = _barrier_argument(potential)
    n1 = channel.N + 1
    bracket = (
        2.0 * bessel_i(0, s) / (s * bessel_i(1, s))
        - harmonic(channel.l)
        - harmonic(channel.l + channel.abs_l2)
        + math.log(2.0)
    )
    A = bracket / (4.0 * n1)
    B = 1.0 / (2.0 * n1)
    return AsymptoticModel(
        kind=ModelKind.BEST,
        channel=channel,
        potential=potential,
        A=A,
        B=B,
        A_star=A - 1.0 / (4.0 * n1 ** 2),
        B_star=B,
        tilde_a=tilde_a(channel, potential),
    )


def power_coefficient_a(channel: Channel) -> float:
    """a_{|l1|,|l2|,l} = 2^{|l1|-2} / ((N+1) C_{N-l}^{|l1|} C_{|l1|+l}^{|l1|})."""
    a1 = channel.abs_l1
    return 2.0 ** (a1 - 2) / (
        (channel.N + 1) * binomial(channel.N - channel.l, a1) * binomial(a1 + channel.l, a1)
    )


def coefficient_q(channel: Channel, potential: StepPotential) -> AsymptoticModel:
    """Inverse-power amplitude q of rho^2 V_eff ~ q / rho^(2|l1|) (|l1| >= 1)."""
    if channel.l1 == 0:
        raise WrongClassError(
            f"inverse-power coefficient needs |l1| >= 1, got channel {channel.label}",
            {"channel": channel.label},
        )
    s = _barrier_argument(potential)
    a1 = channel.abs_l1
    inverse_q = power_coefficient_a(channel) * (
        1.0 / a1 + 2.0 * bessel_i(a1, s) / (s * bessel_i(a1 + 1, s))
    )
    return AsymptoticModel(
        kind=ModelKind.INVERSE_POWER, channel=channel, potential=potential, q=1.0 / inverse_q
    )


def coefficient_q_closed(channel: Channel, potential: StepPotential) -> float:
    """q written with 2 sqrt(2)/sqrt(v0bar) in place of 2/sqrt(v0bar/2)."""
    if channel.l1 == 0:
        raise WrongClassError(f"inverse-power coefficient needs |l1| >= 1, got {channel.label}")
    s = _barrier_argument(potential)
    a1 = channel.abs_l1
    factor = 2.0 ** (a1 - 2) / (
        (1 + channel.N) * binomial(channel.N - channel.l, a1) * binomial(a1 + channel.l, a1)
    )
    return 1.0 / (factor * (
        1.0 / a1
        + 2.0 * math.sqrt(2.0) * bessel_i(a1, s) / (math.sqrt(potential.v0bar) * bessel_i(a1 + 1, s))
    ))


def model_for(channel: Channel, potential: StepPotential) -> AsymptoticModel:
    """Natural tail model of a channel: BEST for l1 = 0, INVERSE_POWER otherwise."""
    if channel.l1 == 0:
        return coefficients_log(channel, potential)
    return coefficient_q(channel, potential)


def model_v_eff(model: AsymptoticModel, rho: float) -> float:
    """Model effective potential V_eff(rho) (not rho^2 V_eff)."""
    if not rho > 1.0:
        raise DomainError(f"asymptotic models need rho > 1, got {rho}")
    if model.kind is ModelKind.INVERSE_POWER:
        if model.q is None:
            raise DomainError("inverse-power model without q")
        return model.q / rho ** (2 * model.channel.abs_l1 + 2)

    log_rho = math.log(rho)
    if model.kind is ModelKind.WIDER:
        denom = model.A_star + model.B_star * log_rho
    else:
        denom = model.A + model.B * log_rho
    if not denom > 0:
        raise DomainError(
            f"rho = {rho} lies at or below the pole of the {model.kind.value} model",
            {"denominator": denom},
        )
    scaled = 1.0 / denom
    if model.kind is ModelKind.BEST:
        scaled += 1.0 / (4.0 * (model.channel.N + 1) ** 2 * denom ** 2)
    return scaled / rho ** 2


def asymptotic_offset(channel: Channel, potential: StepPotential, rho: float) -> Optional[float]:
    """Large-rho estimate of nu1 - l, or None where the estimate is not positive."""
    if potential.is_free:
        return None
    if channel.l1 == 0:
        denom = tilde_a(channel, potential) + 2.0 * math.log(rho)
        return 1.0 / denom if denom > 0 else None
    q = coefficient_q(channel, potential).q
    return q * rho ** (-2 * channel.abs_l1) / (4.0 * (channel.N + 1))


def asymptotic_nu1(model: AsymptoticModel, rho: float) -> float:
    """nu1^a = l + 1/(A~ + 2 ln rho) (log class) or l + q rho^{-2|l1|}/(4(N+1))."""
    offset = asymptotic_offset(model.channel, model.potential, rho)
    if offset is None:
        raise DomainError(f"no positive asymptotic offset at rho = {rho}")
    return model.channel.l + offset


def left_log_derivative_limit(channel: Channel, potential: StepPotential) -> float:
    """Limit of rho^-2 d/dz ln F_L at the matching point: sqrt(v0bar/8) I_{|l1|+1}/I_{|l1|}."""
    s = _barrier_argument(potential)
    a1 = channel.abs_l1
    return math.sqrt(potential.v0bar / 8.0) * bessel_i(a1 + 1, s) / bessel_i(a1, s)


def right_log_derivative_limit(channel: Channel, q: float) -> float:
    """Limit of rho^-2 d/dz ln F_R for the inverse-power class: a q / (1 - a q / |l1|)."""
    if channel.l1 == 0:
        raise WrongClassError(f"power-class limit needs |l1| >= 1, got {channel.label}")
    a = power_coefficient_a(channel)
    return a * q / (1.0 - a * q / channel.abs_l1)


def compare_models(
    channel: Channel,
    potential: StepPotential,
    rho_grid: Sequence[float],
    settings: Optional[SolverSettings] = None,
    jobs: int = 1,
) -> TableResult:
    """Exact sweep next to the asymptotic models, with relative errors per rho."""
    report = adiabatic.sweep(channel, potential, rho_grid, settings, jobs=jobs)
    if channel.l1 == 0:
        model = coefficients_log(channel, potential)
        kinds = [ModelKind.KL, ModelKind.WIDER, ModelKind.BEST]
        columns = ["rho", "v_exact"] + [f"v_{k.value}" for k in kinds]
        columns += [f"rel_err_{k.value}" for k in kinds]
    else:
        model = coefficient_q(channel, potential)
        kinds = [ModelKind.INVERSE_POWER]
        columns = ["rho", "v_exact", "v_power", "rel_err_power", "scaled_exact"]

    table = TableResult(
        name="compare_models",
        columns=columns,
        metadata={"channel": channel.label, "model": model.to_dict()},
    )
    for solution in report.solutions:
        rho, exact = solution.rho, solution.v_eff
        row = {"rho": rho, "v_exact": exact}
        for kind in kinds:
            name = "power" if kind is ModelKind.INVERSE_POWER else kind.value
            try:
                value = model_v_eff(model.with_kind(kind), rho)
            except DomainError:
                value = math.nan
            row[f"v_{name}"] = value
            row[f"rel_err_{name}"] = abs(value - exact) / exact if exact else math.nan
        if channel.l1 != 0:
            row["scaled_exact"] = exact * rho ** (2 * channel.abs_l1 + 2)
        table.rows.append(row)
    table.errors.extend(f"rho={r:g}: {e}" for r, e in report.failures)
    return table
