"""Exact adiabatic eigenvalues of a channel under the repulsive step.

The angular problem splits at z_m = -1 + 1/rho^2: the step covers [-1, z_m]
(L solution, regular at z = -1) and the free region (z_m, 1] (R solution,
regular at z = +1). Both are symmetric hypergeometric functions; the eigenvalue
follows from matching their logarithmic derivatives at z_m.

The unknown is carried as the offset eps = nu1 - l, which is all the physics
depends on: rho^2 V_eff / 4 = eps^2 + (N + 1) eps.
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import optimize

from ..specfun.gamma import split
from ..specfun.hypergeometric import log_derivative_pair, solution_pair
from .exceptions import BracketError, DomainError, HyperadiaError, PoleProximityError
from .models import RHO_CRITICAL, AdiabaticSolution, Channel, StepPotential, SweepReport
from .settings import SolverSettings

logger = logging.getLogger(__name__)

DEFAULT_SOLVER = SolverSettings()
_BRENT_RTOL = 4 * np.finfo(float).eps


def _check_rho(rho: float) -> None:
    if not (rho > RHO_CRITICAL and math.isfinite(rho)):
        raise DomainError(f"rho must exceed 1/sqrt(2) = {RHO_CRITICAL:.6f}, got {rho}", {"rho": rho})


def free_eigenvalue(channel: Channel, rho: float) -> float:
    """Centrifugal eigenvalue ((N+1)^2 - 1/4)/rho^2 of the unperturbed harmonic."""
    return ((channel.N + 1) ** 2 - 0.25) / rho ** 2


def v_eff_from_offset(channel: Channel, rho: float, offset: float) -> float:
    """V_eff from rho^2 V_eff / 4 = eps^2 + (N+1) eps."""
    return 4.0 * (offset * offset + (channel.N + 1) * offset) / rho ** 2


def v_eff_factored(channel: Channel, rho: float, nu1: float) -> float:
    """V_eff = [(2 nu1 + M + 1)^2 - (N + 1)^2] / rho^2 as a product of its two factors."""
    lower = 2 * nu1 + channel.M - channel.N
    upper = 2 * nu1 + channel.M + channel.N + 2
    return lower * upper / rho ** 2


def eigenvalue_from_nu1(channel: Channel, rho: float, nu1: float) -> float:
    """lambda = ((2 nu1 + M + 1)^2 - 1/4) / rho^2."""
    return ((2 * nu1 + channel.M + 1) ** 2 - 0.25) / rho ** 2


class MatchingFunction:
    """Matching condition of one (channel, potential, rho) as a function of eps."""

    def __init__(
        self,
        channel: Channel,
        potential: StepPotential,
        rho: float,
        settings: Optional[SolverSettings] = None,
    ):
        _check_rho(rho)
        self.channel = channel.canonical()
        self.potential = potential
        self.rho = rho
        self.settings = settings or DEFAULT_SOLVER
        self.y = 0.5 / rho ** 2  # (1 + z_m)/2, kept exact
        self.barrier = 0.25 * rho ** 2 * potential.v0bar

    def _products(self, base: int, frac: float) -> Tuple[float, float]:
        nu = base + frac
        t_right = nu * (nu + self.channel.M + 1)
        return t_right - self.barrier, t_right

    def log_derivatives(self, base: int, frac: float) -> Tuple[float, float]:
        """(d/dz ln F_R, d/dz ln F_L) at the matching point for nu1 = base + frac."""
        ch = self.channel
        t_left, t_right = self._products(base, frac)
        left, right = log_derivative_pair(
            t_left, t_right, ch.M, ch.abs_l1 + 1, ch.abs_l2 + 1, self.y,
            self.settings.series, nu_split_right=(base, frac),
        )
        return right, left

    def residual(self, offset: float) -> float:
        right, left = self.log_derivatives(self.channel.l, offset)
        return right - left

    def cross(self, offset: float) -> float:
        """F_L F_R' - F_R F_L': same roots as the residual, free of its poles."""
        ch = self.channel
        t_left, t_right = self._products(ch.l, offset)
        (f_l, d_l), (f_r, d_r) = solution_pair(
            t_left, t_right, ch.M, ch.abs_l1 + 1, ch.abs_l2 + 1, self.y,
            self.settings.series, nu_split_right=(ch.l, offset),
        )
        return f_l * d_r - f_r * d_l

    def offset_ceiling(self) -> float:
        """Largest eps allowed by V_eff <= v0bar."""
        n1 = self.channel.N + 1
        bound = 0.5 * (math.sqrt(n1 * n1 + self.rho ** 2 * self.potential.v0bar) - n1)
        return min(1.0 - self.settings.scan_delta, bound * (1.0 + 1e-6) + self.settings.scan_delta)


def matching_residual(
    channel: Channel,
    potential: StepPotential,
    rho: float,
    nu1_trial: float,
    settings: Optional[SolverSettings] = None,
) -> float:
    """d/dz ln F_R - d/dz ln F_L at z = -1 + 1/rho^2 for a trial degree nu1.

    Args:
        channel: Channel quantum numbers
        potential: Step strength
        rho: Hyperradius, > 1/sqrt(2)
        nu1_trial: Trial R-side degree, not an exact integer
        settings: Solver knobs

    Returns:
        Residual of the matching condition
    """
    base, frac = split(nu1_trial)
    if frac == 0:
        raise PoleProximityError(
            f"nu1 = {nu1_trial} is an integer; perturb it off the pole",
            {"channel": channel.label, "rho": rho},
        )
    fn = MatchingFunction(channel, potential, rho, settings)
    try:
        right, left = fn.log_derivatives(base, frac)
    except HyperadiaError as e:
        raise e.with_context(channel=channel.label, rho=rho)
    return right - left


def _offset_seed(channel: Channel, potential: StepPotential, rho: float) -> Optional[float]:
    from ..analysis.asymptotics import asymptotic_offset

    try:
        return asymptotic_offset(channel, potential, rho)
    except HyperadiaError:
        return None


def _refine(fn: MatchingFunction, lo: float, hi: float, f_lo: float, f_hi: float) -> Optional[float]:
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    xtol = max(min(fn.settings.xtol, 1e-15 * lo), 1e-300)
    root = optimize.brentq(fn.cross, lo, hi, xtol=xtol, rtol=_BRENT_RTOL, maxiter=200)
    right, left = fn.log_derivatives(fn.channel.l, root)
    scale = abs(right) + abs(left)
    if abs(right - left) > fn.settings.residual_rtol * max(scale, 1.0):
        logger.debug(f"rejected sign change at eps={root:.6e}: residual {right - left:.3e}")
        return None
    return root


def _safe_cross(fn: MatchingFunction, offset: float) -> float:
    try:
        return fn.cross(offset)
    except HyperadiaError as e:
        logger.debug(f"matching function unavailable at eps={offset:.6e}: {e}")
        return math.nan


def _local_bracket(fn: MatchingFunction, hint: float, ceiling: float) -> Optional[float]:
    floor = 1e-300
    for k in range(fn.settings.max_bracket_expansions):
        factor = 2.0 ** (k + 1)
        lo, hi = max(hint / factor, floor), min(hint * factor, ceiling)
        if not lo < hi:
            break
        f_lo, f_hi = _safe_cross(fn, lo), _safe_cross(fn, hi)
        if math.isfinite(f_lo) and math.isfinite(f_hi) and f_lo * f_hi <= 0:
            return _refine(fn, lo, hi, f_lo, f_hi)
    return None


def _scan(fn: MatchingFunction, seed: Optional[float], ceiling: float) -> float:
    s = fn.settings
    start = s.scan_delta if seed is None else min(s.scan_delta, 1e-3 * seed)
    grid = np.geomspace(start, ceiling, s.scan_points)
    trace: List[Tuple[float, float]] = []
    prev_x, prev_f = None, math.nan
    for x in grid:
        f = _safe_cross(fn, float(x))
        trace.append((float(x), f))
        if prev_x is not None and math.isfinite(prev_f) and math.isfinite(f) and prev_f * f <= 0:
            root = _refine(fn, prev_x, float(x), prev_f, f)
            if root is not None:
                return root
        prev_x, prev_f = float(x), f
    raise BracketError(
        f"no admissible sign change in eps over [{start:.3e}, {ceiling:.3e}]",
        trace=trace,
        context={"channel": fn.channel.label, "rho": fn.rho, "v0bar": fn.potential.v0bar},
    )


def solve(
    channel: Channel,
    potential: StepPotential,
    rho: float,
    settings: Optional[SolverSettings] = None,
    guess: Optional[float] = None,
) -> AdiabaticSolution:
    """Principal root nu1 in (l, l+1) of the matching condition.

    Args:
        channel: Channel quantum numbers
        potential: Step strength
        rho: Hyperradius, > 1/sqrt(2)
        settings: Solver knobs
        guess: Optional offset nu1 - l to bracket around first (continuation)

    Returns:
        AdiabaticSolution with lambda and V_eff
    """
    _check_rho(rho)
    if potential.is_free:
        lam = free_eigenvalue(channel, rho)
        return AdiabaticSolution(channel, rho, float(channel.l), 0.0, lam, 0.0, 0.0)

    fn = MatchingFunction(channel, potential, rho, settings)
    ceiling = fn.offset_ceiling()
    try:
        offset = None
        if guess is not None and 0 < guess < ceiling:
            offset = _local_bracket(fn, guess, ceiling)
        if offset is None:
            offset = _scan(fn, _offset_seed(channel, potential, rho), ceiling)
        right, left = fn.log_derivatives(fn.channel.l, offset)
    except HyperadiaError as e:
        raise e.with_context(channel=channel.label, rho=rho)

    v_eff = v_eff_from_offset(channel, rho, offset)
    logger.debug(f"channel {channel.label} rho={rho:g}: eps={offset:.15e} V_eff={v_eff:.12e}")
    return AdiabaticSolution(
        channel=channel,
        rho=rho,
        nu1=channel.l + offset,
        offset=offset,
        lambda_=free_eigenvalue(channel, rho) + v_eff,
        v_eff=v_eff,
        residual=right - left,
    )


def _solve_point(args) -> Tuple[float, Optional[AdiabaticSolution], Optional[str]]:
    channel, potential, rho, settings = args
    try:
        return rho, solve(channel, potential, rho, settings), None
    except HyperadiaError as e:
        return rho, None, str(e)


def sweep(
    channel: Channel,
    potential: StepPotential,
    rho_grid: Sequence[float],
    settings: Optional[SolverSettings] = None,
    jobs: int = 1,
) -> SweepReport:
    """Solve along an increasing grid; failed points are reported, not raised.

    With ``jobs == 1`` each root seeds the bracket of the next point; with more
    jobs the points are solved independently in a process pool.
    """
    grid = [float(r) for r in rho_grid]
    if not grid:
        raise DomainError("empty rho grid")
    if any(r <= RHO_CRITICAL for r in grid):
        raise DomainError("every grid point must exceed 1/sqrt(2)")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise DomainError("rho grid must be strictly increasing")

    report = SweepReport(channel)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_solve_point, [(channel, potential, r, settings) for r in grid]))
    else:
        results = []
        hint = None
        for rho in grid:
            try:
                solution = solve(channel, potential, rho, settings, guess=hint)
                hint = solution.offset or None
                results.append((rho, solution, None))
            except HyperadiaError as e:
                results.append((rho, None, str(e)))

    for rho, solution, error in results:
        if solution is not None:
            report.solutions.append(solution)
        else:
            logger.warning(f"sweep point rho={rho:g} failed for channel {channel.label}: {error}")
            report.failures.append((rho, error or "unknown error"))
    return report


def eigenfunction(
    channel: Channel,
    potential: StepPotential,
    solution: AdiabaticSolution,
    z: Sequence[float],
    nodes: int = 64,
    settings: Optional[SolverSettings] = None,
) -> np.ndarray:
    """Unit-normalized angular eigenfunction (1+z)^{|l1|/2}(1-z)^{|l2|/2} F(z).

    F is F_R on (z_m, 1] and the rescaled F_L on [-1, z_m], continuous at z_m.
    The hypergeometric series follow ``settings.series``.
    """
    from ..specfun.hypergeometric import SymmetricF1Params, f1_hybrid

    ch = channel.canonical()
    rho = solution.rho
    series = (settings or DEFAULT_SOLVER).series
    split_r = (ch.l, solution.offset)
    nu = ch.l + solution.offset
    t_right = nu * (nu + ch.M + 1)
    t_left = t_right - 0.25 * rho ** 2 * potential.v0bar
    y_m = 0.5 / rho ** 2

    def f_right(zz: float) -> float:
        y = 0.5 * (1.0 + zz)
        if y >= 1.0:
            return 1.0
        return f1_hybrid(SymmetricF1Params(t_right, ch.M, ch.abs_l2 + 1, 1.0 - y), series,
                         split_r, one_minus_x=y)

    def f_left(zz: float) -> float:
        y = 0.5 * (1.0 + zz)
        return f1_hybrid(SymmetricF1Params(t_left, ch.M, ch.abs_l1 + 1, y), series,
                         one_minus_x=1.0 - y)

    z_m = -1.0 + 2.0 * y_m
    scale = f_right(z_m) / f_left(z_m)

    def raw(zz: float) -> float:
        body = f_right(zz) if zz > z_m else scale * f_left(zz)
        return (1.0 + zz) ** (ch.abs_l1 / 2.0) * (1.0 - zz) ** (ch.abs_l2 / 2.0) * body

    x, w = np.polynomial.legendre.leggauss(nodes)
    norm2 = 0.0
    for a, b in ((-1.0, z_m), (z_m, 1.0)):
        half = 0.5 * (b - a)
        pts = a + half * (x + 1.0)
        norm2 += half * sum(wi * raw(float(p)) ** 2 for wi, p in zip(w, pts))
    return np.array([raw(float(zz)) for zz in z]) / math.sqrt(norm2)
