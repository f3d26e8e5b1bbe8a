"""Gauss hypergeometric functions of the symmetric form 2F1(-nu, nu+M+1; c; x).

The degree nu enters only through the real product t = nu (nu + M + 1), so the
same code evaluates the outer solution (real nu) and the inner one (nu may be
complex under a strong barrier). Near x = 1 the logarithmic connection expansion
with c = a + b - m takes over from the power series.

Callers that know nu to more digits than ``t`` carries pass ``nu_split =
(base, frac)`` with integer ``base``; series factors and gamma/digamma arguments
are then formed from ``frac`` without cancellation.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

from ..core.exceptions import DivergenceError, DomainError, PoleProximityError, ZeroCrossingError
from ..core.settings import SeriesSettings
from .gamma import check_pole, digamma_split, rgamma_split, split

logger = logging.getLogger(__name__)

DEFAULT_SERIES = SeriesSettings()
EULER_GAMMA = 0.57721566490153286060651209008240243

NuSplit = Tuple[int, float]


@dataclass(frozen=True)
class SymmetricF1Params:
    """Arguments of 2F1(a, b; c; x) with a = -nu, b = nu + M + 1, t = a*b negated."""
    t: float
    M: int
    c: int
    x: float

    def __post_init__(self):
        if not math.isfinite(self.t):
            raise DomainError(f"t must be finite, got {self.t}")
        if int(self.M) != self.M or self.M < 0:
            raise DomainError(f"M must be a nonnegative integer, got {self.M}")
        if int(self.c) != self.c or self.c < 1:
            raise DomainError(f"c must be a positive integer, got {self.c}")
        if not 0.0 <= self.x < 1.0:
            raise DomainError(f"series argument must lie in [0, 1), got {self.x}")


@dataclass(frozen=True)
class ConnectionExpansionParams:
    """Arguments of 2F1(a, b; a + b - m; x) expanded about x = 1.

    ``a_frac``/``b_frac``, when given, are the exact offsets of a and b from
    their nearest integers.
    """
    a: float
    b: float
    m: int
    one_minus_x: float
    a_frac: Optional[float] = None
    b_frac: Optional[float] = None

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 0:
            raise DomainError(f"m must be a nonnegative integer, got {self.m}")
        if not 0.0 < self.one_minus_x < 1.0:
            raise DomainError(f"one_minus_x must lie in (0, 1), got {self.one_minus_x}")

    @property
    def c(self) -> float:
        return self.a + self.b - self.m


def _series_sum(
    t: float, M: int, c: float, x: float, settings: SeriesSettings, nu_split: Optional[NuSplit]
) -> float:
    term = 1.0
    total = 1.0
    small = 0
    n_min = int(math.sqrt(abs(t))) + 1
    for n in range(settings.n_terms_max):
        if nu_split is None:
            factor = n * n + n * (M + 1) - t
        else:
            base, frac = nu_split
            factor = ((n - base) - frac) * ((n + base + M + 1) + frac)
        ratio = factor / ((c + n) * (n + 1)) * x
        term *= ratio
        if term == 0.0:
            return total
        total += term
        if abs(term) < settings.eps_abs * (1.0 + abs(total)):
            small += 1
            if small >= settings.consecutive_small and abs(ratio) < 1.0 and n >= n_min:
                return total
        else:
            small = 0
    raise DivergenceError(
        f"hypergeometric series did not converge in {settings.n_terms_max} terms",
        {"t": t, "M": M, "c": c, "x": x},
    )


def f1_series(
    p: SymmetricF1Params,
    settings: Optional[SeriesSettings] = None,
    nu_split: Optional[NuSplit] = None,
) -> float:
    """Direct power series sum of 2F1(-nu, nu+M+1; c; x).

    Terms follow T_{n+1} = T_n (n^2 + n(M+1) - t) x / ((c+n)(n+1)) and the sum
    stops after ``consecutive_small`` terms below eps_abs (1 + |sum|).
    """
    return _series_sum(p.t, p.M, p.c, p.x, settings or DEFAULT_SERIES, nu_split)


def f1_near_unit(
    p: ConnectionExpansionParams, settings: Optional[SeriesSettings] = None
) -> float:
    """2F1(a, b; a+b-m; x) from the logarithmic expansion about x = 1.

    F = G(m) G(c) / (G(a) G(b)) w^{-m} sum_{n<m} (a-m)_n (b-m)_n / (n! (1-m)_n) w^n
        - (-1)^m G(c) / (G(a-m) G(b-m)) sum_n (a)_n (b)_n / (n! (n+m)!) w^n
          [ln w - psi(n+1) - psi(n+m+1) + psi(a+n) + psi(b+n)],   w = 1 - x.
    """
    s = settings or DEFAULT_SERIES
    m = int(p.m)
    w = p.one_minus_x

    if p.a_frac is None:
        a_int, a_frac = split(p.a)
        check_pole(a_int, a_frac, s.delta_pole, "a")
    else:
        a_int, a_frac = int(round(p.a - p.a_frac)), p.a_frac
        if a_frac == 0 and a_int <= 0:
            raise PoleProximityError(f"a = {a_int} is a pole", {"a": p.a})
    if p.b_frac is None:
        b_int, b_frac = split(p.b)
        check_pole(b_int, b_frac, s.delta_pole, "b")
    else:
        b_int, b_frac = int(round(p.b - p.b_frac)), p.b_frac
        if b_frac == 0 and b_int <= 0:
            raise PoleProximityError(f"b = {b_int} is a pole", {"b": p.b})

    c_int, c_frac = a_int + b_int - m, a_frac + b_frac
    if c_int + c_frac <= 0 and c_frac == 0:
        raise DomainError(f"lower parameter c = {c_int} is a nonpositive integer")
    gamma_c = 1.0 / rgamma_split(c_int, c_frac)

    finite = 0.0
    if m > 0:
        prefactor = math.gamma(m) * gamma_c * rgamma_split(a_int, a_frac) * rgamma_split(b_int, b_frac)
        term = 1.0
        partial = 1.0
        for n in range(1, m):
            term *= (
                ((a_int - m + n - 1) + a_frac) * ((b_int - m + n - 1) + b_frac) / (n * (n - m)) * w
            )
            partial += term
        finite = prefactor * partial * w ** (-m)

    sign = 1.0 if m % 2 else -1.0  # -(-1)^m
    log_prefactor = sign * gamma_c * rgamma_split(a_int - m, a_frac) * rgamma_split(b_int - m, b_frac)

    log_w = math.log(w)
    coef = 1.0 / math.factorial(m)
    psi_n1 = -EULER_GAMMA
    psi_nm1 = -EULER_GAMMA + math.fsum(1.0 / j for j in range(1, m + 1))
    total = 0.0
    small = 0
    n_min = int(max(abs(p.a), abs(p.b))) + 1
    for n in range(s.n_terms_max):
        ratio = 1.0
        if n > 0:
            ratio = ((a_int + n - 1) + a_frac) * ((b_int + n - 1) + b_frac) / (n * (n + m)) * w
            coef *= ratio
            psi_n1 += 1.0 / n
            psi_nm1 += 1.0 / (n + m)
        bracket = (
            log_w - psi_n1 - psi_nm1
            + digamma_split(a_int + n, a_frac) + digamma_split(b_int + n, b_frac)
        )
        term = coef * bracket
        total += term
        if abs(term) < s.eps_abs * (1.0 + abs(total)):
            small += 1
            if small >= s.consecutive_small and abs(ratio) < 1.0 and n >= n_min:
                return finite + log_prefactor * total
        else:
            small = 0
    raise DivergenceError(
        f"connection expansion did not converge in {s.n_terms_max} terms",
        {"a": p.a, "b": p.b, "m": m, "one_minus_x": w},
    )


def symmetric_degree(t: float, M: int) -> Optional[float]:
    """Real root nu >= -(M+1)/2 of nu (nu + M + 1) = t, or None when nu is complex."""
    disc = (M + 1) ** 2 + 4.0 * t
    if disc < 0:
        return None
    return 0.5 * (-(M + 1) + math.sqrt(disc))


def f1_hybrid(
    p: SymmetricF1Params,
    settings: Optional[SeriesSettings] = None,
    nu_split: Optional[NuSplit] = None,
    one_minus_x: Optional[float] = None,
) -> float:
    """Series below ``x_switch``, connection expansion above it.

    ``one_minus_x`` supplies 1 - x without the rounding of forming x first.
    Complex degrees and c > M + 1 stay on the (slower) series.
    """
    s = settings or DEFAULT_SERIES
    if p.x <= s.x_switch:
        return f1_series(p, s, nu_split)
    m = p.M + 1 - p.c
    w = one_minus_x if one_minus_x is not None else 1.0 - p.x
    if m < 0:
        return f1_series(p, s, nu_split)
    if nu_split is not None and nu_split[1] == 0.0 and nu_split[0] >= 0:
        # integer degree: the series terminates into a Jacobi polynomial
        return f1_series(p, s, nu_split)
    if nu_split is not None:
        base, frac = nu_split
        conn = ConnectionExpansionParams(
            a=-(base + frac), b=base + frac + p.M + 1, m=m, one_minus_x=w,
            a_frac=-frac, b_frac=frac,
        )
    else:
        nu = symmetric_degree(p.t, p.M)
        if nu is None or (nu >= 0 and nu == round(nu)):
            if nu is None:
                logger.debug(f"complex degree at t={p.t}, M={p.M}; summing the series at x={p.x}")
            return f1_series(p, s)
        conn = ConnectionExpansionParams(a=-nu, b=nu + p.M + 1, m=m, one_minus_x=w)
    return f1_near_unit(conn, s)


def _value_and_slope(
    t: float, M: int, c: int, x: float, w: float,
    settings: SeriesSettings, nu_split: Optional[NuSplit],
) -> Tuple[float, float]:
    """F and dF/dx, using d/dx 2F1(a,b;c;x) = (ab/c) 2F1(a+1,b+1;c+1;x)."""
    value = f1_hybrid(SymmetricF1Params(t, M, c, x), settings, nu_split, one_minus_x=w)
    if not math.isfinite(value):
        raise DivergenceError("non-finite hypergeometric value", {"t": t, "M": M, "c": c, "x": x})
    shifted_split = None if nu_split is None else (nu_split[0] - 1, nu_split[1])
    # (a+1)(b+1) = -(t - M - 2): the shifted function is symmetric with M + 2
    shifted = f1_hybrid(
        SymmetricF1Params(t - M - 2, M + 2, c + 1, x), settings, shifted_split, one_minus_x=w
    )
    return value, (-t / c) * shifted


def solution_pair(
    t_left: float,
    t_right: float,
    M: int,
    c_left: int,
    c_right: int,
    y: float,
    settings: Optional[SeriesSettings] = None,
    nu_split_right: Optional[NuSplit] = None,
) -> Tuple[Tuple[float, float], Tuple[float, float]]:
    """Values and z-derivatives ((F_L, F_L'), (F_R, F_R')) at the point with (1 + z)/2 = y.

    F_L = 2F1(.; c_left; (1+z)/2) is regular at z = -1 and F_R =
    2F1(.; c_right; (1-z)/2) at z = +1; both equal 1 at their regular end.
    """
    s = settings or DEFAULT_SERIES
    if not 0.0 < y < 1.0:
        raise DomainError(f"matching point must lie inside (-1, 1), got (1+z)/2 = {y}")
    f_left, slope_left = _value_and_slope(t_left, M, c_left, y, 1.0 - y, s, None)
    if nu_split_right is not None:
        base, frac = nu_split_right
        nu = base + frac
        t_right = nu * (nu + M + 1)
    f_right, slope_right = _value_and_slope(t_right, M, c_right, 1.0 - y, y, s, nu_split_right)
    return (f_left, 0.5 * slope_left), (f_right, -0.5 * slope_right)


def log_derivative_pair(
    t_left: float,
    t_right: float,
    M: int,
    c_left: int,
    c_right: int,
    y: float,
    settings: Optional[SeriesSettings] = None,
    nu_split_right: Optional[NuSplit] = None,
) -> Tuple[float, float]:
    """d/dz ln F_L and d/dz ln F_R at the point with (1 + z)/2 = y."""
    (f_left, d_left), (f_right, d_right) = solution_pair(
        t_left, t_right, M, c_left, c_right, y, settings, nu_split_right
    )
    for side, value in (("left", f_left), ("right", f_right)):
        if value == 0.0:
            raise ZeroCrossingError(
                f"{side} solution vanishes at the matching point",
                {"t_left": t_left, "t_right": t_right, "M": M, "y": y},
            )
    return d_left / f_left, d_right / f_right


def f1_log_derivative(
    t: float,
    M: int,
    c_left: int,
    c_right: int,
    z_match: float,
    t_left: Optional[float] = None,
    settings: Optional[SeriesSettings] = None,
) -> Tuple[float, float]:
    """Logarithmic z-derivatives (left, right) of the L and R solutions at ``z_match``.

    Args:
        t: Symmetric product of the R solution (and of the L solution unless ``t_left``)
        M: |l1| + |l2|
        c_left: Lower parameter of the L solution, |l1| + 1
        c_right: Lower parameter of the R solution, |l2| + 1
        z_match: Matching point in (-1, 1)
        t_left: Symmetric product of the L solution when it differs from ``t``
        settings: Series knobs

    Returns:
        Tuple (d/dz ln F_L, d/dz ln F_R)
    """
    if not -1.0 < z_match < 1.0:
        raise DomainError(f"z_match must lie in (-1, 1), got {z_match}")
    return log_derivative_pair(
        t if t_left is None else t_left, t, M, c_left, c_right, 0.5 * (1.0 + z_match), settings
    )
