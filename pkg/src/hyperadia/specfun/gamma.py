"""Gamma-family helpers, including pole-safe evaluation near nonpositive integers.

Arguments near a pole are passed split as ``n + f`` with integer ``n`` and a small
fractional part ``f``; the reflection formulas then lose no digits to ``n + f``
rounding.
"""

import math
from typing import Tuple

from scipy import special

from ..core.exceptions import DomainError, PoleProximityError


def split(x: float) -> Tuple[int, float]:
    """Nearest-integer split of ``x``."""
    n = int(round(x))
    return n, x - n


def digamma(x: float) -> float:
    """psi(x) for real x off the poles."""
    if not math.isfinite(x):
        raise DomainError(f"digamma argument must be finite, got {x}")
    if x <= 0 and x == math.floor(x):
        raise DomainError(f"digamma pole at x={x}")
    return float(special.digamma(x))


def harmonic(n: int) -> float:
    """H_n = sum_{p=1}^{n} 1/p with H_0 = 0."""
    if n < 0 or int(n) != n:
        raise DomainError(f"harmonic index must be a nonnegative integer, got {n}")
    return math.fsum(1.0 / p for p in range(1, int(n) + 1))


def rgamma_split(n: int, f: float) -> float:
    """1/Gamma(n + f); exactly zero on a pole."""
    if n + f > 0:
        return float(special.rgamma(n + f))
    if f == 0:
        return 0.0
    k = -n
    sign = -1.0 if k % 2 else 1.0
    return sign * math.sin(math.pi * f) * math.gamma(1 + k - f) / math.pi


def digamma_split(n: int, f: float) -> float:
    """psi(n + f) through reflection when n + f sits at or left of the origin."""
    if n >= 1 or n + f >= 0.5:
        return float(special.digamma(n + f))
    if f == 0:
        raise PoleProximityError(f"digamma pole at {n}", {"n": n})
    # psi(x) = psi(1 - x) - pi cot(pi x), cot has period pi
    return float(special.digamma(1 - n - f)) - math.pi / math.tan(math.pi * f)


def check_pole(n: int, f: float, delta_pole: float, name: str) -> None:
    """Raise when ``n + f`` lies within ``delta_pole`` of a nonpositive integer."""
    if n <= 0 and abs(f) < delta_pole:
        raise PoleProximityError(
            f"{name} = {n + f!r} within {delta_pole:g} of the pole at {n}",
            {name: n + f},
        )


def binomial(n: int, p: int) -> int:
    """C_n^p = n!/(p!(n-p)!)."""
    return math.comb(n, p)
