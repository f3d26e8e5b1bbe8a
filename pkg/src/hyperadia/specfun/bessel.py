"""Bessel functions in the argument ranges the channel problems reach."""

import math
from typing import Tuple

from scipy import special

from ..core.exceptions import DomainError

# I_n(sqrt(v0bar/2)) needs order-one arguments; phase matching reaches k*rho ~ 22.
MAX_ARGUMENT = 50.0


def _check_order(order: int) -> int:
    if isinstance(order, bool) or int(order) != order or order < 0:
        raise DomainError(f"Bessel order must be a nonnegative integer, got {order!r}")
    return int(order)


def bessel_i(order: int, x: float) -> float:
    """Modified Bessel function I_order(x) for 0 <= x <= 50."""
    n = _check_order(order)
    if not 0 <= x <= MAX_ARGUMENT:
        raise DomainError(f"bessel_i argument outside [0, {MAX_ARGUMENT}]: {x}")
    return float(special.iv(n, x))


def bessel_jy(order: int, x: float) -> Tuple[float, float]:
    """Bessel J_order(x) and Neumann Y_order(x) for 0 < x <= 50."""
    n = _check_order(order)
    if not (x > 0 and math.isfinite(x)):
        raise DomainError(f"bessel_jy needs a positive argument, got {x}")
    if x > MAX_ARGUMENT:
        raise DomainError(f"bessel_jy argument above {MAX_ARGUMENT}: {x}")
    return float(special.jv(n, x)), float(special.yv(n, x))
