"""Jacobi polynomials and the orthonormal dual-polar basis built from them."""

import math

import numpy as np
from scipy import special

from ..core.exceptions import DomainError


def jacobi_polynomial(n: int, alpha: float, beta: float, z: float) -> float:
    """P_n^{(alpha, beta)}(z) by the standard three-term recurrence.

    Args:
        n: Degree, nonnegative integer
        alpha: Exponent of (1 - z) in the weight, > -1
        beta: Exponent of (1 + z) in the weight, > -1
        z: Point in [-1, 1]

    Returns:
        Polynomial value with the conventional normalization P_n(1) = C(n + alpha, n)
    """
    if int(n) != n or n < 0:
        raise DomainError(f"Jacobi degree must be a nonnegative integer, got {n}")
    if alpha <= -1 or beta <= -1:
        raise DomainError(f"Jacobi parameters must exceed -1, got ({alpha}, {beta})")
    if not -1.0 <= z <= 1.0:
        raise DomainError(f"Jacobi argument outside [-1, 1]: {z}")

    p_prev, p = 1.0, 0.5 * (alpha - beta + (alpha + beta + 2) * z)
    if n == 0:
        return p_prev
    for m in range(1, int(n)):
        s = 2 * m + alpha + beta
        a1 = 2 * (m + 1) * (m + alpha + beta + 1) * s
        a2 = (s + 1) * (alpha * alpha - beta * beta)
        a3 = s * (s + 1) * (s + 2)
        a4 = 2 * (m + alpha) * (m + beta) * (s + 2)
        p_prev, p = p, ((a2 + a3 * z) * p - a4 * p_prev) / a1
    return p


def jacobi_norm(n: int, alpha: float, beta: float) -> float:
    """h_n = integral of (1-z)^alpha (1+z)^beta P_n^2 over [-1, 1]."""
    log_h = (
        (alpha + beta + 1) * math.log(2.0)
        - math.log(2 * n + alpha + beta + 1)
        + math.lgamma(n + alpha + 1)
        + math.lgamma(n + beta + 1)
        - math.lgamma(n + alpha + beta + 1)
        - math.lgamma(n + 1)
    )
    return math.exp(log_h)


def orthonormal_jacobi(n_max: int, alpha: float, beta: float, z: np.ndarray) -> np.ndarray:
    """Orthonormal Jacobi polynomials p_0..p_{n_max} at the points ``z``.

    Rows are degrees. Uses the symmetric recurrence
    z p_n = a_{n+1} p_{n+1} + b_{n+1} p_n + a_n p_{n-1}.
    """
    z = np.asarray(z, dtype=float)
    out = np.empty((n_max + 1,) + z.shape)
    ab = alpha + beta
    gamma0 = 2.0 ** (ab + 1) * special.gamma(alpha + 1) * special.gamma(beta + 1) / special.gamma(ab + 2)
    out[0] = 1.0 / math.sqrt(gamma0)
    if n_max == 0:
        return out
    gamma1 = (alpha + 1) * (beta + 1) / (ab + 3) * gamma0
    out[1] = ((ab + 2) * z / 2 + (alpha - beta) / 2) / math.sqrt(gamma1)

    a_old = 2.0 / (2 + ab) * math.sqrt((alpha + 1) * (beta + 1) / (ab + 3))
    for i in range(1, n_max):
        h1 = 2 * i + ab
        a_new = 2.0 / (h1 + 2) * math.sqrt(
            (i + 1) * (i + 1 + ab) * (i + 1 + alpha) * (i + 1 + beta) / (h1 + 1) / (h1 + 3)
        )
        b_new = -(alpha * alpha - beta * beta) / h1 / (h1 + 2)
        out[i + 1] = ((z - b_new) * out[i] - a_old * out[i - 1]) / a_new
        a_old = a_new
    return out


def dual_polar_basis(n_radial: int, l1: int, l2: int, z: np.ndarray) -> np.ndarray:
    """Unit-normalized (under dz on [-1, 1]) angular functions of a channel.

    phi_l(z) = (1+z)^{|l1|/2} (1-z)^{|l2|/2} P_l^{(|l2|, |l1|)}(z) / sqrt(h_l)
    for l = 0..n_radial-1.
    """
    a1, a2 = abs(l1), abs(l2)
    z = np.asarray(z, dtype=float)
    weight = (1.0 + z) ** (a1 / 2.0) * (1.0 - z) ** (a2 / 2.0)
    return orthonormal_jacobi(n_radial - 1, a2, a1, z) * weight
