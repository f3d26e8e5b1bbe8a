"""Special functions in the parameter regimes the channel problems need."""

from .bessel import bessel_i, bessel_jy
from .gamma import digamma, harmonic
from .hypergeometric import (
    ConnectionExpansionParams,
    SymmetricF1Params,
    f1_hybrid,
    f1_log_derivative,
    f1_near_unit,
    f1_series,
)
from .jacobi import dual_polar_basis, jacobi_polynomial, orthonormal_jacobi

__all__ = [
    "ConnectionExpansionParams",
    "SymmetricF1Params",
    "bessel_i",
    "bessel_jy",
    "digamma",
    "dual_polar_basis",
    "f1_hybrid",
    "f1_log_derivative",
    "f1_near_unit",
    "f1_series",
    "harmonic",
    "jacobi_polynomial",
    "orthonormal_jacobi",
]
